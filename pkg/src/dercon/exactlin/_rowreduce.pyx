# cython: language_level=3
"""Compiled row reduction kernel.

Line-for-line parallel to _kernel_py.rref_int; see there for the contract.
Arithmetic stays on Python ints (arbitrary precision is required), the win
is compiled loop and list handling.
"""

from math import gcd


cdef void _reduce_row(list row):
    cdef Py_ssize_t j, n = len(row)
    g = 0
    for j in range(n):
        x = row[j]
        if x:
            g = gcd(g, x)
            if g == 1:
                return
    if g > 1:
        for j in range(n):
            row[j] = row[j] // g


def rref_int(rows):
    cdef Py_ssize_t nrows, ncols, r, col, i, j, pr, k, ck
    m = [list(r_) for r_ in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []

    prev = 1
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if m[i][col] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            m[pr], m[r] = m[r], m[pr]
        piv = m[r][col]
        row_r = m[r]
        for i in range(r + 1, nrows):
            row_i = m[i]
            f = row_i[col]
            if f == 0:
                if piv != prev:
                    for j in range(col, ncols):
                        row_i[j] = piv * row_i[j] // prev
                continue
            row_i[col] = 0
            for j in range(col + 1, ncols):
                row_i[j] = (piv * row_i[j] - f * row_r[j]) // prev
        prev = piv
        pivots.append(col)
        r += 1

    for k in range(len(pivots) - 1, -1, -1):
        row_k = m[k]
        _reduce_row(row_k)
        ck = pivots[k]
        if row_k[ck] < 0:
            for j in range(ncols):
                row_k[j] = -row_k[j]
        pk = row_k[ck]
        for i in range(k):
            row_i = m[i]
            f = row_i[ck]
            if f == 0:
                continue
            for j in range(ncols):
                row_i[j] = pk * row_i[j] - f * row_k[j]
            _reduce_row(row_i)
    return m, pivots
