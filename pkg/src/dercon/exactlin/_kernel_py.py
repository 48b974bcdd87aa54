"""Pure-Python row reduction kernel.

Same algorithm as the compiled twin (_rowreduce.pyx): Bareiss fraction-free
forward elimination on integer rows, then gcd-normalized back-substitution.
The two implementations are kept line-for-line parallel so their outputs are
identical by construction; the compiled one only removes interpreter
overhead.
"""

from __future__ import annotations

from math import gcd


def _reduce_row(row: list[int]) -> None:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return
    if g > 1:
        for j in range(len(row)):
            row[j] //= g


def rref_int(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Row-reduce an integer matrix over Q.

    Returns (m, pivots): the first len(pivots) rows of m are the nonzero
    rows of the reduced row echelon form, scaled to primitive integer
    vectors with positive pivot entries (so row i represents the rational
    RREF row m[i][j] / m[i][pivots[i]]).  Remaining rows are zero.
    Pivoting is deterministic: leftmost nonzero column, smallest row index.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []

    # Bareiss forward elimination: divisions below are exact.
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

    # Back-substitute, keeping rows primitive to control growth.
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
