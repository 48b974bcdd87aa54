"""Exact sparse linear algebra over Q.

Everything downstream (slice bases, cohomology, transfer, Massey systems)
reduces to row reduction here, so this module owns the only hot loop in the
package.  The reduction kernel exists twice: a compiled Cython version and a
pure-Python fallback with identical output, selected at import (set
DERCON_PURE_PYTHON=1 to force the fallback).

Conventions: vectors are tuples of Fraction, matrices act on column vectors,
pivoting is deterministic (leftmost nonzero column, smallest row index), so
every basis this module returns is canonical.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

if os.environ.get("DERCON_PURE_PYTHON"):
    from . import _kernel_py as _kernel

    KERNEL = "python"
else:
    try:
        from . import _rowreduce as _kernel  # type: ignore[no-redef]

        KERNEL = "cython"
    except ImportError:  # pragma: no cover - build-env dependent
        from . import _kernel_py as _kernel  # type: ignore[no-redef]

        KERNEL = "python"

Rational = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def format_rational(x: Fraction) -> str:
    """Canonical 'p/q' form, '/1' omitted."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class SparseMatrix:
    """Immutable-by-convention sparse matrix over Q.

    entries maps (row, col) -> nonzero Fraction.  Mutating helpers are
    private to construction; public methods return new matrices.
    """

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries: dict | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries: dict[tuple[int, int], Fraction] = {}
        if entries:
            for (i, j), v in entries.items():
                v = Fraction(v)
                if v:
                    if not (0 <= i < nrows and 0 <= j < ncols):
                        raise IndexError(f"entry {(i, j)} outside {nrows}x{ncols}")
                    self.entries[(i, j)] = v

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Fraction | int]], ncols: int | None = None) -> "SparseMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        e = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    e[(i, j)] = Fraction(v)
        return cls(nrows, ncols, e)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[Fraction | int]], nrows: int | None = None) -> "SparseMatrix":
        ncols = len(cols)
        if nrows is None:
            nrows = len(cols[0]) if ncols else 0
        e = {}
        for j, col in enumerate(cols):
            for i, v in enumerate(col):
                if v:
                    e[(i, j)] = Fraction(v)
        return cls(nrows, ncols, e)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    def get(self, i: int, j: int) -> Fraction:
        return self.entries.get((i, j), ZERO)

    def row(self, i: int) -> tuple[Fraction, ...]:
        return tuple(self.entries.get((i, j), ZERO) for j in range(self.ncols))

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries.get((i, j), ZERO) for i in range(self.nrows))

    def rows(self) -> list[list[Fraction]]:
        out = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries.items()})

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        e = dict(self.entries)
        for k, v in other.entries.items():
            w = e.get(k, ZERO) + v
            if w:
                e[k] = w
            else:
                e.pop(k, None)
        return SparseMatrix(self.nrows, self.ncols, e)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(Fraction(-1))

    def scale(self, c: Fraction | int) -> "SparseMatrix":
        c = Fraction(c)
        if not c:
            return SparseMatrix(self.nrows, self.ncols)
        return SparseMatrix(self.nrows, self.ncols, {k: c * v for k, v in self.entries.items()})

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (i, j), v in other.entries.items():
            by_row.setdefault(i, []).append((j, v))
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, k), v in self.entries.items():
            for j, w in by_row.get(k, ()):
                key = (i, j)
                s = acc.get(key, ZERO) + v * w
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return SparseMatrix(self.nrows, other.ncols, acc)

    def apply(self, vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        out = [ZERO] * self.nrows
        for (i, j), v in self.entries.items():
            x = vec[j]
            if x:
                out[i] += v * x
        return tuple(out)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SparseMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(sorted(self.entries.items()))))

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, {len(self.entries)} entries)"


def _to_int_rows(m: SparseMatrix) -> list[list[int]]:
    """Scale each row to integers; row scaling leaves the row space alone."""
    rows = [[0] * m.ncols for _ in range(m.nrows)]
    dens: dict[int, int] = {}
    for (i, j), v in m.entries.items():
        dens[i] = lcm(dens.get(i, 1), v.denominator)
    for (i, j), v in m.entries.items():
        rows[i][j] = int(v * dens[i])
    return rows


class RrefResult:
    __slots__ = ("matrix", "pivots", "rank")

    def __init__(self, matrix: SparseMatrix, pivots: tuple[int, ...]):
        self.matrix = matrix
        self.pivots = pivots
        self.rank = len(pivots)


def rref(m: SparseMatrix) -> RrefResult:
    """Reduced row echelon form with deterministic pivoting."""
    if m.nrows == 0 or m.ncols == 0:
        return RrefResult(SparseMatrix(m.nrows, m.ncols), ())
    int_rows, pivots = _kernel.rref_int(_to_int_rows(m))
    e: dict[tuple[int, int], Fraction] = {}
    for i, col in enumerate(pivots):
        piv = int_rows[i][col]
        for j in range(m.ncols):
            x = int_rows[i][j]
            if x:
                e[(i, j)] = Fraction(x, piv)
    return RrefResult(SparseMatrix(m.nrows, m.ncols, e), tuple(pivots))


def rank(m: SparseMatrix) -> int:
    return rref(m).rank


def kernel_basis(m: SparseMatrix) -> list[tuple[Fraction, ...]]:
    """Canonical basis of the right null space {v : m v = 0}.

    One vector per free column f, with v[f] = 1 and support only on f and
    pivot columns; ordered by f.
    """
    r = rref(m)
    pivset = set(r.pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = [ZERO] * m.ncols
        v[f] = ONE
        for i, p in enumerate(r.pivots):
            c = r.matrix.get(i, f)
            if c:
                v[p] = -c
        basis.append(tuple(v))
    return basis


def solve(m: SparseMatrix, b: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
    """One solution of m x = b (free coordinates zero), or None."""
    sols = solve_many(m, [b])
    return sols[0]


def solve_many(
    m: SparseMatrix, bs: Sequence[Sequence[Fraction]]
) -> list[tuple[Fraction, ...] | None]:
    """Solve m x = b for several right-hand sides with one reduction."""
    k = len(bs)
    if k == 0:
        return []
    aug = SparseMatrix(m.nrows, m.ncols + k, dict(m.entries))
    for t, b in enumerate(bs):
        if len(b) != m.nrows:
            raise ValueError("rhs length mismatch")
        for i, v in enumerate(b):
            if v:
                aug.entries[(i, m.ncols + t)] = Fraction(v)
    r = rref(aug)
    out: list[tuple[Fraction, ...] | None] = []
    main_pivots = [p for p in r.pivots if p < m.ncols]
    for t in range(k):
        col = m.ncols + t
        # inconsistent iff some row is zero on the main columns but not at b
        ok = True
        for i in range(len(main_pivots), r.rank):
            if r.matrix.get(i, col):
                ok = False
                break
        if not ok:
            out.append(None)
            continue
        x = [ZERO] * m.ncols
        for i, p in enumerate(main_pivots):
            x[p] = r.matrix.get(i, col)
        out.append(tuple(x))
    return out


def column_space_pivots(m: SparseMatrix) -> tuple[int, ...]:
    """Indices of columns of m forming a basis of the column space."""
    return rref(m).pivots


class QuotientData:
    """Complement data for ambient / span(vectors).

    rep_columns[i] is the ambient coordinate whose image is the i-th basis
    vector of the quotient; projection is a (dim quotient) x (ambient dim)
    matrix sending a vector to the coordinates of its class.
    """

    __slots__ = ("rep_columns", "projection")

    def __init__(self, rep_columns: tuple[int, ...], projection: SparseMatrix):
        self.rep_columns = rep_columns
        self.projection = projection

    @property
    def dim(self) -> int:
        return len(self.rep_columns)


def quotient_basis(vectors: Iterable[Sequence[Fraction]], ambient_dim: int) -> QuotientData:
    """Canonical complement of span(vectors) inside Q^ambient_dim.

    Representatives are the standard basis vectors at non-pivot coordinates
    of the span's RREF; the projection reduces any vector modulo the span.
    """
    vecs = [tuple(v) for v in vectors]
    r = rref(SparseMatrix.from_rows(vecs)) if vecs else RrefResult(SparseMatrix(0, ambient_dim), ())
    pivset = set(r.pivots)
    reps = tuple(j for j in range(ambient_dim) if j not in pivset)
    proj: dict[tuple[int, int], Fraction] = {}
    for k, q in enumerate(reps):
        proj[(k, q)] = ONE
        for i, p in enumerate(r.pivots):
            c = r.matrix.get(i, q)
            if c:
                proj[(k, p)] = -c
    return QuotientData(reps, SparseMatrix(len(reps), ambient_dim, proj))
