"""Differential graded algebras over quivers, sliced to exact linear algebra.

A dga here is a free graded path algebra with a derivation differential
(degree +1, weight 0), optionally quotiented by a dg-ideal of homogeneous
relations.  Strictly positive generator weights make every (component,
degree, weight) slice finite-dimensional, so cohomology, truncation and
periodicity detection all reduce to exact rank computations.

Slice keys are tuples (src, tgt, degree, weight).
"""

from __future__ import annotations

from fractions import Fraction

from .exactlin import (
    SparseMatrix,
    column_space_pivots,
    kernel_basis,
    quotient_basis,
    rank,
    rref,
)
from .ncalg import NcPoly, Quiver, Word, parse_poly

Key = tuple[str, str, int, int]


class DgIdealError(ValueError):
    """A presentation whose relations do not generate a dg-ideal."""


class WindowError(ValueError):
    """A computation escaped the finite window it was given."""


def format_word(w: Word) -> str:
    if not w.arrows:
        return f"e_{w.src}"
    return "*".join(w.arrows)


class FreeDga:
    """Free graded path algebra with a derivation differential.

    diff maps generator names to polynomials; missing generators have
    differential zero.  Each value must be homogeneous with the same
    endpoints and weight as its generator and degree one higher.
    """

    def __init__(self, quiver: Quiver, diff: dict[str, NcPoly] | None = None):
        self.quiver = quiver
        self.diff: dict[str, NcPoly] = {}
        for name, p in (diff or {}).items():
            a = quiver.arrow(name)
            if p.is_zero():
                continue
            srcs = {w.src for w in p.terms}
            tgts = {w.tgt for w in p.terms}
            if srcs != {a.src} or tgts != {a.tgt}:
                raise ValueError(f"d({name}) has wrong endpoints")
            if p.weight() != a.weight:
                raise ValueError(f"d({name}) has weight {p.weight()}, generator has {a.weight}")
            if p.degree() != a.degree + 1:
                raise ValueError(f"d({name}) has degree {p.degree()}, expected {a.degree + 1}")
            self.diff[name] = p

    def d_of_generator(self, name: str) -> NcPoly:
        p = self.diff.get(name)
        return p if p is not None else NcPoly.zero(self.quiver)

    def differential(self, p: NcPoly) -> NcPoly:
        """Graded Leibniz extension: d(uv) = (du)v + (-1)^{|u|} u (dv)."""
        acc = NcPoly.zero(self.quiver)
        for w, c in p.terms.items():
            sign = 1
            for i, name in enumerate(w.arrows):
                dg = self.diff.get(name)
                if dg is not None:
                    if i:
                        left = NcPoly.from_word(Word(self.quiver, w.arrows[:i]), c * sign)
                    else:
                        left = NcPoly.from_word(Word.idempotent(self.quiver, w.src), c * sign)
                    if i + 1 < len(w.arrows):
                        right = NcPoly.from_word(Word(self.quiver, w.arrows[i + 1 :]))
                    else:
                        right = NcPoly.idempotent(self.quiver, w.tgt)
                    acc = acc + left * dg * right
                if self.quiver.arrow(name).degree % 2:
                    sign = -sign
        return acc

    def check_dsquare(self) -> list[tuple[str, NcPoly]]:
        """All generators with d(dg) != 0; empty means the dga is valid."""
        bad = []
        for name in sorted(self.quiver.arrows):
            r = self.differential(self.d_of_generator(name))
            if not r.is_zero():
                bad.append((name, r))
        return bad


class DgaPresentation:
    """A free dga modulo homogeneous relations; closure under d is checked
    slice-wise when the presentation is sliced."""

    def __init__(self, underlying: FreeDga, relations: list[NcPoly]):
        self.underlying = underlying
        self.relations: list[tuple[str, str, int, int, NcPoly]] = []
        for r in relations:
            if r.is_zero():
                continue
            srcs = {w.src for w in r.terms}
            tgts = {w.tgt for w in r.terms}
            if len(srcs) > 1 or len(tgts) > 1:
                raise ValueError(f"relation mixes components: {r!r}")
            self.relations.append((srcs.pop(), tgts.pop(), r.degree(), r.weight(), r))

    @property
    def quiver(self) -> Quiver:
        return self.underlying.quiver


class _Slice:
    __slots__ = ("paths", "index", "reps", "rep_index", "projection")

    def __init__(self, paths, reps, rep_index, projection):
        self.paths: tuple[Word, ...] = paths
        self.index = {w: k for k, w in enumerate(paths)}
        self.reps: tuple[Word, ...] = reps
        self.rep_index: tuple[int, ...] = rep_index
        self.projection: SparseMatrix | None = projection  # None: slice is free


class DgaSlices:
    """Finite window of a FreeDga or DgaPresentation.

    Bases extend lazily beyond the declared window (the algebra is globally
    defined), so every key is reliable; the window records which keys
    cohomology and product tables will read.
    """

    def __init__(self, dga: FreeDga | DgaPresentation, d_min: int, d_max: int, w_max: int):
        if d_min > d_max or w_max < 0:
            raise ValueError("empty window")
        if isinstance(dga, DgaPresentation):
            self.algebra = dga.underlying
            self.relations = dga.relations
        else:
            self.algebra = dga
            self.relations = []
        self.quiver = self.algebra.quiver
        self.d_min = d_min
        self.d_max = d_max
        self.w_max = w_max
        self._paths: dict[tuple[str, str, int], dict[int, list[Word]]] = {}
        self._slices: dict[Key, _Slice] = {}
        self._diffs: dict[Key, SparseMatrix] = {}
        # a presentation must be closed under d where we can see it
        for src, tgt, deg, wt, rel in self.relations:
            if wt > w_max:
                continue
            dr = self.algebra.differential(rel)
            if not self._poly_coords_are_zero(dr):
                raise DgIdealError(f"d of relation {rel!r} is not in the ideal")

    def _paths_by_degree(self, src: str, tgt: str, w: int) -> dict[int, list[Word]]:
        key = (src, tgt, w)
        hit = self._paths.get(key)
        if hit is None:
            hit = {}
            for p in self.quiver.paths(src, tgt, w):
                hit.setdefault(p.degree, []).append(p)
            self._paths[key] = hit
        return hit

    def slice(self, key: Key) -> _Slice:
        hit = self._slices.get(key)
        if hit is not None:
            return hit
        src, tgt, deg, w = key
        paths = tuple(self._paths_by_degree(src, tgt, w).get(deg, ()))
        if not self.relations or not paths:
            sl = _Slice(paths, paths, tuple(range(len(paths))), None)
        else:
            index = {p: k for k, p in enumerate(paths)}
            span: list[list[Fraction]] = []
            for rs, rt, rd, rw, rel in self.relations:
                rest = w - rw
                if rest < 0:
                    continue
                for wu in range(rest + 1):
                    by_du = self._paths_by_degree(src, rs, wu)
                    by_dv = self._paths_by_degree(rt, tgt, rest - wu)
                    for du, us in by_du.items():
                        vs = by_dv.get(deg - rd - du)
                        if not vs:
                            continue
                        for u in us:
                            left = NcPoly.from_word(u) * rel
                            if left.is_zero():
                                continue
                            for v in vs:
                                prod = left * NcPoly.from_word(v)
                                if prod.is_zero():
                                    continue
                                vec = [Fraction(0)] * len(paths)
                                for word, c in prod.terms.items():
                                    vec[index[word]] = c
                                span.append(vec)
            q = quotient_basis(span, len(paths))
            sl = _Slice(
                paths,
                tuple(paths[k] for k in q.rep_columns),
                tuple(q.rep_columns),
                q.projection,
            )
        self._slices[key] = sl
        return sl

    def dim(self, key: Key) -> int:
        return len(self.slice(key).reps)

    def labels(self, key: Key) -> tuple[str, ...]:
        return tuple(format_word(w) for w in self.slice(key).reps)

    def coords(self, key: Key, p: NcPoly) -> list[Fraction]:
        """Class coordinates of a polynomial lying in this slice."""
        sl = self.slice(key)
        vec = [Fraction(0)] * len(sl.paths)
        for w, c in p.terms.items():
            vec[sl.index[w]] = c
        if sl.projection is None:
            return vec
        return list(sl.projection.apply(vec))

    def to_poly(self, key: Key, vec) -> NcPoly:
        sl = self.slice(key)
        acc = NcPoly.zero(self.quiver)
        for rep, c in zip(sl.reps, vec):
            if c:
                acc = acc + NcPoly.from_word(rep, c)
        return acc

    def _poly_coords_are_zero(self, p: NcPoly) -> bool:
        groups: dict[Key, NcPoly] = {}
        for w, c in p.terms.items():
            k = (w.src, w.tgt, w.degree, w.weight)
            groups[k] = groups.get(k, NcPoly.zero(self.quiver)) + NcPoly.from_word(w, c)
        return all(not any(self.coords(k, part)) for k, part in groups.items())

    def diff_matrix(self, key: Key) -> SparseMatrix:
        """Matrix of d from this slice to the degree+1 slice, in class bases."""
        hit = self._diffs.get(key)
        if hit is not None:
            return hit
        src, tgt, deg, w = key
        nxt = (src, tgt, deg + 1, w)
        cols = []
        for rep in self.slice(key).reps:
            dp = self.algebra.differential(NcPoly.from_word(rep))
            cols.append(self.coords(nxt, dp))
        m = SparseMatrix.from_columns(cols, self.dim(nxt))
        self._diffs[key] = m
        return m

    def multiply(self, k1: Key, v1, k2: Key, v2):
        """Product of two slice elements: (key, coords), or None when the
        endpoints do not compose (the product is zero)."""
        if k1[1] != k2[0]:
            return None
        p = self.to_poly(k1, v1) * self.to_poly(k2, v2)
        key = (k1[0], k2[1], k1[2] + k2[2], k1[3] + k2[3])
        return key, self.coords(key, p)

    def unit_vector(self, vertex: str):
        key = (vertex, vertex, 0, 0)
        vec = self.coords(key, NcPoly.idempotent(self.quiver, vertex))
        if not any(vec):
            raise ValueError(f"idempotent e_{vertex} dies in the quotient")
        return key, vec

    def reliable(self, key: Key) -> bool:
        return self.d_min <= key[2] <= self.d_max and 0 <= key[3] <= self.w_max

    def window_keys(self):
        """All in-window keys with nonzero slices, in deterministic order."""
        for src in self.quiver.vertices:
            for tgt in self.quiver.vertices:
                for w in range(self.w_max + 1):
                    by_deg = self._paths_by_degree(src, tgt, w)
                    for deg in sorted(by_deg):
                        if self.d_min <= deg <= self.d_max:
                            key = (src, tgt, deg, w)
                            if self.dim(key):
                                yield key


def differential(dga: FreeDga, p: NcPoly) -> NcPoly:
    return dga.differential(p)


def check_dsquare(dga: FreeDga) -> list[tuple[str, NcPoly]]:
    return dga.check_dsquare()


class SliceDecomposition:
    """V = H + L + B with B = im(d_in), d injective on L, H cocycle reps.

    The B basis is d_in's columns at its canonical pivot set, so the L pivot
    set of the previous slice indexes exactly these vectors; that alignment
    makes the contraction homotopy a coordinate permutation on B.
    """

    __slots__ = ("n", "h_reps", "l_cols", "b_pivots", "_pi", "_l_rows", "_b_rows")

    def __init__(self, d_in: SparseMatrix, d_out: SparseMatrix, unit_vec=None):
        n = d_out.ncols
        if d_in.nrows != n:
            raise ValueError("slice dimension mismatch")
        self.n = n
        self.b_pivots = column_space_pivots(d_in)
        b_vecs = [d_in.column(j) for j in self.b_pivots]
        self.l_cols = column_space_pivots(d_out)
        cands = []
        if unit_vec is not None:
            cands.append(list(unit_vec))
        cands.extend(kernel_basis(d_out))
        reps: list[list[Fraction]] = []
        base_rank = rank(SparseMatrix.from_rows(b_vecs)) if b_vecs else 0
        kept = list(b_vecs)
        for cand in cands:
            trial = kept + [cand]
            r = rank(SparseMatrix.from_rows(trial, ncols=n))
            if r > base_rank + len(reps):
                reps.append(cand)
                kept = trial
        if unit_vec is not None and (not reps or reps[0] != list(unit_vec)):
            raise ValueError("unit idempotent is a coboundary")
        self.h_reps = reps
        if len(reps) + len(self.l_cols) + len(b_vecs) != n:
            raise ValueError("decomposition does not fill the slice")
        # invert M = [reps | e_l | b] once; blocks of M^-1 are the three projections
        cols = list(reps)
        for j in self.l_cols:
            e = [Fraction(0)] * n
            e[j] = Fraction(1)
            cols.append(e)
        cols.extend(b_vecs)
        aug_rows = []
        m = SparseMatrix.from_columns(cols, n)
        for i in range(n):
            row = [m.get(i, j) for j in range(n)]
            row.extend(Fraction(1) if j == i else Fraction(0) for j in range(n))
            aug_rows.append(row)
        res = rref(SparseMatrix.from_rows(aug_rows, ncols=2 * n))
        if list(res.pivots) != list(range(n)):
            raise ValueError("decomposition matrix is singular")
        inv_rows = []
        for i in range(n):
            piv = res.matrix.get(i, i)
            inv_rows.append([res.matrix.get(i, n + j) / piv for j in range(n)])
        k = len(reps)
        self._pi = SparseMatrix.from_rows(inv_rows[:k], ncols=n)
        self._l_rows = SparseMatrix.from_rows(inv_rows[k : k + len(self.l_cols)], ncols=n)
        self._b_rows = SparseMatrix.from_rows(inv_rows[k + len(self.l_cols) :], ncols=n)

    @property
    def dim(self) -> int:
        return len(self.h_reps)

    def project(self, vec) -> list[Fraction]:
        return list(self._pi.apply(vec))

    def include(self, hvec) -> list[Fraction]:
        out = [Fraction(0)] * self.n
        for rep, c in zip(self.h_reps, hvec):
            if c:
                for i, x in enumerate(rep):
                    out[i] += c * x
        return out

    def b_coords(self, vec) -> list[Fraction]:
        return list(self._b_rows.apply(vec))

    def sigma_pi(self, vec) -> list[Fraction]:
        return self.include(self.project(vec))


class CohomologyAlgebra:
    """Cohomology of a sliced dga with chosen representatives and products.

    Keys mirror the slice keys.  Products of classes are computed on
    representatives and projected; entries whose target escapes the window
    are reported as None (truncated away).
    """

    def __init__(self, slices):
        self.slices = slices
        self._dec: dict[Key, SliceDecomposition] = {}
        self._units: dict[str, Key] = {}
        self._products: dict[tuple[Key, int, Key, int], object] = {}
        for v in slices.quiver.vertices:
            try:
                key, _ = slices.unit_vector(v)
            except (ValueError, KeyError):
                continue
            self._units[v] = key

    def decomposition(self, key: Key) -> SliceDecomposition:
        hit = self._dec.get(key)
        if hit is not None:
            return hit
        src, tgt, deg, w = key
        d_out = self.slices.diff_matrix(key)
        d_in = self.slices.diff_matrix((src, tgt, deg - 1, w))
        unit = None
        if self._units.get(src) == key and src == tgt:
            _, unit = self.slices.unit_vector(src)
        dec = SliceDecomposition(d_in, d_out, unit)
        self._dec[key] = dec
        return dec

    def dim(self, key: Key) -> int:
        return self.decomposition(key).dim

    def reliable(self, key: Key) -> bool:
        return self.slices.reliable(key)

    def dims_over_weights(self, src: str, tgt: str, degree: int, w_max: int | None = None) -> list[int]:
        top = self.slices.w_max if w_max is None else w_max
        return [self.dim((src, tgt, degree, w)) for w in range(top + 1)]

    def nonzero_keys(self) -> list[Key]:
        return [k for k in self.slices.window_keys() if self.dim(k)]

    def rep_vector(self, key: Key, i: int) -> list[Fraction]:
        return list(self.decomposition(key).h_reps[i])

    def rep_label(self, key: Key, i: int) -> str:
        rep = self.decomposition(key).h_reps[i]
        names = self.slices.labels(key)
        parts = []
        for c, name in zip(rep, names):
            if not c:
                continue
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def class_of(self, key: Key, chain_vec) -> list[Fraction]:
        """Project a cocycle chain vector to class coordinates."""
        return self.decomposition(key).project(chain_vec)

    def product(self, k1: Key, i: int, k2: Key, j: int):
        """(key, class coords) of [rep_i][rep_j]; None when zero by
        composition; 'truncated' when the target key leaves the window."""
        ck = (k1, i, k2, j)
        if ck in self._products:
            return self._products[ck]
        r1 = self.decomposition(k1).h_reps[i]
        r2 = self.decomposition(k2).h_reps[j]
        try:
            got = self.slices.multiply(k1, r1, k2, r2)
        except WindowError:
            got = "truncated"
        if got is not None and got != "truncated":
            key, vec = got
            if not self.slices.reliable(key):
                got = "truncated"
            else:
                got = (key, self.decomposition(key).project(vec))
        self._products[ck] = got
        return got

    def unit_class(self, vertex: str):
        key = self._units[vertex]
        _, uvec = self.slices.unit_vector(vertex)
        return key, self.decomposition(key).project(uvec)


def cohomology(slices) -> CohomologyAlgebra:
    return CohomologyAlgebra(slices)


class TruncatedSlices:
    """Smart truncation to degrees [keep_min, keep_max].

    The bottom degree becomes the cokernel of the incoming differential; for
    nonpositive dgas the discarded part plus that image is a dg-ideal, so the
    result is again a sliced dga with the same products elsewhere.
    """

    def __init__(self, parent, keep_min: int, keep_max: int):
        if keep_min < parent.d_min or keep_max > parent.d_max:
            raise ValueError("keep range outside the parent window")
        top_deg = max((a.degree for a in parent.quiver.arrows.values()), default=0)
        if top_deg > 0:
            for key in parent.window_keys():
                if key[2] > keep_max:
                    raise ValueError("nonempty slices above keep_max")
        self.parent = parent
        self.quiver = parent.quiver
        self.d_min = keep_min
        self.d_max = keep_max
        self.w_max = parent.w_max
        self._bottom: dict[Key, tuple[tuple[int, ...], SparseMatrix]] = {}

    def _bottom_data(self, key: Key):
        hit = self._bottom.get(key)
        if hit is None:
            src, tgt, deg, w = key
            d_in = self.parent.diff_matrix((src, tgt, deg - 1, w))
            n = self.parent.dim(key)
            q = quotient_basis([d_in.column(j) for j in range(d_in.ncols)], n)
            hit = (q.rep_columns, q.projection)
            self._bottom[key] = hit
        return hit

    def _lift(self, key: Key, vec) -> list[Fraction]:
        if key[2] != self.d_min:
            return list(vec)
        reps, _ = self._bottom_data(key)
        out = [Fraction(0)] * self.parent.dim(key)
        for c, idx in zip(vec, reps):
            out[idx] = c
        return out

    def _push(self, key: Key, vec) -> list[Fraction]:
        if key[2] != self.d_min:
            return list(vec)
        _, proj = self._bottom_data(key)
        return list(proj.apply(vec))

    def dim(self, key: Key) -> int:
        if not self.d_min <= key[2] <= self.d_max:
            return 0
        if key[2] == self.d_min:
            return len(self._bottom_data(key)[0])
        return self.parent.dim(key)

    def labels(self, key: Key) -> tuple[str, ...]:
        if key[2] == self.d_min:
            reps, _ = self._bottom_data(key)
            parent_labels = self.parent.labels(key)
            return tuple(parent_labels[i] for i in reps)
        return self.parent.labels(key)

    def diff_matrix(self, key: Key) -> SparseMatrix:
        src, tgt, deg, w = key
        nxt = (src, tgt, deg + 1, w)
        if deg < self.d_min - 1 or deg > self.d_max:
            return SparseMatrix.zero(self.dim(nxt), self.dim(key))
        if deg == self.d_min - 1:
            return SparseMatrix.zero(self.dim(nxt), 0)
        if deg == self.d_max:
            return SparseMatrix.zero(0, self.dim(key))
        if deg == self.d_min:
            cols = []
            for i in range(self.dim(key)):
                e = [Fraction(0)] * self.dim(key)
                e[i] = Fraction(1)
                lifted = self._lift(key, e)
                cols.append(self.parent.diff_matrix(key).apply(lifted))
            return SparseMatrix.from_columns(cols, self.parent.dim(nxt))
        return self.parent.diff_matrix(key)

    def multiply(self, k1: Key, v1, k2: Key, v2):
        if k1[1] != k2[0]:
            return None
        got = self.parent.multiply(k1, self._lift(k1, v1), k2, self._lift(k2, v2))
        if got is None:
            return None
        key, vec = got
        if key[2] < self.d_min or key[2] > self.d_max:
            return None
        return key, self._push(key, vec)

    def unit_vector(self, vertex: str):
        key, vec = self.parent.unit_vector(vertex)
        if not self.d_min <= key[2] <= self.d_max:
            raise ValueError("unit truncated away")
        out = self._push(key, vec)
        if not any(out):
            raise ValueError("unit dies in the truncation")
        return key, out

    def reliable(self, key: Key) -> bool:
        return (
            self.d_min <= key[2] <= self.d_max
            and 0 <= key[3] <= self.w_max
            and (key[2] == self.d_min or self.parent.reliable(key))
        )

    def window_keys(self):
        for key in self.parent.window_keys():
            if self.d_min <= key[2] <= self.d_max and self.dim(key):
                yield key


def truncate(slices, keep_min: int, keep_max: int) -> TruncatedSlices:
    return TruncatedSlices(slices, keep_min, keep_max)


class PeriodicityElement:
    """A degree -2 cohomology class acting invertibly on the window."""

    __slots__ = ("weight", "components", "label")

    def __init__(self, weight: int, components, label: str):
        self.weight = weight
        self.components = components  # dict vertex -> (key, class coords)
        self.label = label

    def __repr__(self):
        return f"PeriodicityElement(weight={self.weight}, {self.label})"


def find_periodicity_element(c: CohomologyAlgebra) -> PeriodicityElement | None:
    """Search degree -2 classes whose left multiplication is an isomorphism
    H^j -> H^{j-2} on all fully-windowed degrees j <= 0 and which commute
    with every tabulated class.  Solves the centrality system per weight and
    tests the canonical solution-space rows in order."""
    s = c.slices
    if s.d_max - s.d_min + 1 < 5:
        raise ValueError("window of at least 5 degrees required")
    verts = s.quiver.vertices
    weights = sorted(
        {
            key[3]
            for key in c.nonzero_keys()
            if key[2] == -2 and key[0] == key[1]
        }
    )
    basis_keys = [k for k in c.nonzero_keys()]
    for w_eta in weights:
        comp_keys = {v: (v, v, -2, w_eta) for v in verts}
        offsets = {}
        total = 0
        for v in verts:
            offsets[v] = total
            total += c.dim(comp_keys[v])
        if not total:
            continue
        rows: list[list[Fraction]] = []
        for key in basis_keys:
            src, tgt, deg, wt = key
            left_key = comp_keys[src]
            right_key = comp_keys[tgt]
            out_key = (src, tgt, deg - 2, wt + w_eta)
            if not s.reliable(out_key):
                continue
            nout = c.dim(out_key)
            for x_i in range(c.dim(key)):
                cons = [[Fraction(0)] * total for _ in range(nout)]
                ok = True
                for e_i in range(c.dim(left_key)):
                    got = c.product(left_key, e_i, key, x_i)
                    if got == "truncated":
                        ok = False
                        break
                    if got is not None:
                        _, vec = got
                        col = offsets[src] + e_i
                        for r, val in enumerate(vec):
                            cons[r][col] += val
                if not ok:
                    continue
                for e_j in range(c.dim(right_key)):
                    got = c.product(key, x_i, right_key, e_j)
                    if got == "truncated":
                        ok = False
                        break
                    if got is not None:
                        _, vec = got
                        col = offsets[tgt] + e_j
                        for r, val in enumerate(vec):
                            cons[r][col] -= val
                if ok:
                    rows.extend(cons)
        live = [r for r in rows if any(r)]
        if live:
            sol_vecs = kernel_basis(SparseMatrix.from_rows(live, ncols=total))
        else:
            sol_vecs = [
                [Fraction(1) if i == j else Fraction(0) for i in range(total)]
                for j in range(total)
            ]
        if not sol_vecs:
            continue
        sol_space = rref(SparseMatrix.from_rows(sol_vecs, ncols=total))
        for r in range(sol_space.rank):
            piv = sol_space.pivots[r]
            cand = [sol_space.matrix.get(r, j) / sol_space.matrix.get(r, piv) for j in range(total)]
            if _eta_is_periodic(c, comp_keys, offsets, cand, w_eta):
                comps = {
                    v: (comp_keys[v], cand[offsets[v] : offsets[v] + c.dim(comp_keys[v])])
                    for v in verts
                    if c.dim(comp_keys[v])
                }
                label = " + ".join(
                    _component_label(c, key, vec) for v, (key, vec) in sorted(comps.items())
                )
                return PeriodicityElement(w_eta, comps, label)
    return None


def _component_label(c: CohomologyAlgebra, key: Key, vec) -> str:
    parts = []
    for i, coeff in enumerate(vec):
        if not coeff:
            continue
        lab = c.rep_label(key, i)
        if coeff == 1:
            parts.append(f"[{lab}]")
        else:
            parts.append(f"{coeff}*[{lab}]")
    return " + ".join(parts) if parts else "0"


def _eta_is_periodic(c: CohomologyAlgebra, comp_keys, offsets, cand, w_eta) -> bool:
    s = c.slices
    nonzero = False
    for v, key in comp_keys.items():
        if any(cand[offsets[v] : offsets[v] + c.dim(key)]):
            nonzero = True
    if not nonzero:
        return False
    for key in c.nonzero_keys():
        src, tgt, deg, wt = key
        if deg > 0:
            continue
        out_key = (src, tgt, deg - 2, wt + w_eta)
        if not s.reliable(out_key) or not s.reliable(key):
            continue
        ndom = c.dim(key)
        nout = c.dim(out_key)
        if ndom != nout:
            return False
        cols = []
        left_key = comp_keys[src]
        for x_i in range(ndom):
            col = [Fraction(0)] * nout
            for e_i in range(c.dim(left_key)):
                coeff = cand[offsets[src] + e_i]
                if not coeff:
                    continue
                got = c.product(left_key, e_i, key, x_i)
                if got == "truncated":
                    return False
                if got is not None:
                    _, vec = got
                    for r, val in enumerate(vec):
                        col[r] += coeff * val
            cols.append(col)
        if rank(SparseMatrix.from_columns(cols, nout)) != ndom:
            return False
    # the reverse direction: every H^{j-2} class must be hit, which full rank
    # on equal dimensions already gives
    return True


def dga_from_json(data: dict):
    """Deserialize {vertices?, generators: [{name, degree, weight, src?, tgt?}],
    diff: {name: poly}, relations?: [poly]} to FreeDga or DgaPresentation."""
    from .ncalg import Arrow

    vertices = [str(v) for v in data.get("vertices", ["0"])]
    arrows = [
        Arrow(
            g["name"],
            str(g.get("src", vertices[0])),
            str(g.get("tgt", vertices[0])),
            int(g.get("weight", 1)),
            int(g.get("degree", 0)),
        )
        for g in data["generators"]
    ]
    quiver = Quiver(vertices, arrows)
    diff = {
        name: parse_poly(quiver, text) for name, text in data.get("diff", {}).items()
    }
    dga = FreeDga(quiver, diff)
    rels = [parse_poly(quiver, t) for t in data.get("relations", [])]
    if rels:
        return DgaPresentation(dga, rels)
    return dga


def dga_to_json(dga: FreeDga | DgaPresentation) -> dict:
    from .ncalg import format_poly

    free = dga.underlying if isinstance(dga, DgaPresentation) else dga
    q = free.quiver
    out = {
        "vertices": list(q.vertices),
        "generators": [
            {
                "name": a.name,
                "src": a.src,
                "tgt": a.tgt,
                "weight": a.weight,
                "degree": a.degree,
            }
            for a in (q.arrows[n] for n in sorted(q.arrows))
        ],
        "diff": {
            name: format_poly(free.diff[name]) for name in sorted(free.diff)
        },
    }
    if isinstance(dga, DgaPresentation):
        out["relations"] = [format_poly(r) for (_, _, _, _, r) in dga.relations]
    return out
