"""Bar words of a minimal A-infinity algebra and its Koszul dual dga.

For a strictly unital minimal model whose non-unit basis has strictly
negative Adams weights, the linear dual of the reduced bar construction is
an honest free dga: each basis element x yields one generator of degree
1 - |x|, weight -weight(x) and swapped endpoints, and weight positivity
keeps every slice finite, so no completion is involved.

Sign conventions, fixed once and pinned by the dual dga fixtures: an
arity-s block applied after p letters of a bar word contributes

    -(-1)^s (-1)^{sum_{j<p}(|x_j|-1)} (-1)^{sum_{j=0}^{s-1}(s-1-j)(|x_{p+j}|-1)}

times the table coefficient, and the differential of a dual generator c*
collects each full-word preimage m_r(x_1,...,x_r) ∋ c as the reversed word
dual(x_r)...dual(x_1) with coefficient

    -(-1)^r (-1)^{sum_{j=0}^{r-1} j (|x_j|-1)}.

Reversal makes dual words composable when the quiver has several vertices;
over one vertex it reproduces the usual signed sum of products.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .ainf import AInfinityAlgebra, merkulov_transfer
from .dgcore import DgaSlices, FreeDga, WindowError, cohomology
from .ncalg import Arrow, NcPoly, Quiver, Word

ZERO = Fraction(0)


class BarWord:
    """Tensor word x_1|...|x_r of non-unit basis elements.

    Degree is sum(|x_i| - 1) (one shift per factor), weight the plain
    weight sum.  Letters are basis indices of the owning algebra and must
    compose in the quiver.
    """

    __slots__ = ("algebra", "letters")

    def __init__(self, algebra: AInfinityAlgebra, letters):
        letters = tuple(letters)
        if not letters:
            raise ValueError("bar words are nonempty")
        units = set(algebra.units.values())
        for i in letters:
            if i in units:
                raise ValueError("bar words have no unit factors")
        for i, j in zip(letters, letters[1:]):
            if algebra.keys[i][1] != algebra.keys[j][0]:
                raise ValueError("bar word letters do not compose")
        self.algebra = algebra
        self.letters = letters

    @property
    def degree(self) -> int:
        return sum(self.algebra.keys[i][2] - 1 for i in self.letters)

    @property
    def weight(self) -> int:
        return sum(self.algebra.keys[i][3] for i in self.letters)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return (
            isinstance(other, BarWord)
            and self.algebra is other.algebra
            and self.letters == other.letters
        )

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return "|".join(self.algebra.labels[i] for i in self.letters)


def bar_differential(
    a: AInfinityAlgebra, w: BarWord, arity_limit: int | None = None
) -> dict[BarWord, Fraction]:
    """Signed sum of bar words over all m_s blocks, s >= 2.

    Blocks landing in a unit drop out (the construction is reduced).  With
    arity_limit set, words long enough to consult an operation beyond the
    limit are refused rather than treated as zero, so windowed tables are
    never silently trusted.
    """
    letters = w.letters
    r = len(letters)
    if arity_limit is not None and r > arity_limit:
        raise ValueError(
            f"arity table exhausted: m_{r} needed beyond m_{arity_limit}"
        )
    units = set(a.units.values())
    degs = [a.keys[i][2] for i in letters]
    out: dict[BarWord, Fraction] = {}
    for s in range(2, r + 1):
        table = a.tables.get(s)
        if not table:
            continue
        lam = 1 if s % 2 else -1
        for p in range(r - s + 1):
            entry = table.get(letters[p : p + s])
            if not entry:
                continue
            prefix = sum(d - 1 for d in degs[:p])
            dec = sum((s - 1 - j) * (degs[p + j] - 1) for j in range(s))
            sgn = lam if (prefix + dec) % 2 == 0 else -lam
            for c, coeff in entry.items():
                if c in units:
                    continue
                nw = BarWord(a, letters[:p] + (c,) + letters[p + s :])
                acc = out.get(nw, ZERO) + sgn * coeff
                if acc:
                    out[nw] = acc
                else:
                    out.pop(nw, None)
    return out


class DualGenerator:
    """Dual of a basis element: degree 1 - |x|, weight -weight(x),
    endpoints swapped."""

    __slots__ = ("name", "src", "tgt", "degree", "weight", "index")

    def __init__(self, name: str, src: str, tgt: str, degree: int, weight: int, index: int):
        self.name = name
        self.src = src
        self.tgt = tgt
        self.degree = degree
        self.weight = weight
        self.index = index

    def __repr__(self):
        return f"DualGenerator({self.name}: {self.src}->{self.tgt}, w={self.weight}, d={self.degree})"


def dual_generator_name(label: str) -> str:
    """Arrow-safe name of the dual of a basis element."""
    return "dual_" + re.sub(r"[^0-9A-Za-z_]+", "_", label).strip("_")


def koszul_dual(
    a: AInfinityAlgebra,
    w_max: int,
    d_min: int | None,
    arity_limit: int | None = None,
) -> FreeDga:
    """Free dga on the duals of the non-unit basis, up to dual weight w_max
    and (when d_min is given) down to dual degree d_min.

    d(dual(c)) is the signed sum of reversed dual words over the table
    preimages of c; the operation tables are trusted as complete unless
    arity_limit bounds them, in which case windows that could consult a
    higher operation are refused.  Basis weights must be strictly negative:
    positive dual weights are what keep every slice of the output finite.
    """
    units = set(a.units.values())
    gens: dict[int, DualGenerator] = {}
    used: set[str] = set()
    for i, (src, tgt, deg, wt) in enumerate(a.keys):
        if i in units:
            continue
        if -wt <= 0:
            raise ValueError(
                f"nonpositive dual weight for {a.labels[i]}; "
                "dualize in the chart where basis weights are negative"
            )
        if -wt > w_max:
            continue
        if d_min is not None and 1 - deg < d_min:
            continue
        name = dual_generator_name(a.labels[i])
        if name in used:
            name = f"{name}_{i}"
        used.add(name)
        gens[i] = DualGenerator(name, tgt, src, 1 - deg, -wt, i)
    if arity_limit is not None and gens:
        wmin = min(g.weight for g in gens.values())
        reach = max(g.weight for g in gens.values()) // wmin
        if reach > arity_limit:
            raise ValueError(
                f"arity table exhausted: preimage words reach length {reach} "
                f"beyond m_{arity_limit}"
            )
    verts = list(dict.fromkeys(
        [*a.units, *(k[0] for k in a.keys), *(k[1] for k in a.keys)]
    ))
    quiver = Quiver(
        verts,
        tuple(
            Arrow(g.name, g.src, g.tgt, g.weight, g.degree)
            for _, g in sorted(gens.items())
        ),
    )
    terms: dict[str, dict[Word, Fraction]] = {}
    for r in sorted(a.tables):
        lam = 1 if r % 2 else -1
        for tup, outs in a.tables[r].items():
            if any(t in units for t in tup):
                continue
            for c, coeff in outs.items():
                g_out = gens.get(c)
                if g_out is None:
                    continue
                missing = [t for t in tup if t not in gens]
                if missing:
                    raise WindowError(
                        f"d({g_out.name}) needs dual({a.labels[missing[0]]}) "
                        "outside the requested window"
                    )
                dec = sum(j * (a.keys[t][2] - 1) for j, t in enumerate(tup))
                sgn = lam if dec % 2 == 0 else -lam
                word = Word(quiver, tuple(gens[t].name for t in reversed(tup)))
                acc = terms.setdefault(g_out.name, {})
                val = acc.get(word, ZERO) + sgn * coeff
                if val:
                    acc[word] = val
                else:
                    acc.pop(word, None)
    diff: dict[str, NcPoly] = {}
    for name, words in terms.items():
        p = NcPoly.zero(quiver)
        for word, c in words.items():
            p = p + NcPoly.from_word(word, c)
        if not p.is_zero():
            diff[name] = p
    return FreeDga(quiver, diff)


def _degree_reach(quiver: Quiver, w_max: int, sign: int) -> int:
    """Bound on slice degrees at weight <= w_max: w_max times the steepest
    degree-per-weight slope among the generators, in the given direction."""
    worst = Fraction(0)
    for ar in quiver.arrows.values():
        slope = Fraction(ar.degree, ar.weight)
        if sign * slope > sign * worst:
            worst = slope
    edge = worst * w_max
    n = edge.numerator // edge.denominator  # floor
    return n if sign < 0 else -((-edge.numerator) // edge.denominator)


def double_dual_h0(
    a: AInfinityAlgebra, w_max: int, n_max: int | None = None
) -> dict:
    """Weight-graded dimension report for the bounded double dual.

    Pipeline: dual -> sliced cohomology -> transferred minimal model ->
    dual again, the second dual taken in the mirrored weight chart that
    makes its generator weights positive.  The report compares the total
    cohomology dimensions of the double dual per weight against the basis
    dimensions of a (weights as absolute values), and also carries the H^0
    row of the first dual, which is where a dropped higher operation shows
    up first.
    """
    dual = koszul_dual(a, w_max, None)
    lo = min(0, _degree_reach(dual.quiver, w_max, -1))
    slices = DgaSlices(dual, lo - 1, 1, w_max)
    coh = cohomology(slices)
    live = coh.nonzero_keys()
    dual_h0: dict[int, int] = {}
    for src, tgt, deg, wt in live:
        if deg == 0:
            dual_h0[wt] = dual_h0.get(wt, 0) + coh.dim((src, tgt, deg, wt))
    pos = [k[3] for k in live if k[3] > 0]
    arity = n_max if n_max is not None else max(2, w_max // min(pos)) if pos else 2
    model, _ = merkulov_transfer(slices, arity)
    mirror = AInfinityAlgebra(
        model.labels,
        [(s, t, d, -w) for (s, t, d, w) in model.keys],
        model.units,
        model.tables,
    )
    ddual = koszul_dual(mirror, w_max, None)
    hi = max(0, _degree_reach(ddual.quiver, w_max, +1))
    coh2 = cohomology(DgaSlices(ddual, -1, hi + 1, w_max))
    dd_dims: dict[int, int] = {}
    for key in coh2.nonzero_keys():
        dd_dims[key[3]] = dd_dims.get(key[3], 0) + coh2.dim(key)
    model_dims: dict[int, int] = {}
    for _, _, _, wt in a.keys:
        model_dims[abs(wt)] = model_dims.get(abs(wt), 0) + 1
    mismatches = [
        w
        for w in range(w_max + 1)
        if model_dims.get(w, 0) != dd_dims.get(w, 0)
    ]
    return {
        "w_max": w_max,
        "model_dims": dict(sorted(model_dims.items())),
        "dual_h0_dims": dict(sorted(dual_h0.items())),
        "double_dual_dims": dict(sorted(dd_dims.items())),
        "mismatches": mismatches,
        "match": not mismatches,
    }
