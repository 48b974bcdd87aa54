"""Path algebras presented by homogeneous relations, handled slice by slice.

No Groebner machinery: with strictly positive arrow weights every weight
slice e_i A e_j is finite-dimensional, the relation ideal's slice is spanned
by the finitely many products u*r*v landing there, and a normal form is a
projection to the canonical complement.  All downstream exactness and
cohomology checks happen inside such slices, so this is enough.
"""

from __future__ import annotations

from fractions import Fraction

from .exactlin import SparseMatrix, quotient_basis
from .ncalg import NcPoly, Quiver, Word, parse_poly


class SliceBasis:
    """Canonical basis data of one weight slice e_i A e_j."""

    __slots__ = ("src", "tgt", "weight", "paths", "index", "reps", "projection")

    def __init__(self, src, tgt, weight, paths, reps, projection):
        self.src = src
        self.tgt = tgt
        self.weight = weight
        self.paths: tuple[Word, ...] = paths
        self.index = {w: k for k, w in enumerate(paths)}
        self.reps: tuple[Word, ...] = reps
        self.projection: SparseMatrix = projection

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords_of_class(self, p: NcPoly) -> tuple[Fraction, ...]:
        """Class coordinates (w.r.t. reps) of a polynomial lying in this slice."""
        vec = [Fraction(0)] * len(self.paths)
        for w, c in p.terms.items():
            vec[self.index[w]] = c
        return self.projection.apply(vec)


class PresentedAlgebra:
    """kQ modulo a two-sided ideal of weight-homogeneous relations."""

    def __init__(self, quiver: Quiver, relations: list[NcPoly]):
        for a in quiver.arrows.values():
            if a.degree != 0:
                raise ValueError(f"arrow {a.name} has degree {a.degree}; expected 0")
        self.quiver = quiver
        self.relations: list[tuple[str, str, int, NcPoly]] = []
        for r in relations:
            if r.is_zero():
                continue
            srcs = {w.src for w in r.terms}
            tgts = {w.tgt for w in r.terms}
            if len(srcs) > 1 or len(tgts) > 1:
                raise ValueError(f"relation mixes components: {r!r}")
            wt = r.weight()
            degs = {w.degree for w in r.terms}
            if len(degs) > 1:
                raise ValueError(f"relation mixes degrees: {r!r}")
            self.relations.append((srcs.pop(), tgts.pop(), wt, r))
        self._slices: dict[tuple[str, str, int], SliceBasis] = {}

    @classmethod
    def from_strings(cls, quiver: Quiver, relation_texts: list[str]) -> "PresentedAlgebra":
        return cls(quiver, [parse_poly(quiver, t) for t in relation_texts])

    def slice_basis(self, src: str, tgt: str, weight: int) -> SliceBasis:
        key = (src, tgt, weight)
        hit = self._slices.get(key)
        if hit is not None:
            return hit
        paths = self.quiver.paths(src, tgt, weight)
        spanning: list[list[Fraction]] = []
        index = {w: k for k, w in enumerate(paths)}
        for ru, rv, rw, rel in self.relations:
            rest = weight - rw
            if rest < 0:
                continue
            for wu in range(rest + 1):
                for u in self.quiver.paths(src, ru, wu):
                    for v in self.quiver.paths(rv, tgt, rest - wu):
                        prod = NcPoly.from_word(u) * rel * NcPoly.from_word(v)
                        if prod.is_zero():
                            continue
                        vec = [Fraction(0)] * len(paths)
                        for w, c in prod.terms.items():
                            vec[index[w]] = c
                        spanning.append(vec)
        q = quotient_basis(spanning, len(paths))
        sb = SliceBasis(
            src,
            tgt,
            weight,
            paths,
            tuple(paths[k] for k in q.rep_columns),
            q.projection,
        )
        self._slices[key] = sb
        return sb

    def normal_form_coords(self, p: NcPoly) -> tuple[SliceBasis, tuple[Fraction, ...]]:
        """Coordinates of a homogeneous element's class; zero vector iff p is in the ideal."""
        if p.is_zero():
            raise ValueError("zero has no distinguished slice")
        keys = {(w.src, w.tgt, w.weight) for w in p.terms}
        if len(keys) > 1:
            raise ValueError("input is not homogeneous in (source, target, weight)")
        src, tgt, wt = keys.pop()
        sb = self.slice_basis(src, tgt, wt)
        return sb, sb.coords_of_class(p)

    def normal_form(self, p: NcPoly) -> NcPoly:
        """Canonical representative of p's class, slicewise."""
        groups: dict[tuple[str, str, int], NcPoly] = {}
        for w, c in p.terms.items():
            key = (w.src, w.tgt, w.weight)
            groups[key] = groups.get(key, NcPoly.zero(self.quiver)) + NcPoly.from_word(w, c)
        acc = NcPoly.zero(self.quiver)
        for (src, tgt, wt), part in groups.items():
            sb = self.slice_basis(src, tgt, wt)
            coords = sb.coords_of_class(part)
            for rep, c in zip(sb.reps, coords):
                if c:
                    acc = acc + NcPoly.from_word(rep, c)
        return acc

    def is_zero(self, p: NcPoly) -> bool:
        return self.normal_form(p).is_zero()

    def mul(self, a: NcPoly, b: NcPoly) -> NcPoly:
        return self.normal_form(a * b)

    def hilbert_dims(self, src: str, tgt: str, w_max: int) -> list[int]:
        """dim e_src A e_tgt in weights 0..w_max."""
        return [self.slice_basis(src, tgt, w).dim for w in range(w_max + 1)]


def algebra_from_json(data: dict) -> PresentedAlgebra:
    """Deserialize {vertices, arrows: [{name,src,tgt,weight,degree?}], relations: [str]}."""
    from .ncalg import Arrow

    quiver = Quiver(
        [str(v) for v in data["vertices"]],
        [
            Arrow(
                a["name"],
                str(a["src"]),
                str(a["tgt"]),
                int(a.get("weight", 1)),
                int(a.get("degree", 0)),
            )
            for a in data["arrows"]
        ],
    )
    return PresentedAlgebra.from_strings(quiver, [str(t) for t in data.get("relations", [])])


def algebra_to_json(alg: PresentedAlgebra) -> dict:
    from .ncalg import format_poly

    q = alg.quiver
    return {
        "vertices": list(q.vertices),
        "arrows": [
            {"name": a.name, "src": a.src, "tgt": a.tgt, "weight": a.weight}
            | ({"degree": a.degree} if a.degree else {})
            for a in (q.arrows[n] for n in sorted(q.arrows))
        ],
        "relations": [format_poly(r) for (_, _, _, r) in alg.relations],
    }
