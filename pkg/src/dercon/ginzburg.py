"""Ginzburg dgas and Jacobi algebras of quivers with superpotential.

A superpotential W of homogeneous weight w(W) on a degree-0 quiver doubles
every arrow a by a reversed arrow a* of degree -1 and weight w(W) - w(a)
and adds one loop z_v of degree -2 and weight w(W) at each vertex, with

    da = 0,   d(a*) = -d_a W,   d(z_v) = sum_a e_v [a, a*] e_v.

d^2 = 0 on z_v is the necklace identity sum_a [a, d_a W] = 0; it is checked,
not assumed, by check_dsquare in the tests.
"""

from __future__ import annotations

from fractions import Fraction

from .dgcore import FreeDga
from .exactlin import format_rational
from .ncalg import (
    Arrow,
    CyclicWord,
    NcPoly,
    Quiver,
    Superpotential,
    Word,
    cyclic_derivative,
    parse_poly,
)
from .presented import PresentedAlgebra


class PotentialedQuiver:
    """A degree-0, positively weighted quiver with a weight-homogeneous
    superpotential on it."""

    def __init__(self, quiver: Quiver, W: Superpotential):
        for a in quiver.arrows.values():
            if a.degree != 0:
                raise ValueError(f"arrow {a.name} has degree {a.degree}; expected 0")
        if W.quiver is not quiver:
            raise ValueError("superpotential lives on a different quiver")
        W.weight()
        self.quiver = quiver
        self.W = W


def ginzburg_dga(pq: PotentialedQuiver, w_pot: int | None = None) -> FreeDga:
    """The Ginzburg dga of (Q, W) as a free dga.

    Doubled arrows are named <a>_star, the vertex loops z_<v>.  The weights
    w(a*) = w(W) - w(a) and w(z_v) = w(W) are forced by homogeneity of the
    differential, so w(W) must exceed every arrow weight; a zero potential
    carries no weight of its own and needs w_pot supplied.
    """
    q = pq.quiver
    w = pq.W.weight()
    if w is None:
        w = w_pot
    if w is None:
        raise ValueError("zero potential: supply w_pot to fix the dual weights")
    for a in q.arrows.values():
        if a.weight >= w:
            raise ValueError(
                f"weight precondition violated: w(W) = {w} must exceed "
                f"w({a.name}) = {a.weight}"
            )
    base = list(q.arrows.values())
    star = {a.name: f"{a.name}_star" for a in base}
    z = {v: f"z_{v}" for v in q.vertices}
    names = [a.name for a in base] + list(star.values()) + list(z.values())
    if len(set(names)) != len(names):
        raise ValueError("generator name collision between arrows, stars, and loops")
    gq = Quiver(
        q.vertices,
        tuple(base)
        + tuple(Arrow(star[a.name], a.tgt, a.src, w - a.weight, -1) for a in base)
        + tuple(Arrow(z[v], v, v, w, -2) for v in q.vertices),
    )
    diff: dict[str, NcPoly] = {}
    for a in base:
        da = cyclic_derivative(pq.W, a.name)
        if da.is_zero():
            continue
        p = NcPoly(gq, {Word(gq, wd.arrows, src=wd.src): -c for wd, c in da.terms.items()})
        diff[star[a.name]] = p
    for v in q.vertices:
        acc = NcPoly.zero(gq)
        for a in base:
            if a.src == v:
                acc = acc + NcPoly.from_word(Word(gq, (a.name, star[a.name])))
            if a.tgt == v:
                acc = acc - NcPoly.from_word(Word(gq, (star[a.name], a.name)))
        if not acc.is_zero():
            diff[z[v]] = acc
    return FreeDga(gq, diff)


def jacobi_algebra(pq: PotentialedQuiver) -> PresentedAlgebra:
    """kQ modulo the cyclic derivatives of W; equals H^0 of the Ginzburg dga."""
    rels = [cyclic_derivative(pq.W, name) for name in sorted(pq.quiver.arrows)]
    return PresentedAlgebra(pq.quiver, rels)


def potential_from_json(data: dict) -> PotentialedQuiver:
    """Deserialize {vertices, arrows: [{name,src,tgt,weight}], W: [{word, coeff}]}."""
    quiver = Quiver(
        [str(v) for v in data["vertices"]],
        [
            Arrow(a["name"], str(a["src"]), str(a["tgt"]), int(a.get("weight", 1)), 0)
            for a in data["arrows"]
        ],
    )
    terms: dict[CyclicWord, Fraction] = {}
    for t in data.get("W", []):
        p = parse_poly(quiver, str(t["word"]))
        if len(p.terms) != 1:
            raise ValueError(f"potential term is not a single word: {t['word']}")
        [(wd, c)] = p.terms.items()
        if c != 1:
            raise ValueError(f"potential word carries a coefficient: {t['word']}")
        cw = CyclicWord(quiver, wd.arrows)
        acc = terms.get(cw, Fraction(0)) + Fraction(str(t["coeff"]))
        if acc:
            terms[cw] = acc
        else:
            terms.pop(cw, None)
    return PotentialedQuiver(quiver, Superpotential(quiver, terms))


def potential_to_json(pq: PotentialedQuiver) -> dict:
    q = pq.quiver
    return {
        "vertices": list(q.vertices),
        "arrows": [
            {"name": a.name, "src": a.src, "tgt": a.tgt, "weight": a.weight}
            for a in (q.arrows[n] for n in sorted(q.arrows))
        ],
        "W": [
            {"word": "*".join(cw.arrows), "coeff": format_rational(c)}
            for cw, c in sorted(pq.W.terms.items(), key=lambda t: t[0].arrows)
        ],
    }
