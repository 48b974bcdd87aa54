"""Ginzburg dgas, Jacobi algebras, and the necklace identity."""

import random
from fractions import Fraction

import pytest

from dercon import catalog
from dercon.dgcore import DgaSlices, cohomology
from dercon.ginzburg import (
    PotentialedQuiver,
    ginzburg_dga,
    jacobi_algebra,
    potential_from_json,
    potential_to_json,
)
from dercon.ncalg import (
    Arrow,
    CyclicWord,
    NcPoly,
    Quiver,
    Superpotential,
    cyclic_derivative,
    parse_poly,
)

from conftest import assert_scaled_match


# -- fixture dgas ------------------------------------------------------------


def test_ginzburg_laufer_matches_dual_fixture():
    g = ginzburg_dga(catalog.laufer_potential())
    assert g.check_dsquare() == []
    ws = {n: (a.degree, a.weight) for n, a in g.quiver.arrows.items()}
    assert ws == {
        "x": (0, 3),
        "y": (0, 2),
        "x_star": (-1, 5),
        "y_star": (-1, 6),
        "z_0": (-2, 8),
    }
    assert g.d_of_generator("x_star") == parse_poly(g.quiver, "-x*y - y*x")
    assert g.d_of_generator("y_star") == parse_poly(g.quiver, "y*y*y - x*x")
    assert_scaled_match(g, catalog.laufer_dual_dga(), catalog.laufer_ginzburg_map())


@pytest.mark.parametrize("n", [2, 3, 4])
def test_ginzburg_pagoda_matches_dual_fixture(n):
    g = ginzburg_dga(catalog.pagoda_potential(n))
    assert g.check_dsquare() == []
    m = NcPoly.generator(g.quiver, "m")
    mn = m
    for _ in range(n - 1):
        mn = mn * m
    assert g.d_of_generator("m_star") == mn.scale(-2)
    ms = NcPoly.generator(g.quiver, "m_star")
    assert g.d_of_generator("z_0") == m * ms - ms * m
    assert_scaled_match(g, catalog.pagoda_dual_dga(n), catalog.pagoda_ginzburg_map())


def test_ginzburg_zero_potential():
    quiver = Quiver(("0",), (Arrow("a", "0", "0", 2),))
    pq = PotentialedQuiver(quiver, Superpotential(quiver, {}))
    with pytest.raises(ValueError, match="zero potential"):
        ginzburg_dga(pq)
    g = ginzburg_dga(pq, w_pot=5)
    assert set(g.diff) == {"z_0"}
    assert g.d_of_generator("z_0") == parse_poly(g.quiver, "a*a_star - a_star*a")
    assert g.quiver.arrows["a_star"].weight == 3
    assert g.check_dsquare() == []


def test_ginzburg_weight_precondition():
    quiver = Quiver(("0",), (Arrow("x", "0", "0", 2), Arrow("y", "0", "0", 6)))
    pot = Superpotential(quiver, {CyclicWord(quiver, ("x", "x", "x")): Fraction(1)})
    with pytest.raises(ValueError, match="weight precondition"):
        ginzburg_dga(PotentialedQuiver(quiver, pot))


def test_potentialed_quiver_rejects_graded_arrows():
    quiver = Quiver(("0",), (Arrow("a", "0", "0", 2, -1),))
    with pytest.raises(ValueError):
        PotentialedQuiver(quiver, Superpotential(quiver, {}))


# -- jacobi algebras ---------------------------------------------------------


def test_jacobi_laufer_is_the_quantum_cusp():
    pq = catalog.laufer_potential()
    jac = jacobi_algebra(pq)
    rels = {repr(r) for (_, _, _, r) in jac.relations}
    assert rels == {repr(parse_poly(pq.quiver, "x*y + y*x")), repr(parse_poly(pq.quiver, "x*x - y*y*y"))}
    assert jac.hilbert_dims("0", "0", 10) == [1, 0, 1, 1, 1, 1, 1, 1, 1, 0, 1]
    # H^0 of the Ginzburg dga carries the same weight dims
    coh = cohomology(DgaSlices(ginzburg_dga(pq), -2, 1, 10))
    h0 = {w: coh.dim(("0", "0", 0, w)) for w in range(11)}
    assert h0 == {w: d for w, d in enumerate(jac.hilbert_dims("0", "0", 10))}


@pytest.mark.parametrize("n", [2, 3])
def test_jacobi_pagoda_is_the_truncated_loop(n):
    pq = catalog.pagoda_potential(n)
    jac = jacobi_algebra(pq)
    want = [1 if w % 2 == 0 and w // 2 < n else 0 for w in range(2 * n + 1)]
    assert jac.hilbert_dims("0", "0", 2 * n) == want
    coh = cohomology(DgaSlices(ginzburg_dga(pq), -2, 1, 2 * n))
    assert [coh.dim(("0", "0", 0, w)) for w in range(2 * n + 1)] == want


def test_jacobi_zero_potential_is_the_free_path_algebra():
    quiver = Quiver(
        ("0", "1"),
        (Arrow("a", "0", "1", 1), Arrow("b", "1", "0", 1), Arrow("c", "0", "0", 2)),
    )
    jac = jacobi_algebra(PotentialedQuiver(quiver, Superpotential(quiver, {})))
    for src in quiver.vertices:
        for tgt in quiver.vertices:
            dims = jac.hilbert_dims(src, tgt, 6)
            assert dims == [len(quiver.paths(src, tgt, w)) for w in range(7)]


# -- necklace identity -------------------------------------------------------


def random_potentialed_quiver(rng):
    if rng.random() < 0.5:
        verts = ("0",)
        arrows = [
            Arrow(f"a{i}", "0", "0", rng.randint(1, 3))
            for i in range(rng.randint(2, 3))
        ]
    else:
        verts = ("0", "1")
        arrows = [Arrow("a0", "0", "1", rng.randint(1, 3)), Arrow("a1", "1", "0", rng.randint(1, 3))]
        for i in range(2, 2 + rng.randint(0, 2)):
            s = rng.choice(verts)
            t = rng.choice(verts)
            arrows.append(Arrow(f"a{i}", s, t, rng.randint(1, 3)))
    quiver = Quiver(verts, tuple(arrows))
    for w in rng.sample(range(2, 10), 8):
        cycles = set()
        for v in quiver.vertices:
            for p in quiver.paths(v, v, w):
                if len(p.arrows) >= 2:
                    cycles.add(CyclicWord(quiver, p.arrows))
        if cycles:
            terms = {
                cw: Fraction(rng.choice([-2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
                for cw in sorted(cycles, key=lambda c: c.arrows)
                if rng.random() < 0.7
            }
            if terms:
                return PotentialedQuiver(quiver, Superpotential(quiver, terms))
    return None


def test_necklace_identity_on_random_superpotentials():
    rng = random.Random(7)
    seen = 0
    while seen < 50:
        pq = random_potentialed_quiver(rng)
        if pq is None:
            continue
        seen += 1
        # sum_a [a, d_a W] = 0 by direct expansion
        acc = NcPoly.zero(pq.quiver)
        for name in sorted(pq.quiver.arrows):
            a = NcPoly.generator(pq.quiver, name)
            da = cyclic_derivative(pq.W, name)
            acc = acc + a * da - da * a
        assert acc.is_zero()
        # the same fact as d^2 z_v = 0, whenever the weights are admissible
        if max(a.weight for a in pq.quiver.arrows.values()) < pq.W.weight():
            assert ginzburg_dga(pq).check_dsquare() == []


# -- serialization -----------------------------------------------------------


def test_potential_json_round_trip():
    pq = catalog.laufer_potential()
    data = potential_to_json(pq)
    back = potential_from_json(data)
    assert {(cw.arrows, c) for cw, c in back.W.terms.items()} == {
        (cw.arrows, c) for cw, c in pq.W.terms.items()
    }
    g1, g2 = ginzburg_dga(pq), ginzburg_dga(back)
    assert set(g1.quiver.arrows) == set(g2.quiver.arrows)
    for name in g1.quiver.arrows:
        assert g1.d_of_generator(name) == g2.d_of_generator(name)


def test_potential_json_rejects_nonwords():
    data = potential_to_json(catalog.laufer_potential())
    data["W"][0]["word"] = "x*y + y*x"
    with pytest.raises(ValueError, match="single word"):
        potential_from_json(data)
