"""Bar differential and Koszul duals against the catalogued dual dgas."""

from fractions import Fraction

import pytest

from dercon import catalog
from dercon.dgcore import DgaSlices, WindowError, cohomology, dga_from_json, dga_to_json
from dercon.koszul import (
    BarWord,
    bar_differential,
    double_dual_h0,
    dual_generator_name,
    koszul_dual,
)
from dercon.ainf import AInfinityAlgebra
from dercon.ncalg import NcPoly

from conftest import assert_scaled_match, dims_by_key


def bar_square(a, w):
    acc = {}
    for w1, c1 in bar_differential(a, w).items():
        for w2, c2 in bar_differential(a, w1).items():
            s = acc.get(w2, Fraction(0)) + c1 * c2
            if s:
                acc[w2] = s
            else:
                acc.pop(w2, None)
    return acc


def nonunit_words(a, max_len):
    units = set(a.units.values())
    letters = [i for i in range(len(a.labels)) if i not in units]
    pool = [(i,) for i in letters]
    out = []
    for _ in range(max_len):
        out.extend(pool)
        pool = [
            t + (j,)
            for t in pool
            for j in letters
            if a.keys[t[-1]][1] == a.keys[j][0]
        ]
    return out


# -- bar words ---------------------------------------------------------------


def test_bar_word_bookkeeping():
    m = catalog.laufer_minimal_model()
    w = BarWord(m, (2, 1, 3))  # g|f|f2
    assert w.degree == (1 - 1) + (1 - 1) + (2 - 1)
    assert w.weight == -2 - 3 - 6
    assert len(w) == 3
    assert w == BarWord(m, (2, 1, 3))
    assert w != BarWord(m, (1, 2, 3))


def test_bar_word_rejects_units_and_noncomposable():
    m = catalog.laufer_minimal_model()
    with pytest.raises(ValueError):
        BarWord(m, (1, 0, 2))
    with pytest.raises(ValueError):
        BarWord(m, ())
    two = AInfinityAlgebra(
        ["e0", "e1", "u"],
        [("0", "0", 0, 0), ("1", "1", 0, 0), ("0", "1", 1, -1)],
        {"0": 0, "1": 1},
        {},
    )
    with pytest.raises(ValueError):
        BarWord(two, (2, 2))


def test_bar_differential_blocks():
    la = catalog.laufer_minimal_model()
    # f|g -> -(gf), f|f -> -(f2), g|g|g -> +(f2)
    assert bar_differential(la, BarWord(la, (1, 2))) == {BarWord(la, (4,)): -1}
    assert bar_differential(la, BarWord(la, (1, 1))) == {BarWord(la, (3,)): -1}
    assert bar_differential(la, BarWord(la, (2, 2, 2))) == {BarWord(la, (3,)): 1}
    at = catalog.atiyah_minimal_model()
    assert bar_differential(at, BarWord(at, (1, 1))) == {}
    p3 = catalog.pagoda_minimal_model(3)
    assert bar_differential(p3, BarWord(p3, (1, 1, 1))) == {BarWord(p3, (2,)): 1}
    p2 = catalog.pagoda_minimal_model(2)
    assert bar_differential(p2, BarWord(p2, (1, 1, 1))) == {
        BarWord(p2, (2, 1)): -1,
        BarWord(p2, (1, 2)): -1,
    }


@pytest.mark.parametrize(
    "model,max_len",
    [
        (catalog.laufer_minimal_model(), 4),
        (catalog.pagoda_minimal_model(2), 4),
        (catalog.pagoda_minimal_model(3), 4),
        (catalog.surface_minimal_model(2, 9), 3),
        (catalog.surface_minimal_model(3, 10), 3),
    ],
)
def test_bar_differential_squares_to_zero(model, max_len):
    for letters in nonunit_words(model, max_len):
        assert bar_square(model, BarWord(model, letters)) == {}


def test_bar_differential_arity_limit():
    la = catalog.laufer_minimal_model()
    w = BarWord(la, (2, 2, 2))
    with pytest.raises(ValueError, match="arity table exhausted"):
        bar_differential(la, w, arity_limit=2)
    assert bar_differential(la, w, arity_limit=3) == {BarWord(la, (3,)): 1}


# -- koszul duals of the catalogued models -----------------------------------


def test_dual_generator_name_is_arrow_safe():
    assert dual_generator_name("x^2*y") == "dual_x_2_y"
    assert dual_generator_name("t") == "dual_t"


def test_atiyah_dual_is_a_polynomial_line():
    f = koszul_dual(catalog.atiyah_minimal_model(), 8, None)
    assert set(f.quiver.arrows) == {"dual_t"}
    a = f.quiver.arrows["dual_t"]
    assert (a.src, a.tgt, a.degree, a.weight) == ("*", "*", -2, 4)
    assert f.diff == {}
    assert f.check_dsquare() == []
    coh = cohomology(DgaSlices(f, -5, 1, 8))
    assert dims_by_key(coh, -4, 0) == {(0, 0): 1, (-2, 4): 1, (-4, 8): 1}


def test_laufer_dual_matches_fixture_exactly():
    f = koszul_dual(catalog.laufer_minimal_model(), 8, None)
    assert f.check_dsquare() == []
    table = {
        "dual_f": ("x", 1),
        "dual_g": ("y", 1),
        "dual_gf": ("zeta", 1),
        "dual_f2": ("xi", 1),
        "dual_gf2": ("theta", 1),
    }
    assert_scaled_match(f, catalog.laufer_dual_dga(), table)


@pytest.mark.parametrize("n", [2, 3])
def test_pagoda_dual_matches_fixture_up_to_scaling(n):
    f = koszul_dual(catalog.pagoda_minimal_model(n), 2 * n + 2, None)
    assert f.check_dsquare() == []
    bidegrees = {
        (a.degree, a.weight) for a in f.quiver.arrows.values()
    }
    assert bidegrees == {(0, 2), (-1, 2 * n), (-2, 2 * n + 2)}
    # literal differentials in the dual generators
    x = NcPoly.generator(f.quiver, "dual_x")
    xn = x
    for _ in range(n - 1):
        xn = xn * x
    assert f.d_of_generator("dual_y") == xn.scale(-((-1) ** n))
    y = NcPoly.generator(f.quiver, "dual_y")
    assert f.d_of_generator("dual_z") == y * x - x * y
    # the catalogued fixture differs by the declared generator rescale
    table = {
        "dual_x": ("xi", 1),
        "dual_y": ("zeta", -((-1) ** n)),
        "dual_z": ("theta", (-1) ** n),
    }
    assert_scaled_match(f, catalog.pagoda_dual_dga(n), table)


def test_dual_dga_json_round_trip():
    f = koszul_dual(catalog.laufer_minimal_model(), 8, None)
    g = dga_from_json(dga_to_json(f))
    assert set(g.quiver.arrows) == set(f.quiver.arrows)
    for name, a in f.quiver.arrows.items():
        b = g.quiver.arrows[name]
        assert (a.src, a.tgt, a.weight, a.degree) == (b.src, b.tgt, b.weight, b.degree)
        assert g.d_of_generator(name) == f.d_of_generator(name)


# -- dual cohomology windows -------------------------------------------------


@pytest.mark.parametrize("n", [2, 3])
def test_pagoda_dual_cohomology_window(n):
    f = koszul_dual(catalog.pagoda_minimal_model(n), 6 * n, None)
    coh = cohomology(DgaSlices(f, -6, 1, 6 * n))
    want = {(0, 2 * a): 1 for a in range(n)}
    want.update({(-2, 4 * n + 2 * a): 1 for a in range(n)})
    assert dims_by_key(coh, -4, 0) == want


@pytest.mark.parametrize("n", [2, 3])
def test_pagoda_dual_matches_commutator_quotient(n):
    # killing [xi, zeta] and dropping theta is a quasi-isomorphism
    f = koszul_dual(catalog.pagoda_minimal_model(n), 6 * n, None)
    free = cohomology(DgaSlices(f, -6, 1, 6 * n))
    quot = cohomology(DgaSlices(catalog.pagoda_oracle_dga(n), -6, 1, 6 * n))
    assert dims_by_key(free, -4, 0) == dims_by_key(quot, -4, 0)


def test_surface_dual_n1_is_free_on_one_odd_generator():
    f = koszul_dual(catalog.surface_minimal_model(1, 6), 12, None)
    assert set(f.quiver.arrows) == {"dual_e"}
    a = f.quiver.arrows["dual_e"]
    assert (a.degree, a.weight) == (-1, 2)
    assert f.diff == {}
    coh = cohomology(DgaSlices(f, -7, 1, 12))
    assert dims_by_key(coh, -6, 0) == {(-k, 2 * k): 1 for k in range(7)}


@pytest.mark.parametrize("n,w_max", [(2, 12), (3, 14)])
def test_surface_dual_cohomology_window(n, w_max):
    f = koszul_dual(catalog.surface_minimal_model(n, 13), w_max, None)
    assert f.check_dsquare() == []
    coh = cohomology(DgaSlices(f, -7, 1, w_max))
    # classes eta^a zeta^b, b <= 1, with eta = [dual y] and zeta = [dual x]
    want = {}
    for a in range(w_max):
        for b in (0, 1):
            deg, wt = -(2 * a + b), a * (2 * n + 2) + b * 2 * n
            if wt <= w_max and -deg <= 6:
                want[(deg, wt)] = 1
    assert dims_by_key(coh, -6, 0) == want


# -- double dual -------------------------------------------------------------


def test_double_dual_recovers_atiyah():
    rep = double_dual_h0(catalog.atiyah_minimal_model(), 12)
    assert rep["match"] is True
    assert rep["model_dims"] == {0: 1, 4: 1}
    assert rep["double_dual_dims"] == {0: 1, 4: 1}
    assert rep["dual_h0_dims"] == {0: 1}


def test_double_dual_recovers_pagoda2():
    rep = double_dual_h0(catalog.pagoda_minimal_model(2), 12)
    assert rep["match"] is True
    assert rep["model_dims"] == {0: 1, 2: 1, 4: 1, 6: 1}
    assert rep["double_dual_dims"] == {0: 1, 2: 1, 4: 1, 6: 1}
    assert rep["dual_h0_dims"] == {0: 1, 2: 1}


def test_double_dual_detects_dropped_square():
    # removing m_2(x, x) = y from the pagoda n = 2 model leaves a valid
    # algebra whose own double dual still closes up, but the degree-zero
    # row of the dual diverges from the true one first at weight 4 = 2n
    full = double_dual_h0(catalog.pagoda_minimal_model(2), 12)
    m = catalog.pagoda_minimal_model(2)
    m2 = dict(m.tables[2])
    del m2[(1, 1)]
    trunc = AInfinityAlgebra(m.labels, m.keys, m.units, {2: m2})
    rep = double_dual_h0(trunc, 12)
    assert rep["match"] is True
    diverge = [
        w
        for w in range(13)
        if full["dual_h0_dims"].get(w, 0) != rep["dual_h0_dims"].get(w, 0)
    ]
    assert diverge and diverge[0] == 4


# -- error cases -------------------------------------------------------------


def test_koszul_dual_rejects_positive_weights():
    m = AInfinityAlgebra(
        ["1", "a"], [("*", "*", 0, 0), ("*", "*", 1, 2)], {"*": 0}, {}
    )
    with pytest.raises(ValueError, match="nonpositive dual weight"):
        koszul_dual(m, 10, None)


def test_koszul_dual_window_error_on_missing_factor():
    labels = ["1", "p", "q", "r"]
    keys = [("*", "*", 0, 0), ("*", "*", 3, -2), ("*", "*", -2, -4), ("*", "*", 1, -6)]
    m2 = {}
    for j in range(4):
        m2[(0, j)] = {j: 1}
        if j:
            m2[(j, 0)] = {j: 1}
    m2[(1, 2)] = {3: 1}
    m = AInfinityAlgebra(labels, keys, {"*": 0}, {2: m2})
    # d_min drops dual p (degree -2) but keeps dual r, whose differential
    # needs it
    with pytest.raises(WindowError):
        koszul_dual(m, 6, -1)
    assert koszul_dual(m, 6, None).check_dsquare() == []


def test_koszul_dual_arity_guard():
    la = catalog.laufer_minimal_model()
    with pytest.raises(ValueError, match="arity table exhausted"):
        koszul_dual(la, 8, None, arity_limit=2)
    f = koszul_dual(la, 8, None, arity_limit=4)
    assert f.d_of_generator("dual_f2") == koszul_dual(la, 8, None).d_of_generator("dual_f2")
