"""Shared helpers: dimension tables and scaled dga isomorphism checks."""

from fractions import Fraction

from dercon.ncalg import NcPoly, Word


def dims_by_key(coh, d_lo, d_hi):
    out = {}
    for src, tgt, deg, wt in coh.nonzero_keys():
        if d_lo <= deg <= d_hi:
            out[(deg, wt)] = out.get((deg, wt), 0) + coh.dim((src, tgt, deg, wt))
    return out


def assert_scaled_match(free, target, table):
    # table: generator -> (target generator, nonzero scale); checks that
    # g -> c g' is a dga isomorphism onto the target fixture
    assert set(table) == set(free.quiver.arrows)
    assert set(t for t, _ in table.values()) == set(target.quiver.arrows)
    vmap = {}
    for name, (tname, _) in table.items():
        a, b = free.quiver.arrows[name], target.quiver.arrows[tname]
        assert (a.weight, a.degree) == (b.weight, b.degree)
        for u, v in ((a.src, b.src), (a.tgt, b.tgt)):
            assert vmap.setdefault(u, v) == v
    for name, (tname, c) in table.items():
        image = NcPoly.zero(target.quiver)
        for w, coeff in free.d_of_generator(name).terms.items():
            scale = Fraction(coeff)
            for f in w.arrows:
                scale *= table[f][1]
            tw = Word(target.quiver, tuple(table[f][0] for f in w.arrows))
            image = image + NcPoly.from_word(tw, scale)
        assert image == target.d_of_generator(tname).scale(c)
