"""Worked examples: four flop/surface families with their quiver algebras,
projective resolutions of the vertex-2 simple, the explicit chain maps used
in the cohomology computations, and dual dga presentations."""

from fractions import Fraction

from .ainf import AInfinityAlgebra
from .complexes import ChainMap, ProjComplex
from .dgcore import DgaPresentation, FreeDga
from .ginzburg import PotentialedQuiver
from .ncalg import Arrow, CyclicWord, NcPoly, Quiver, Superpotential, parse_poly
from .presented import PresentedAlgebra


def _pw(quiver, name, k, vertex):
    # name^k as a path, with the zeroth power the idempotent at vertex.
    if k == 0:
        return NcPoly.idempotent(quiver, vertex)
    g = NcPoly.generator(quiver, name)
    p = g
    for _ in range(k - 1):
        p = p * g
    return p


def _ppow(p, k, idem):
    if k == 0:
        return idem
    q = p
    for _ in range(k - 1):
        q = q * p
    return q


def atiyah_algebra() -> PresentedAlgebra:
    q = Quiver(
        ("1", "2"),
        (
            Arrow("a", "1", "2", 1),
            Arrow("b", "1", "2", 1),
            Arrow("s", "2", "1", 1),
            Arrow("t", "2", "1", 1),
        ),
    )
    rels = tuple(
        parse_poly(q, text)
        for text in (
            "a*s*b - b*s*a",
            "s*b*t - t*b*s",
            "a*t*b - b*t*a",
            "s*a*t - t*a*s",
        )
    )
    return PresentedAlgebra(q, rels)


def atiyah_resolution(alg: PresentedAlgebra | None = None) -> ProjComplex:
    alg = atiyah_algebra() if alg is None else alg
    q = alg.quiver

    def p(text):
        return parse_poly(q, text)

    terms = (
        (("2", 0),),
        (("1", 1), ("1", 1)),
        (("1", 3), ("1", 3)),
        (("2", 4),),
    )
    d0 = ((p("s"), p("t")),)
    d1 = ((p("b*t"), p("a*t")), (p("-b*s"), p("-a*s")))
    d2 = ((p("a"),), (p("-b"),))
    return ProjComplex(alg, terms, (d0, d1, d2))


def atiyah_dual_dga() -> FreeDga:
    # Free on the dual of the degree-3, weight -4 generator; zero differential.
    q = Quiver(("0",), (Arrow("eta", "0", "0", 4, -2),))
    return FreeDga(q, {})


def pagoda_algebra(n: int) -> PresentedAlgebra:
    if n < 2:
        raise ValueError("pagoda family needs n >= 2")
    q = Quiver(
        ("1", "2"),
        (
            Arrow("l", "1", "1", 2),
            Arrow("m", "2", "2", 2),
            Arrow("a", "1", "2", n),
            Arrow("b", "1", "2", n),
            Arrow("s", "2", "1", n),
            Arrow("t", "2", "1", n),
        ),
    )
    rels = tuple(
        parse_poly(q, text)
        for text in (
            "l*a - a*m",
            "l*b - b*m",
            "s*l - m*s",
            "t*l - m*t",
            "a*s - b*t - 2*l^%d" % n,
            "s*a - t*b - 2*m^%d" % n,
        )
    )
    return PresentedAlgebra(q, rels)


def pagoda_resolution(n: int, alg: PresentedAlgebra | None = None) -> ProjComplex:
    alg = pagoda_algebra(n) if alg is None else alg
    q = alg.quiver

    def p(text):
        return parse_poly(q, text)

    z1 = NcPoly.zero(q)
    terms = (
        (("2", 0),),
        (("2", 2), ("1", n), ("1", n)),
        (("1", n + 2), ("1", n + 2), ("2", 2 * n)),
        (("2", 2 * n + 2),),
    )
    d0 = ((p("m"), p("s"), p("t")),)
    d1 = (
        (p("s"), p("t"), p("2*m^%d" % (n - 1))),
        (p("-l"), z1, p("-a")),
        (z1, p("-l"), p("b")),
    )
    d2 = ((p("-a"),), (p("b"),), (p("m"),))
    return ProjComplex(alg, terms, (d0, d1, d2))


def pagoda_f1(c: ProjComplex) -> ChainMap:
    # Degree 1, weight -2 cocycle spanning Ext^1.
    q = c.alg.quiver
    n = c.term(1)[1][1]
    z = NcPoly.zero(q)
    e1 = NcPoly.idempotent(q, "1")
    e2 = NcPoly.idempotent(q, "2")
    mid = _pw(q, "m", n - 2, "2").scale(-2)
    comps = {
        0: ((e2, z, z),),
        1: ((z, z, mid), (e1.scale(-1), z, z), (z, e1.scale(-1), z)),
        2: ((z,), (z,), (e2,)),
    }
    return ChainMap(c, 1, -2, comps)


def pagoda_f2(c: ProjComplex) -> ChainMap:
    # Degree 2, weight -2n cocycle spanning Ext^2.
    q = c.alg.quiver
    n = c.term(1)[1][1]
    z = NcPoly.zero(q)
    e2 = NcPoly.idempotent(q, "2")
    comps = {0: ((z, z, e2),), 1: ((e2,), (z,), (z,))}
    return ChainMap(c, 2, -2 * n, comps)


def pagoda_h(c: ProjComplex, r: int) -> ChainMap:
    # Degree 1, weight 2-2r map with dh_{r+1} = -2 m^{n-r} f2, for 0 <= r <= n.
    q = c.alg.quiver
    n = c.term(1)[1][1]
    if not 0 <= r <= n:
        raise ValueError("h_r defined for 0 <= r <= n")
    z = NcPoly.zero(q)
    top = _pw(q, "m", n - r, "2").scale(-2)
    comps = {1: ((z, z, top), (z, z, z), (z, z, z))}
    return ChainMap(c, 1, 2 - 2 * r, comps)


def pagoda_dual_dga(n: int) -> FreeDga:
    q = Quiver(
        ("0",),
        (
            Arrow("xi", "0", "0", 2, 0),
            Arrow("zeta", "0", "0", 2 * n, -1),
            Arrow("theta", "0", "0", 2 * n + 2, -2),
        ),
    )
    return FreeDga(
        q,
        {
            "zeta": _pw(q, "xi", n, "0"),
            "theta": parse_poly(q, "xi*zeta - zeta*xi"),
        },
    )


def pagoda_oracle_dga(n: int) -> DgaPresentation:
    # The quotient of the dual by the dg ideal generated by theta.
    q = Quiver(
        ("0",),
        (Arrow("xi", "0", "0", 2, 0), Arrow("zeta", "0", "0", 2 * n, -1)),
    )
    free = FreeDga(q, {"zeta": _pw(q, "xi", n, "0")})
    return DgaPresentation(free, [parse_poly(q, "xi*zeta - zeta*xi")])


def laufer_algebra() -> PresentedAlgebra:
    q = Quiver(
        ("1", "2"),
        (
            Arrow("a", "1", "2", 2),
            Arrow("b", "2", "1", 2),
            Arrow("x", "2", "2", 3),
            Arrow("y", "2", "2", 2),
        ),
    )
    rels = tuple(
        parse_poly(q, text)
        for text in (
            "a*y*y + a*b*a",
            "y*y*b + b*a*b",
            "x*y + y*x",
            "x*x + y*b*a + b*a*y - y^3",
        )
    )
    return PresentedAlgebra(q, rels)


def laufer_resolution(alg: PresentedAlgebra | None = None) -> ProjComplex:
    alg = laufer_algebra() if alg is None else alg
    q = alg.quiver

    def p(text):
        return parse_poly(q, text)

    z = NcPoly.zero(q)
    terms = (
        (("2", 0),),
        (("1", 2), ("2", 3), ("2", 2)),
        (("2", 5), ("1", 6), ("2", 6)),
        (("2", 8),),
    )
    d0 = ((p("b"), p("x"), p("y")),)
    d1 = (
        (z, p("a*b"), p("a*y")),
        (p("y"), z, p("x")),
        (p("x"), p("y*b"), p("b*a - y^2")),
    )
    d2 = ((p("x"),), (p("a"),), (p("y"),))
    return ProjComplex(alg, terms, (d0, d1, d2))


def laufer_dual_dga() -> FreeDga:
    q = Quiver(
        ("0",),
        (
            Arrow("x", "0", "0", 3, 0),
            Arrow("y", "0", "0", 2, 0),
            Arrow("zeta", "0", "0", 5, -1),
            Arrow("xi", "0", "0", 6, -1),
            Arrow("theta", "0", "0", 8, -2),
        ),
    )
    return FreeDga(
        q,
        {
            "zeta": parse_poly(q, "-x*y - y*x"),
            "xi": parse_poly(q, "y^3 - x^2"),
            "theta": parse_poly(q, "xi*y - y*xi + zeta*x - x*zeta"),
        },
    )


def surface_algebra(n: int) -> PresentedAlgebra:
    if n < 1:
        raise ValueError("surface family needs n >= 1")
    q = Quiver(
        ("1", "2"),
        (
            Arrow("a", "1", "2", n),
            Arrow("b", "1", "2", 1),
            Arrow("s", "2", "1", 1),
            Arrow("t", "2", "1", n),
        ),
    )
    a, b, s, t = (NcPoly.generator(q, x) for x in "abst")
    beta_n = _ppow(b * s, n, None)
    sigma_n = _ppow(s * b, n, None)
    rels = (
        a * s * b - b * s * a,
        s * b * t - t * b * s,
        a * t - beta_n,
        t * a - sigma_n,
    )
    return PresentedAlgebra(q, rels)


def surface_resolution(n: int, alg: PresentedAlgebra | None = None) -> ProjComplex:
    alg = surface_algebra(n) if alg is None else alg
    q = alg.quiver
    a, b, s, t = (NcPoly.generator(q, x) for x in "abst")
    e1 = NcPoly.idempotent(q, "1")
    e2 = NcPoly.idempotent(q, "2")
    beta = b * s
    sigma = s * b
    terms = (
        (("2", 0),),
        (("1", 1), ("1", n)),
        (("1", n + 2), ("2", 2 * n)),
        (("1", 3 * n), ("2", 2 * n + 2)),
    )
    d0 = ((s, t),)
    d1 = (
        (b * t, _ppow(beta, n - 1, e1) * b),
        (beta.scale(-1), a.scale(-1)),
    )
    m_even = (
        (_ppow(beta, n - 1, e1).scale(-1), a),
        (t, sigma.scale(-1)),
    )
    m_odd = (
        (beta, a),
        (t, _ppow(sigma, n - 1, e2)),
    )
    return ProjComplex(
        alg, terms, (d0, d1), periodic_tail=(2, (m_even, m_odd), 2 * n)
    )


def surface_g(c: ProjComplex, n: int, j: int, top: int) -> ChainMap:
    # The eventually periodic cocycle lifting the projection in degree j >= 2;
    # odd j needs n >= 2.  Classes [g_2], [g_3] generate the Ext algebra.
    q = c.alg.quiver
    b = NcPoly.generator(q, "b")
    z = NcPoly.zero(q)
    e1 = NcPoly.idempotent(q, "1")
    e2 = NcPoly.idempotent(q, "2")
    if j < 2:
        raise ValueError("eventually periodic maps start in degree 2")
    comps: dict[int, tuple] = {0: ((z, e2.scale(-1)),)}
    if j % 2 == 0:
        weight = -n * j
        comps[1] = ((z, b), (e1.scale(-1), z))
        even = ((e1, z), (z, e2))
        odd = even
    else:
        if n < 2:
            raise ValueError("odd eventually periodic generators need n >= 2")
        beta = NcPoly.generator(q, "b") * NcPoly.generator(q, "s")
        sigma = NcPoly.generator(q, "s") * NcPoly.generator(q, "b")
        weight = -n * j + n - 2
        comps[1] = ((z, _ppow(beta, n - 2, e1) * b), (e1, z))
        even = ((_ppow(beta, n - 2, e1).scale(-1), z), (z, e2))
        odd = ((e1.scale(-1), z), (z, _ppow(sigma, n - 2, e2)))
    for i in range(2, top + 1):
        comps[i] = even if i % 2 == 0 else odd
    return ChainMap(c, j, weight, comps, top=top)


def surface_nu(c: ProjComplex, n: int, i: int, top: int) -> ChainMap:
    # Degree 2i-1, weight 2(n+1)(1-i) homotopy with
    # d(nu_i) = diag(beta^{n-i+1}, sigma^{n-i+1}) on every slot; nu_3 bounds
    # the square of the degree-3 generator.  Defined for 2 <= i <= n.
    if not 2 <= i <= n:
        raise ValueError("nu_i defined for 2 <= i <= n")
    q = c.alg.quiver
    b = NcPoly.generator(q, "b")
    s = NcPoly.generator(q, "s")
    z = NcPoly.zero(q)
    e1 = NcPoly.idempotent(q, "1")
    e2 = NcPoly.idempotent(q, "2")
    beta = b * s
    sigma = s * b
    comps: dict[int, tuple] = {
        1: ((z, (_ppow(beta, n - i, e1) * b).scale(-1)), (z, z)),
    }
    even = ((_ppow(beta, n - i, e1), z), (z, z))
    odd = ((z, z), (z, _ppow(sigma, n - i, e2).scale(-1)))
    for k in range(2, top + 1):
        comps[k] = even if k % 2 == 0 else odd
    return ChainMap(c, 2 * i - 1, 2 * (n + 1) * (1 - i), comps, top=top)


# -- minimal A-infinity models ----------------------------------------------


def _unit_rows(dim: int, unit: int) -> dict:
    rows = {(unit, unit): {unit: 1}}
    for i in range(dim):
        if i == unit:
            continue
        rows[(unit, i)] = {i: 1}
        rows[(i, unit)] = {i: 1}
    return rows


def atiyah_minimal_model() -> AInfinityAlgebra:
    # Ext of the rigid simple: the unit and the top class, nothing in between.
    labels = ["1", "t"]
    keys = [("*", "*", 0, 0), ("*", "*", 3, -4)]
    return AInfinityAlgebra(labels, keys, {"*": 0}, {2: _unit_rows(2, 0)})


def pagoda_minimal_model(n: int) -> AInfinityAlgebra:
    """Ext model of the pagoda vertex simple, structure constants rescaled
    to 1: x y = y x = z and the single higher family m_n(x, ..., x) = y
    (for n = 2 that family is the ordinary square x^2 = y)."""
    if n < 2:
        raise ValueError("pagoda needs n >= 2")
    labels = ["1", "x", "y", "z"]
    keys = [
        ("*", "*", 0, 0),
        ("*", "*", 1, -2),
        ("*", "*", 2, -2 * n),
        ("*", "*", 3, -2 * n - 2),
    ]
    m2 = _unit_rows(4, 0)
    m2[(1, 2)] = {3: 1}
    m2[(2, 1)] = {3: 1}
    tables = {2: m2}
    tables.setdefault(n, {})[(1,) * n] = {2: 1}
    return AInfinityAlgebra(labels, keys, {"*": 0}, tables)


def laufer_minimal_model() -> AInfinityAlgebra:
    """Ext model of the Laufer vertex simple: k[g]<f>/(g^2, fg - gf, f^3)
    in degree 1 classes g, f plus the single triple product m_3(g, g, g) = f^2."""
    labels = ["1", "f", "g", "f2", "gf", "gf2"]
    keys = [
        ("*", "*", 0, 0),
        ("*", "*", 1, -3),
        ("*", "*", 1, -2),
        ("*", "*", 2, -6),
        ("*", "*", 2, -5),
        ("*", "*", 3, -8),
    ]
    m2 = _unit_rows(6, 0)
    m2[(1, 1)] = {3: 1}
    m2[(1, 2)] = {4: 1}
    m2[(2, 1)] = {4: 1}
    m2[(2, 3)] = {5: 1}
    m2[(3, 2)] = {5: 1}
    m2[(1, 4)] = {5: 1}
    m2[(4, 1)] = {5: 1}
    return AInfinityAlgebra(labels, keys, {"*": 0}, {2: m2, 3: {(2, 2, 2): {3: 1}}})


def surface_minimal_model(n: int, deg_max: int) -> AInfinityAlgebra:
    """Ext model of the surface-slice vertex simple, truncated at deg_max.

    n = 1 is the unit plus one degree-2 class; n = 2 the formal ring
    k[x]<y>/(xy - yx, y^2 - x^3); n >= 3 kills y^2 and carries the single
    higher family m_n(x^{a_1} y, ..., x^{a_n} y) = (-1)^n x^{n+1+sum a}.
    """
    if n < 1:
        raise ValueError("surface slices need n >= 1")
    if n == 1:
        labels = ["1", "e"]
        keys = [("*", "*", 0, 0), ("*", "*", 2, -2)]
        return AInfinityAlgebra(labels, keys, {"*": 0}, {2: _unit_rows(2, 0)})
    labels = ["1"]
    keys = [("*", "*", 0, 0)]
    xs: dict[int, int] = {}
    ys: dict[int, int] = {}
    for a in range(1, deg_max // 2 + 1):
        if 2 * a <= deg_max:
            xs[a] = len(labels)
            labels.append("x" if a == 1 else f"x^{a}")
            keys.append(("*", "*", 2 * a, -2 * n * a))
    for a in range(0, deg_max):
        if 2 * a + 3 <= deg_max:
            ys[a] = len(labels)
            labels.append("y" if a == 0 else ("x*y" if a == 1 else f"x^{a}*y"))
            keys.append(("*", "*", 2 * a + 3, -2 * n * a - 2 * (n + 1)))
    m2 = _unit_rows(len(labels), 0)
    for a, i in xs.items():
        for b, j in xs.items():
            if a + b in xs:
                m2[(i, j)] = {xs[a + b]: 1}
        for b, j in ys.items():
            if a + b in ys:
                m2[(i, j)] = {ys[a + b]: 1}
                m2[(j, i)] = {ys[a + b]: 1}
    if n == 2:
        for a, i in ys.items():
            for b, j in ys.items():
                if a + b + 3 in xs:
                    m2[(i, j)] = {xs[a + b + 3]: 1}
    tables: dict[int, dict] = {2: m2}
    if n >= 3:
        mn: dict = {}
        sign = (-1) ** n
        for combo in _tuples(sorted(ys), n):
            out = n + 1 + sum(combo)
            if out in xs:
                mn[tuple(ys[a] for a in combo)] = {xs[out]: sign}
        if mn:
            tables[n] = mn
    return AInfinityAlgebra(labels, keys, {"*": 0}, tables)


def _tuples(pool, r):
    if r == 0:
        yield ()
        return
    for head in pool:
        for rest in _tuples(pool, r - 1):
            yield (head,) + rest


def catalan_minimal_model(n: int, n_max: int, w_cap: int) -> AInfinityAlgebra:
    """Minimal model of the one-loop dga k[xi]<zeta> / ([xi, zeta]),
    d zeta = xi^n, computed by the transfer recursion directly on monomials
    zeta^b xi^a with the closed-form contraction (sigma the monomial section,
    h the zeta-shift  zeta^{2i} xi^a -> zeta^{2i+1} xi^{a-n},  dead for a < n
    or odd zeta-power).  Entirely independent of the slice engine, which is
    cross-checked against this table.
    """
    if n < 2:
        raise ValueError("the loop dga needs n >= 2")
    basis = []
    for i in range(0, w_cap // (4 * n) + 1):
        for j in range(0, n):
            if 4 * n * i + 2 * j <= w_cap:
                basis.append((i, j))
    basis.sort(key=lambda ij: (-2 * ij[0], 4 * n * ij[0] + 2 * ij[1]))
    index = {ij: k for k, ij in enumerate(basis)}
    labels = []
    for i, j in basis:
        parts = []
        if i:
            parts.append("eta" if i == 1 else f"eta^{i}")
        if j:
            parts.append("xi" if j == 1 else f"xi^{j}")
        labels.append("*".join(parts) if parts else "1")
    keys = [("0", "0", -2 * i, 4 * n * i + 2 * j) for i, j in basis]
    unit = index[(0, 0)]

    def wt(ij):
        return 4 * n * ij[0] + 2 * ij[1]

    def value(leaves):
        # (xi-exponent, zeta-exponent) per monomial; every class is even, so
        # the Koszul factors of the recursion are trivial here
        mono = [(j, 2 * i) for i, j in leaves]
        r = len(mono)
        hmemo: dict = {}
        lmemo: dict = {}

        def hlam(i, k):
            if k - i == 1:
                a, b = mono[i]
                return (a, b, -1)
            if (i, k) not in hmemo:
                v = lam(i, k)
                if v is None or v[1] % 2 or v[0] < n:
                    hmemo[(i, k)] = None
                else:
                    hmemo[(i, k)] = (v[0] - n, v[1] + 1, v[2])
            return hmemo[(i, k)]

        def lam(i, k):
            if (i, k) not in lmemo:
                acc = None
                for m in range(i + 1, k):
                    left = hlam(i, m)
                    right = hlam(m, k)
                    if left is None or right is None:
                        continue
                    c = left[2] * right[2]
                    if (m - i) % 2 == 0:
                        c = -c
                    term = (left[0] + right[0], left[1] + right[1], c)
                    if acc is None:
                        acc = term
                    elif acc[:2] != term[:2]:
                        raise AssertionError("inhomogeneous recursion value")
                    else:
                        acc = (acc[0], acc[1], acc[2] + term[2])
                if acc is not None and acc[2] == 0:
                    acc = None
                lmemo[(i, k)] = acc
            return lmemo[(i, k)]

        top = lam(0, r)
        if top is None:
            return None
        a, b, c = top
        if b % 2 or a >= n:
            return None
        return (b // 2, a, c)

    nonunit = [ij for ij in basis if ij != (0, 0)]
    wmin = min(wt(ij) for ij in nonunit)
    tables: dict[int, dict] = {2: _unit_rows(len(basis), unit)}

    def extend(r, prefix, wsum, tab):
        if len(prefix) == r:
            got = value(prefix)
            if got is not None and (got[0], got[1]) in index:
                tab[tuple(index[ij] for ij in prefix)] = {index[(got[0], got[1])]: got[2]}
            return
        rem = r - len(prefix) - 1
        for ij in nonunit:
            w2 = wsum + wt(ij)
            if w2 + rem * wmin <= w_cap:
                extend(r, prefix + (ij,), w2, tab)

    for r in range(2, n_max + 1):
        tab: dict = {}
        extend(r, (), 0, tab)
        if r == 2:
            tables[2].update(tab)
        elif tab:
            tables[r] = tab
    return AInfinityAlgebra(labels, keys, {"0": unit}, tables)


def laufer_potential() -> PotentialedQuiver:
    # W = x^2 y - 1/4 y^4 on one vertex, x of weight 3 and y of weight 2
    quiver = Quiver(("0",), (Arrow("x", "0", "0", 3), Arrow("y", "0", "0", 2)))
    pot = Superpotential(
        quiver,
        {
            CyclicWord(quiver, ("x", "x", "y")): Fraction(1),
            CyclicWord(quiver, ("y", "y", "y", "y")): Fraction(-1, 4),
        },
    )
    return PotentialedQuiver(quiver, pot)


def laufer_ginzburg_map() -> dict[str, tuple[str, Fraction]]:
    # dga isomorphism ginzburg_dga(laufer_potential()) -> laufer_dual_dga,
    # generator g -> scale * image: the loops match on the nose, theta = -z
    return {
        "x": ("x", Fraction(1)),
        "y": ("y", Fraction(1)),
        "x_star": ("zeta", Fraction(1)),
        "y_star": ("xi", Fraction(1)),
        "z_0": ("theta", Fraction(-1)),
    }


def pagoda_potential(n: int) -> PotentialedQuiver:
    # W = (2/(n+1)) m^{n+1} on a single loop of weight 2
    if n < 2:
        raise ValueError("pagoda needs n >= 2")
    quiver = Quiver(("0",), (Arrow("m", "0", "0", 2),))
    pot = Superpotential(
        quiver, {CyclicWord(quiver, ("m",) * (n + 1)): Fraction(2, n + 1)}
    )
    return PotentialedQuiver(quiver, pot)


def pagoda_ginzburg_map() -> dict[str, tuple[str, Fraction]]:
    # dga isomorphism ginzburg_dga(pagoda_potential(n)) -> pagoda_dual_dga(n):
    # xi = m, zeta = -1/2 m*, theta = -1/2 z
    return {
        "m": ("xi", Fraction(1)),
        "m_star": ("zeta", Fraction(-2)),
        "z_0": ("theta", Fraction(-2)),
    }
