"""Minimal A-infinity models: homotopy transfer, Stasheff checks, Massey products."""

from __future__ import annotations

from fractions import Fraction

from .dgcore import CohomologyAlgebra, cohomology
from .exactlin import SparseMatrix, format_rational, parse_rational, rref

Key = tuple[str, str, int, int]

ZERO = Fraction(0)
ONE = Fraction(1)


class AInfinityAlgebra:
    """Strictly unital minimal A-infinity structure on a bigraded basis.

    tables[n] maps an n-tuple of basis indices to {output index: coefficient};
    m_1 = 0 is implicit.  With adams set every operation conserves weight, and
    keys carry (src, tgt, degree, weight) so inputs must compose in the quiver.
    """

    def __init__(self, labels, keys, units, tables, adams: bool = True):
        self.labels = list(labels)
        self.keys: list[Key] = [tuple(k) for k in keys]
        if len(self.labels) != len(self.keys):
            raise ValueError("labels and keys disagree")
        self.units = dict(units)
        self.adams = adams
        self.tables: dict[int, dict[tuple[int, ...], dict[int, Fraction]]] = {}
        for n in sorted(tables):
            if n < 2:
                raise ValueError("a minimal model has no m_1 table")
            clean: dict[tuple[int, ...], dict[int, Fraction]] = {}
            for inputs, outs in tables[n].items():
                inputs = tuple(inputs)
                if len(inputs) != n:
                    raise ValueError("arity mismatch in table")
                pairs = outs.items() if isinstance(outs, dict) else outs
                entry = {j: Fraction(c) for j, c in pairs if c}
                if not entry:
                    continue
                self._check_entry(n, inputs, entry)
                clean[inputs] = entry
            if clean:
                self.tables[n] = clean
        for v, i in self.units.items():
            s, t, d, w = self.keys[i]
            if s != v or t != v or d != 0 or w != 0:
                raise ValueError(f"unit of {v} must sit at ({v}, {v}, 0, 0)")

    def _check_entry(self, n, inputs, outs):
        for i, j in zip(inputs, inputs[1:]):
            if self.keys[i][1] != self.keys[j][0]:
                raise ValueError("operation inputs do not compose")
        src = self.keys[inputs[0]][0]
        tgt = self.keys[inputs[-1]][1]
        deg = sum(self.keys[i][2] for i in inputs) + 2 - n
        wt = sum(self.keys[i][3] for i in inputs)
        for j in outs:
            ks, kt, kd, kw = self.keys[j]
            if (ks, kt, kd) != (src, tgt, deg):
                raise ValueError(f"output {self.labels[j]} sits in the wrong slot")
            if self.adams and kw != wt:
                raise ValueError(f"operation breaks the weight grading at {self.labels[j]}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def degree(self, i: int) -> int:
        return self.keys[i][2]

    def weight(self, i: int) -> int:
        return self.keys[i][3]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def m(self, inputs) -> dict[int, Fraction]:
        inputs = tuple(inputs)
        return self.tables.get(len(inputs), {}).get(inputs, {})

    def arities(self) -> list[int]:
        return sorted(self.tables)


def model_to_json(a: AInfinityAlgebra) -> dict:
    """Canonical JSON form: basis rows, units, then sorted operation rows."""
    return {
        "basis": [
            {"label": l, "src": k[0], "tgt": k[1], "degree": k[2], "weight": k[3]}
            for l, k in zip(a.labels, a.keys)
        ],
        "units": {v: a.units[v] for v in sorted(a.units)},
        "adams": a.adams,
        "operations": [
            {"n": n, "inputs": list(inputs), "output": j, "coeff": format_rational(c)}
            for n in sorted(a.tables)
            for inputs in sorted(a.tables[n])
            for j, c in sorted(a.tables[n][inputs].items())
        ],
    }


def model_from_json(data: dict) -> AInfinityAlgebra:
    labels = [row["label"] for row in data["basis"]]
    keys = [(row["src"], row["tgt"], row["degree"], row["weight"]) for row in data["basis"]]
    tables: dict[int, dict[tuple[int, ...], dict[int, Fraction]]] = {}
    for row in data["operations"]:
        tab = tables.setdefault(row["n"], {})
        outs = tab.setdefault(tuple(row["inputs"]), {})
        outs[row["output"]] = parse_rational(row["coeff"])
    return AInfinityAlgebra(labels, keys, data.get("units", {}), tables, data.get("adams", True))


def stasheff_check(a: AInfinityAlgebra, n_max: int, w_cap: int | None = None):
    """Violations of sum (-1)^(r+st) m(1^r (x) m_s (x) 1^t) = 0 up to arity n_max.

    Returns (n, input labels, output label, coefficient) rows; empty means the
    identities hold.  With w_cap set, composites whose total weight exceeds the
    cap are skipped so windowed tables are not blamed for missing entries.
    """
    out = []
    for n in range(3, n_max + 1):
        acc: dict[tuple[tuple[int, ...], int], Fraction] = {}
        for s_in in range(2, n):
            q = n - s_in + 1
            outer = a.tables.get(q, {})
            inner = a.tables.get(s_in, {})
            if not outer or not inner:
                continue
            by_out: dict[int, list[tuple[tuple[int, ...], Fraction]]] = {}
            for i_inputs, i_outs in inner.items():
                for j, c in i_outs.items():
                    by_out.setdefault(j, []).append((i_inputs, c))
            for o_inputs, o_outs in outer.items():
                for p in range(q):
                    for i_inputs, c_i in by_out.get(o_inputs[p], ()):
                        full = o_inputs[:p] + i_inputs + o_inputs[p + 1 :]
                        if (
                            w_cap is not None
                            and a.adams
                            and sum(a.weight(i) for i in full) > w_cap
                        ):
                            continue
                        t = q - 1 - p
                        sgn = -1 if (p + s_in * t) % 2 else 1
                        pre = sum(a.degree(i) for i in o_inputs[:p])
                        if (s_in * pre) % 2:
                            sgn = -sgn
                        for j, c_o in o_outs.items():
                            slot = (full, j)
                            acc[slot] = acc.get(slot, ZERO) + sgn * c_i * c_o
        for (full, j), c in sorted(acc.items()):
            if c:
                out.append((n, tuple(a.labels[i] for i in full), a.labels[j], c))
    return out


class TransferData:
    """Deterministic contraction of a sliced dga onto its cohomology.

    sigma includes classes as the chosen representative cocycles, pi projects
    along the canonical slice splitting V = H + L + B, and h sends the
    boundary coordinates of a vector to the pivot columns of the incoming
    differential one degree down.  These satisfy pi sigma = id and
    d h + h d = id - sigma pi together with the side conditions h sigma = 0,
    pi h = 0, h h = 0.  h may be overridden per slice; verify() checks one key.
    """

    def __init__(self, coh: CohomologyAlgebra, h_override=None):
        self.coh = coh
        self.slices = coh.slices
        self.h_override: dict[Key, SparseMatrix] = dict(h_override or {})
        self._h: dict[Key, SparseMatrix] = {}

    @staticmethod
    def _down(key: Key) -> Key:
        s, t, d, w = key
        return (s, t, d - 1, w)

    @staticmethod
    def _up(key: Key) -> Key:
        s, t, d, w = key
        return (s, t, d + 1, w)

    def dim(self, key: Key) -> int:
        return self.coh.dim(key)

    def sigma(self, key: Key) -> SparseMatrix:
        dec = self.coh.decomposition(key)
        return SparseMatrix.from_columns([list(r) for r in dec.h_reps], dec.n)

    def pi(self, key: Key) -> SparseMatrix:
        dec = self.coh.decomposition(key)
        cols = []
        for j in range(dec.n):
            e = [ZERO] * dec.n
            e[j] = ONE
            cols.append(dec.project(e))
        return SparseMatrix.from_columns(cols, dec.dim)

    def h(self, key: Key) -> SparseMatrix:
        hit = self._h.get(key)
        if hit is not None:
            return hit
        hit = self.h_override.get(key)
        if hit is None:
            dec = self.coh.decomposition(key)
            down = self.slices.dim(self._down(key))
            entries: dict[tuple[int, int], Fraction] = {}
            for j in range(dec.n):
                e = [ZERO] * dec.n
                e[j] = ONE
                for k, c in enumerate(dec.b_coords(e)):
                    if c:
                        entries[(dec.b_pivots[k], j)] = c
            hit = SparseMatrix(down, dec.n, entries)
        self._h[key] = hit
        return hit

    def sigma_chain(self, cls):
        key, coords = cls
        return key, list(self.coh.decomposition(key).include(coords))

    def project_chain(self, chain):
        key, vec = chain
        return key, list(self.coh.decomposition(key).project(vec))

    def h_chain(self, chain):
        key, vec = chain
        return self._down(key), list(self.h(key).apply(vec))

    def verify(self, key: Key) -> bool:
        s = self.slices
        n = s.dim(key)
        down = self._down(key)
        d_out = s.diff_matrix(key)
        d_in = s.diff_matrix(down)
        hk = self.h(key)
        hup = self.h(self._up(key))
        sig = self.sigma(key)
        pi = self.pi(key)
        if (pi @ sig) != SparseMatrix.identity(self.dim(key)):
            return False
        if (d_in @ hk + hup @ d_out) != (SparseMatrix.identity(n) - sig @ pi):
            return False
        if not (hk @ sig).is_zero():
            return False
        if not (self.pi(down) @ hk).is_zero():
            return False
        if not (self.h(down) @ hk).is_zero():
            return False
        return True


class TransferEvaluator:
    """Evaluates transferred operations m_n = pi lambda_n (sigma x ... x sigma).

    lambda_2 is the slice product and the higher terms follow the recursion
    lambda_n = sum over s + t = n of (-1)^(s+1) lambda_2(h lambda_s (x) h lambda_t)
    with h lambda_1 = -id on representative cocycles; applying the right-hand
    factor across the first s inputs costs (-1)^((1 - t) * their total degree).
    """

    def __init__(self, transfer: TransferData):
        self.td = transfer
        self.slices = transfer.slices

    def value(self, classes):
        """(key, class coords) of m_n on a tuple of classes, or None when zero."""
        n = len(classes)
        if n < 2:
            raise ValueError("operations start at arity 2")
        leaves = [self.td.sigma_chain(c) for c in classes]
        degs = [key[2] for key, _ in leaves]
        lam_memo: dict[tuple[int, int], object] = {}
        hlam_memo: dict[tuple[int, int], object] = {}

        def hlam(i, j):
            got = hlam_memo.get((i, j), "miss")
            if got != "miss":
                return got
            if j - i == 1:
                key, vec = leaves[i]
                got = None if not any(vec) else (key, [-c for c in vec])
            else:
                v = lam(i, j)
                if v is None:
                    got = None
                else:
                    key, vec = self.td.h_chain(v)
                    got = None if not any(vec) else (key, vec)
            hlam_memo[(i, j)] = got
            return got

        def lam(i, j):
            got = lam_memo.get((i, j), "miss")
            if got != "miss":
                return got
            acc_key = None
            acc = None
            for k in range(i + 1, j):
                left = hlam(i, k)
                right = hlam(k, j)
                if left is None or right is None:
                    continue
                prod = self.slices.multiply(left[0], left[1], right[0], right[1])
                if prod is None:
                    continue
                key, vec = prod
                s_len = k - i
                t_len = j - k
                sgn = 1 if s_len % 2 else -1
                if ((1 - t_len) * sum(degs[i:k])) % 2:
                    sgn = -sgn
                if acc is None:
                    acc_key = key
                    acc = [sgn * c for c in vec]
                else:
                    if key != acc_key:
                        raise ValueError("inhomogeneous lambda value")
                    acc = [a + sgn * c for a, c in zip(acc, vec)]
            got = None if acc is None or not any(acc) else (acc_key, acc)
            lam_memo[(i, j)] = got
            return got

        top = lam(0, n)
        if top is None:
            return None
        key, coords = self.td.project_chain(top)
        if not any(coords):
            return None
        return key, coords


def merkulov_transfer(s, n_max: int, choices: TransferData | None = None, keys=None):
    """Transferred minimal model on the window's cohomology classes.

    choices may carry replacement homotopies; the default contraction comes
    from the canonical slice decompositions.  Tables record operations whose
    inputs and output are all window classes; unit-containing tuples of arity
    at least 3 vanish by the side conditions and are skipped.  Returns the
    model together with the transfer data used.
    """
    td = choices if choices is not None else TransferData(cohomology(s))
    if td.slices is not s:
        raise ValueError("transfer data was built over a different sliced dga")
    coh = td.coh
    wanted = None if keys is None else set(keys)
    base_keys = [k for k in coh.nonzero_keys() if wanted is None or k in wanted]
    base_keys.sort(key=lambda k: (k[2], k[3], k[0], k[1]))
    labels: list[str] = []
    bkeys: list[Key] = []
    key_base: dict[Key, tuple[int, int]] = {}
    for k in base_keys:
        d = coh.dim(k)
        key_base[k] = (len(labels), d)
        for i in range(d):
            labels.append(coh.rep_label(k, i))
            bkeys.append(k)
    units: dict[str, int] = {}
    for v in s.quiver.vertices:
        try:
            ukey, ucoords = coh.unit_class(v)
        except (KeyError, ValueError):
            continue
        if ukey not in key_base:
            continue
        hot = [i for i, c in enumerate(ucoords) if c]
        if len(hot) != 1 or ucoords[hot[0]] != 1:
            raise ValueError(f"unit of {v} is not a basis class")
        units[v] = key_base[ukey][0] + hot[0]

    tables: dict[int, dict[tuple[int, ...], dict[int, Fraction]]] = {2: {}}
    for a in range(len(bkeys)):
        k1 = bkeys[a]
        i1 = a - key_base[k1][0]
        for b in range(len(bkeys)):
            k2 = bkeys[b]
            if k1[1] != k2[0]:
                continue
            got = coh.product(k1, i1, k2, b - key_base[k2][0])
            if got is None or got == "truncated":
                continue
            okey, coords = got
            spot = key_base.get(okey)
            if spot is None:
                continue
            entry = {spot[0] + t: c for t, c in enumerate(coords) if c}
            if entry:
                tables[2][(a, b)] = entry

    unit_set = set(units.values())
    movers = [g for g in range(len(bkeys)) if g not in unit_set]
    by_src: dict[str, list[int]] = {}
    for g in movers:
        by_src.setdefault(bkeys[g][0], []).append(g)
    ev = TransferEvaluator(td)
    if movers:
        w_lo = getattr(s, "w_min", 0)
        w_hi = s.w_max
        wmin = min(bkeys[g][3] for g in movers)
        wmax = max(bkeys[g][3] for g in movers)
        for n in range(3, n_max + 1):
            tab: dict[tuple[int, ...], dict[int, Fraction]] = {}

            def extend(prefix, dsum, wsum):
                rem = n - len(prefix)
                if rem == 0:
                    okey = (bkeys[prefix[0]][0], bkeys[prefix[-1]][1], dsum + 2 - n, wsum)
                    spot = key_base.get(okey)
                    if spot is None:
                        return
                    classes = []
                    for g in prefix:
                        gk = bkeys[g]
                        coords = [ZERO] * key_base[gk][1]
                        coords[g - key_base[gk][0]] = ONE
                        classes.append((gk, coords))
                    got = ev.value(classes)
                    if got is None:
                        return
                    okey2, coords = got
                    if okey2 != okey:
                        raise ValueError("transferred value left its slot")
                    entry = {spot[0] + t: c for t, c in enumerate(coords) if c}
                    if entry:
                        tab[tuple(prefix)] = entry
                    return
                if wsum + rem * wmin > w_hi or wsum + rem * wmax < w_lo:
                    return
                for g in by_src.get(bkeys[prefix[-1]][1], ()):
                    prefix.append(g)
                    extend(prefix, dsum + bkeys[g][2], wsum + bkeys[g][3])
                    prefix.pop()

            for g in movers:
                extend([g], bkeys[g][2], bkeys[g][3])
            if tab:
                tables[n] = tab
    model = AInfinityAlgebra(labels, bkeys, units, tables, adams=True)
    return model, td


def _tilde(chain):
    """Sign twist a~ = (-1)^(1 + |a|) a used in defining systems."""
    key, vec = chain
    if key[2] % 2:
        return chain
    return key, [-c for c in vec]


def _mult(s, ch1, ch2):
    got = s.multiply(ch1[0], ch1[1], ch2[0], ch2[1])
    if got is None:
        raise ValueError("chains do not compose")
    return got[0], list(got[1])


def _acc(acc, chain):
    if acc is None:
        return chain
    if acc[0] != chain[0]:
        raise ValueError("summands sit in different slices")
    return acc[0], [a + b for a, b in zip(acc[1], chain[1])]


def massey_triple(s, x, y, z, transfer: TransferData | None = None):
    """Triple Massey product <x, y, z> of slice classes (key, coords).

    Returns ((key, coords), indeterminacy rows) for the canonical defining
    system, or None when [x][y] or [y][z] is a nonzero class.  The
    indeterminacy rows span x . H + H . z inside the target slot.
    """
    td = transfer if transfer is not None else TransferData(cohomology(s))
    kx, ky, kz = x[0], y[0], z[0]
    if kx[1] != ky[0] or ky[1] != kz[0]:
        raise ValueError("classes do not compose")
    ax = td.sigma_chain(x)
    ay = td.sigma_chain(y)
    az = td.sigma_chain(z)
    u = _mult(s, _tilde(ax), ay)
    if any(td.project_chain(u)[1]):
        return None
    v = _mult(s, _tilde(ay), az)
    if any(td.project_chain(v)[1]):
        return None
    uu = td.h_chain(u)
    vv = td.h_chain(v)
    val = _acc(_mult(s, _tilde(ax), vv), _mult(s, _tilde(uu), az))
    if any(s.diff_matrix(val[0]).apply(val[1])):
        raise ValueError("defining system produced a non-cocycle")
    cls = td.project_chain(val)
    slot_dim = td.dim(cls[0])
    rows = []
    right = (ky[0], kz[1], ky[2] + kz[2] - 1, ky[3] + kz[3])
    for i in range(td.dim(right)):
        rep = td.sigma_chain((right, [ONE if t == i else ZERO for t in range(td.dim(right))]))
        got = td.project_chain(_mult(s, ax, rep))[1]
        if any(got):
            rows.append(got)
    left = (kx[0], ky[1], kx[2] + ky[2] - 1, kx[3] + ky[3])
    for i in range(td.dim(left)):
        rep = td.sigma_chain((left, [ONE if t == i else ZERO for t in range(td.dim(left))]))
        got = td.project_chain(_mult(s, rep, az))[1]
        if any(got):
            rows.append(got)
    indet = []
    if rows:
        red = rref(SparseMatrix.from_rows(rows, ncols=slot_dim))
        for i in range(red.rank):
            indet.append(list(red.matrix.row(i)))
    return cls, indet


def massey_equal_inputs(s, x, r: int, system=None, transfer: TransferData | None = None):
    """r-fold Massey power <x, ..., x> via b~_1 b_(r-1) + ... + b~_(r-1) b_1.

    The stages solve d b_i = b~_1 b_(i-1) + ... + b~_(i-1) b_1 with b_1 a
    representative of x.  A supplied system (chains b_2 .. b_(r-1) as
    (key, vec) pairs) is verified stage by stage and a failure names its
    stage; otherwise stages are solved greedily and an obstructed stage
    returns None.  The result is the class (key, coords) of the value.
    """
    if r < 3:
        raise ValueError("equal-input products start at r = 3")
    kx = x[0]
    if kx[0] != kx[1]:
        raise ValueError("powers need a class with equal endpoints")
    if system is not None and len(system) != r - 2:
        raise ValueError(f"a defining system for r = {r} has {r - 2} chains")
    td = transfer if transfer is not None else TransferData(cohomology(s))
    dx, wx = kx[2], kx[3]

    def bkey(i):
        return (kx[0], kx[1], i * (dx - 1) + 1, i * wx)

    chains = {1: td.sigma_chain(x)}
    for i in range(2, r):
        rhs_key = (kx[0], kx[1], i * (dx - 1) + 2, i * wx)
        rhs = (rhs_key, [ZERO] * s.dim(rhs_key))
        for k in range(1, i):
            rhs = _acc(rhs, _mult(s, _tilde(chains[k]), chains[i - k]))
        if system is not None:
            cand = (system[i - 2][0], list(system[i - 2][1]))
            if cand[0] != bkey(i):
                raise ValueError(f"supplied system stage {i} sits in the wrong slice")
            if list(s.diff_matrix(cand[0]).apply(cand[1])) != rhs[1]:
                raise ValueError(f"supplied system fails at stage {i}")
        else:
            if any(td.project_chain(rhs)[1]):
                return None
            cand = td.h_chain(rhs)
        chains[i] = cand
    val_key = (kx[0], kx[1], r * (dx - 1) + 2, r * wx)
    val = (val_key, [ZERO] * s.dim(val_key))
    for k in range(1, r):
        val = _acc(val, _mult(s, _tilde(chains[k]), chains[r - k]))
    if any(s.diff_matrix(val[0]).apply(val[1])):
        raise ValueError("defining system produced a non-cocycle")
    return td.project_chain(val)


def chain_transfer_m3(ext, a, b, c):
    """Transferred m_3 on cocycle chain maps over a resolution's Ext algebra.

    Computes the class of h(ab) c - (-1)^|a| a h(bc) with h the boundary
    solver; returns None when [ab] or [bc] obstructs.  This is the route for
    periodic complexes, where endomorphism slices are not available.
    """
    u = ext.solve_d(a.compose(b))
    if u is None:
        return None
    v = ext.solve_d(b.compose(c))
    if v is None:
        return None
    rep = u.compose(c).add(a.compose(v).scale(1 if a.degree % 2 else -1))
    return ext.class_of_chain(rep)


def higher_product_slots(bidegrees: dict, n_max: int):
    """Arities 3 <= n <= n_max where a composable tuple of nonzero bidegrees
    can land in a nonzero slot of degree (total + 2 - n).

    bidegrees maps (src, tgt, degree, weight) to a dimension; the strict unit
    slots are ignored as inputs.  An empty answer proves every minimal model
    on these groups is formal: no higher operation has anywhere to live.
    """
    alive = [
        k
        for k, d in bidegrees.items()
        if d and not (k[0] == k[1] and k[2] == 0 and k[3] == 0)
    ]
    hits = set()
    states = {(k[0], k[1], k[2], k[3]) for k in alive}
    for n in range(2, n_max + 1):
        nxt = set()
        for s0, t0, d0, w0 in states:
            for k in alive:
                if k[0] != t0:
                    continue
                nxt.add((s0, k[1], d0 + k[2], w0 + k[3]))
        states = nxt
        if n >= 3:
            for s0, t0, d0, w0 in states:
                slot = (s0, t0, d0 + 2 - n, w0)
                if bidegrees.get(slot):
                    hits.add((n, slot))
    return sorted(hits)
