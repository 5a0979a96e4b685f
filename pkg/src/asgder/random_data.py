"""Seeded generators of test data: algebras, triples, modules and homotopy families."""
import random
from fractions import Fraction

from .homotopy import HomotopyAsGDer, map_degree, relation
from .linalg import ZERO, nullspace, solve
from .multimap import GradedSpace, MultiMap
from .triples import AsGDerTriple, GDerModule


def rng_of(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def small(rng, lo=-2, hi=2):
    return Fraction(rng.randint(lo, hi))


# ---------------------------------------------------------------- linear unknowns

class Unknowns:
    """Elementary entries of a list of MultiMaps, treated as unknowns of a linear system.

    ``specs`` is a list of (name, arity, degree); only degree-compatible entries
    are variables.
    """

    def __init__(self, space, specs):
        self.space = space
        self.specs = list(specs)
        self.vars = []
        deg = space.degrees
        for name, arity, d in self.specs:
            for t in space.tuples(arity):
                target = sum(deg[i] for i in t) + d
                for o in range(space.dim):
                    if deg[o] == target:
                        self.vars.append((name, t, o))

    def build(self, x):
        tables = {name: {} for name, _, _ in self.specs}
        for (name, t, o), v in zip(self.vars, x):
            if v:
                tables[name].setdefault(t, {})[o] = Fraction(v)
        return {name: MultiMap(self.space, a, d, tables[name], check=False) for name, a, d in self.specs}

    def solve_affine(self, residual, rng, free_range=2):
        """A random solution of residual(maps) = 0, assuming residual is affine.

        ``residual`` returns a list of MultiMaps.  Returns None if inconsistent.
        """
        n = len(self.vars)

        def flat(res):
            out = {}
            for j, f in enumerate(res):
                for t, v in f.table.items():
                    for o, c in v.items():
                        out[(j, t, o)] = c
            return out

        base = flat(residual(self.build([ZERO] * n)))
        cols = []
        for k in range(n):
            x = [ZERO] * n
            x[k] = Fraction(1)
            r = flat(residual(self.build(x)))
            col = dict(r)
            for key, c in base.items():
                col[key] = col.get(key, ZERO) - c
            cols.append({key: c for key, c in col.items() if c})
        keys = sorted(set(base).union(*cols) if cols else base)
        index = {key: i for i, key in enumerate(keys)}
        rows = [{} for _ in keys]
        for k, col in enumerate(cols):
            for key, c in col.items():
                rows[index[key]][k] = c
        rhs = [-base.get(key, ZERO) for key in keys]
        x = solve(rows, rhs, n) if keys else [ZERO] * n
        if x is None:
            return None
        for v in nullspace(rows, n) if keys else _units(n):
            c = Fraction(rng.randint(-free_range, free_range))
            if c:
                x = [a + c * b for a, b in zip(x, v)]
        return self.build(x)


def _units(n):
    return [[Fraction(int(i == k)) for i in range(n)] for k in range(n)]


# ---------------------------------------------------------------- algebras

def _alg_zero(n):
    return n, {}


def _alg_idempotent():
    return 1, {(0, 0): {0: 1}}


def _alg_diagonal(n):
    return n, {(i, i): {i: 1} for i in range(n)}


def _alg_upper_triangular():
    # E11, E12, E22
    return 3, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}}


def _alg_row():
    # span{E11, E12}
    return 2, {(0, 0): {0: 1}, (0, 1): {1: 1}}


def _alg_column():
    # span{E12, E22}
    return 2, {(0, 1): {0: 1}, (1, 1): {1: 1}}


def _alg_truncated_poly(n):
    # x, x^2, .., x^n in k[x]/(x^{n+1})
    return n, {(i, j): {i + j + 1: 1} for i in range(n) for j in range(n) if i + j + 1 < n}


def _alg_unital_poly(n):
    # 1, x, .., x^{n-1} in k[x]/(x^n)
    return n, {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n}


def _alg_heisenberg():
    # ab = c, all other products zero
    return 3, {(0, 1): {2: 1}}


def _direct_sum(a, b):
    n, mu = a
    m, nu = b
    out = dict(mu)
    for (i, j), v in nu.items():
        out[(i + n, j + n)] = {k + n: c for k, c in v.items()}
    return n + m, out


def catalog(max_dim=3):
    """Named small associative algebras as (dim, structure constants)."""
    items = [
        ("zero1", _alg_zero(1)), ("zero2", _alg_zero(2)), ("zero3", _alg_zero(3)),
        ("idempotent", _alg_idempotent()), ("k2", _alg_diagonal(2)), ("k3", _alg_diagonal(3)),
        ("upper2", _alg_upper_triangular()), ("row", _alg_row()), ("column", _alg_column()),
        ("nil2", _alg_truncated_poly(2)), ("nil3", _alg_truncated_poly(3)),
        ("dual_numbers", _alg_unital_poly(2)), ("poly3", _alg_unital_poly(3)),
        ("heisenberg", _alg_heisenberg()),
        ("k+nil2", _direct_sum(_alg_idempotent(), _alg_truncated_poly(2))),
        ("row+zero", _direct_sum(_alg_row(), _alg_zero(1))),
        ("dual+k", _direct_sum(_alg_unital_poly(2), _alg_idempotent())),
    ]
    return [(name, a) for name, a in items if a[0] <= max_dim]


def _inverse(P):
    n = len(P)
    cols = []
    for k in range(n):
        x = solve([dict(enumerate(r)) for r in P], [int(i == k) for i in range(n)], n)
        if x is None:
            return None
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def change_basis(dim, mu, rng):
    """Conjugate structure constants by a random invertible integer matrix."""
    while True:
        P = [[Fraction(rng.randint(-1, 1)) + (1 if i == j else 0) for j in range(dim)] for i in range(dim)]
        Q = _inverse(P)
        if Q is not None:
            break
    # new basis vector f_i = sum_k P[k][i] e_k
    col = lambda i: {k: P[k][i] for k in range(dim) if P[k][i]}
    out = {}
    for i in range(dim):
        for j in range(dim):
            prod = {}
            for a, x in col(i).items():
                for b, y in col(j).items():
                    for k, z in mu.get((a, b), {}).items():
                        prod[k] = prod.get(k, ZERO) + x * y * z
            new = {}
            for k, z in prod.items():
                for r in range(dim):
                    if Q[r][k]:
                        new[r] = new.get(r, ZERO) + Q[r][k] * z
            new = {k: v for k, v in new.items() if v}
            if new:
                out[(i, j)] = new
    return out


def random_algebra(rng, max_dim=3, basis_change=True):
    rng = rng_of(rng)
    name, (dim, mu) = rng.choice(catalog(max_dim))
    if basis_change and dim > 1 and rng.random() < 0.5:
        mu = change_basis(dim, mu, rng)
    return name, dim, mu


# ---------------------------------------------------------------- triples

def _linear_maps_rows(dim, mu, kind):
    """Linear constraints on an unknown dim x dim matrix D (variable i*dim+k = coeff of e_k in D(e_i)).

    kind "der": D(ab) = D(a)b + aD(b); kind "left": D(ab) = D(a)b.
    """
    rows = []
    for i in range(dim):
        for j in range(dim):
            for l in range(dim):
                r = {}
                for p, c in mu.get((i, j), {}).items():
                    r[p * dim + l] = r.get(p * dim + l, ZERO) + c
                for p in range(dim):
                    c = mu.get((p, j), {}).get(l)
                    if c:
                        r[i * dim + p] = r.get(i * dim + p, ZERO) - c
                    if kind == "der":
                        c = mu.get((i, p), {}).get(l)
                        if c:
                            r[j * dim + p] = r.get(j * dim + p, ZERO) - c
                r = {k: v for k, v in r.items() if v}
                if r:
                    rows.append(r)
    return rows


def derivation_basis(dim, mu):
    return nullspace(_linear_maps_rows(dim, mu, "der"), dim * dim)


def left_multiplier_basis(dim, mu):
    return nullspace(_linear_maps_rows(dim, mu, "left"), dim * dim)


def _combine(rng, basis, dim):
    x = [ZERO] * (dim * dim)
    for v in basis:
        c = small(rng)
        if c:
            x = [a + c * b for a, b in zip(x, v)]
    return x


def _as_table(x, dim):
    out = {}
    for i in range(dim):
        v = {k: x[i * dim + k] for k in range(dim) if x[i * dim + k]}
        if v:
            out[i] = v
    return out


def random_triple(rng, max_dim=3, delta_eq_h=None):
    """A valid triple: h a random derivation and delta = h + L with L(ab) = L(a)b."""
    rng = rng_of(rng)
    _, dim, mu = random_algebra(rng, max_dim)
    h = _combine(rng, derivation_basis(dim, mu), dim)
    if delta_eq_h is None:
        delta_eq_h = rng.random() < 0.3
    if delta_eq_h:
        d = list(h)
    else:
        L = _combine(rng, left_multiplier_basis(dim, mu), dim)
        d = [a + b for a, b in zip(h, L)]
    return AsGDerTriple(dim, mu, _as_table(h, dim), _as_table(d, dim))


def mutate_triple(t, rng):
    """Add +-1 to one structure constant of mu, h or delta."""
    rng = rng_of(rng)
    n = t.dim
    which = rng.choice(("mu", "h", "delta"))
    c = Fraction(rng.choice((-1, 1)))
    o = rng.randrange(n)
    if which == "mu":
        key = (rng.randrange(n), rng.randrange(n))
        mu = {k: dict(v) for k, v in t.mu.items()}
        cur = mu.setdefault(key, {})
        cur[o] = cur.get(o, ZERO) + c
        return t.with_maps(mu=mu)
    key = rng.randrange(n)
    table = {k: dict(v) for k, v in (t.h if which == "h" else t.delta).items()}
    cur = table.setdefault(key, {})
    cur[o] = cur.get(o, ZERO) + c
    return t.with_maps(h=table) if which == "h" else t.with_maps(delta=table)


def random_candidate(rng, dim):
    """Arbitrary (mu, h, delta) with small entries; rarely a valid triple."""
    rng = rng_of(rng)
    p = rng.choice((0.2, 0.5))
    ent = lambda: small(rng, -1, 1) if rng.random() < p else ZERO
    mu = {(i, j): {k: ent() for k in range(dim)} for i in range(dim) for j in range(dim)}
    h = {i: {k: ent() for k in range(dim)} for i in range(dim)}
    d = {i: {k: ent() for k in range(dim)} for i in range(dim)}
    return AsGDerTriple(dim, mu, h, d)


# ---------------------------------------------------------------- modules

def _bimodule(t, kind):
    n = t.dim
    if kind == "regular":
        return n, dict(t.mu), dict(t.mu)
    if kind == "double":
        left, right = {}, {}
        for (a, b), v in t.mu.items():
            for s in (0, n):
                left[(a, b + s)] = {k + s: c for k, c in v.items()}
                right[(a + s, b)] = {k + s: c for k, c in v.items()}
        return 2 * n, left, right
    if kind == "trivial":
        return 1, {}, {}
    if kind == "dual":
        # (a.f)(x) = f(xa), (f.a)(x) = f(ax) on the dual basis
        left, right = {}, {}
        for (x, a), v in t.mu.items():
            for k, c in v.items():
                left.setdefault((a, k), {})[x] = left.get((a, k), {}).get(x, ZERO) + c
        for (a, x), v in t.mu.items():
            for k, c in v.items():
                right.setdefault((k, a), {})[x] = right.get((k, a), {}).get(x, ZERO) + c
        return n, left, right
    raise ValueError(kind)


MODULE_KINDS = ("regular", "double", "trivial", "dual")


def random_module(t, rng, kind=None):
    """A random valid module over t, or the regular module if ``kind`` admits no hM, deltaM."""
    rng = rng_of(rng)
    kind = kind or rng.choice(MODULE_KINDS)
    m, left, right = _bimodule(t, kind)
    mod = _solve_module_maps(t, m, left, right, rng)
    if mod is None:
        return random_module(t, rng, "regular")
    return mod


def _solve_module_maps(t, m, left, right, rng):
    n = t.dim

    def act(table, i, j):
        return table.get((i, j), {})

    # hM: unknown m x m, var r*m + s = coeff of f_s in hM(f_r)
    def constraints(first, known_h=None):
        rows, rhs = [], []
        for a in range(n):
            for r in range(m):
                # left rule: X(a r) - a hM(r) = D(a) r, with X = hM or deltaM, D = h or delta
                for s in range(m):
                    row = {}
                    for p, c in act(left, a, r).items():
                        row[p * m + s] = row.get(p * m + s, ZERO) + c
                    val = ZERO
                    hvec = t.h if first else t.delta
                    for b, c in hvec.get(a, {}).items():
                        val += c * act(left, b, r).get(s, ZERO)
                    if first:
                        for p in range(m):
                            c = act(left, a, p).get(s)
                            if c:
                                row[r * m + p] = row.get(r * m + p, ZERO) - c
                    else:
                        for p, c in known_h.get(r, {}).items():
                            val += c * act(left, a, p).get(s, ZERO)
                    rows.append({k: v for k, v in row.items() if v})
                    rhs.append(val)
                # right rule: X(r a) - X(r) a = r h(a)
                for s in range(m):
                    row = {}
                    for p, c in act(right, r, a).items():
                        row[p * m + s] = row.get(p * m + s, ZERO) + c
                    for p in range(m):
                        c = act(right, p, a).get(s)
                        if c:
                            row[r * m + p] = row.get(r * m + p, ZERO) - c
                    val = ZERO
                    for b, c in t.h.get(a, {}).items():
                        val += c * act(right, r, b).get(s, ZERO)
                    rows.append({k: v for k, v in row.items() if v})
                    rhs.append(val)
        return rows, rhs

    def pick(rows, rhs):
        x = solve(rows, rhs, m * m)
        if x is None:
            return None
        for v in nullspace(rows, m * m):
            c = small(rng, -1, 1)
            if c:
                x = [a + c * b for a, b in zip(x, v)]
        return _as_table(x, m)

    hM = pick(*constraints(True))
    if hM is None:
        return None
    dM = pick(*constraints(False, hM))
    if dM is None:
        return None
    return GDerModule(m, left, right, hM, dM)


# ---------------------------------------------------------------- homotopy families

def random_graded_space(rng, max_dim=2, degrees=(-1, 0, 1)):
    rng = rng_of(rng)
    dim = rng.randint(1, max_dim)
    degs = tuple(rng.choice(degrees) for _ in range(dim))
    return GradedSpace(tuple(f"v{i + 1}" for i in range(dim)), degs)


def random_map(space, arity, degree, rng, density=0.5):
    deg = space.degrees
    table = {}
    for t in space.tuples(arity):
        target = sum(deg[i] for i in t) + degree
        for o in range(space.dim):
            if deg[o] == target and rng.random() < density:
                c = small(rng, -1, 1)
                if c:
                    table.setdefault(t, {})[o] = c
    return MultiMap(space, arity, degree, table, check=False)


def _family(H):
    fams = {"m": {}, "h": {}, "delta": {}}
    for (k, n), f in H.maps.items():
        fams[k][n] = f
    return fams


def random_homotopy(rng, max_dim=2, max_arity=4, degrees=(-1, 0, 1)):
    """A homotopy structure satisfying all relations up to max_arity, built by solving linear systems."""
    rng = rng_of(rng)
    space = random_graded_space(rng, max_dim, degrees)
    N = max_arity
    fams = {"m": {}, "h": {}, "delta": {}}
    # m_1 with m_1 m_1 = 0: try random ones, fall back to zero
    m1 = MultiMap.zero(space, 1, -1)
    for _ in range(3):
        cand = random_map(space, 1, -1, rng)
        if relation(HomotopyAsGDer(space, 1, m={1: cand}), 1, 1).is_zero():
            m1 = cand
            break
    fams["m"][1] = m1
    # m_2 with m_1 m_2 compatible: homogeneous in m_2
    H = HomotopyAsGDer(space, N, m=fams["m"])
    unk = Unknowns(space, [("m2", 2, 0)])
    sol = unk.solve_affine(lambda x: [relation(H.replace("m", 2, x["m2"]), 1, 2)], rng, 1)
    fams["m"][2] = sol["m2"]
    # higher m_n from the affine relations in arities 3..N
    specs = [(f"m{n}", n, n - 2) for n in range(3, N + 1)]
    if specs:
        unk = Unknowns(space, specs)

        def res_m(x):
            fam = dict(fams["m"])
            fam.update({int(k[1:]): v for k, v in x.items()})
            G = HomotopyAsGDer(space, N, m=fam)
            return [relation(G, 1, n) for n in range(3, N + 1)]

        sol = unk.solve_affine(res_m, rng, 1)
        if sol is None:
            fams["m"][2] = MultiMap.zero(space, 2, 0)
            sol = unk.solve_affine(res_m, rng, 1)
        fams["m"].update({int(k[1:]): v for k, v in sol.items()})
    # h from the homogeneous relation 2
    unk = Unknowns(space, [(f"h{n}", n, n - 1) for n in range(1, N + 1)])

    def with_h(x):
        return HomotopyAsGDer(space, N, m=fams["m"], h={int(k[1:]): v for k, v in x.items()})

    sol = unk.solve_affine(lambda x: [relation(with_h(x), 2, n) for n in range(1, N + 1)], rng, 1)
    fams["h"] = {int(k[1:]): v for k, v in sol.items()}
    # delta from the affine relation 3 (delta = h is always a solution)
    unk = Unknowns(space, [(f"d{n}", n, n - 1) for n in range(1, N + 1)])

    def with_d(x):
        return HomotopyAsGDer(space, N, m=fams["m"], h=fams["h"], delta={int(k[1:]): v for k, v in x.items()})

    sol = unk.solve_affine(lambda x: [relation(with_d(x), 3, n) for n in range(1, N + 1)], rng, 1)
    fams["delta"] = {int(k[1:]): v for k, v in sol.items()}
    return HomotopyAsGDer(space, N, fams["m"], fams["h"], fams["delta"])


def mutate_homotopy(H, rng):
    """Add +-1 to one degree-compatible entry of one map."""
    rng = rng_of(rng)
    space = H.space
    deg = space.degrees
    options = []
    for (kind, n), f in sorted(H.maps.items()):
        d = map_degree(kind, n)
        for t in space.tuples(n):
            target = sum(deg[i] for i in t) + d
            for o in range(space.dim):
                if deg[o] == target:
                    options.append((kind, n, t, o))
    if not options:
        return H
    kind, n, t, o = rng.choice(options)
    f = H.maps[(kind, n)]
    bump = MultiMap(space, n, f.degree if not f.is_zero() else map_degree(kind, n),
                    {t: {o: rng.choice((-1, 1))}}, check=False)
    return H.replace(kind, n, f + bump)


def random_map_family(rng, max_dim=2, max_arity=4, degrees=(-1, 0, 1)):
    """Unconstrained maps of the right degrees; usually not a homotopy structure."""
    rng = rng_of(rng)
    space = random_graded_space(rng, max_dim, degrees)
    fams = {k: {n: random_map(space, n, map_degree(k, n), rng, 0.3) for n in range(1, max_arity + 1)}
            for k in ("m", "h", "delta")}
    return HomotopyAsGDer(space, max_arity, fams["m"], fams["h"], fams["delta"])


def random_dg_algebra(rng, max_dim=3):
    """A dg algebra B + sB: B from the catalog in degree 0, sB a square-zero bimodule in degree 1.

    Returns (maps {1: m1, 2: m2}, list of degree-0 basis indices).
    """
    rng = rng_of(rng)
    _, dim, mu = random_algebra(rng, max_dim)
    space = GradedSpace(tuple(f"b{i + 1}" for i in range(dim)) + tuple(f"s{i + 1}" for i in range(dim)),
                        (0,) * dim + (1,) * dim)
    table = {}
    for (i, j), v in mu.items():
        table[(i, j)] = dict(v)
        table[(i, j + dim)] = {k + dim: c for k, c in v.items()}
        table[(i + dim, j)] = {k + dim: c for k, c in v.items()}
    m2 = MultiMap(space, 2, 0, table)
    unk = Unknowns(space, [("m1", 1, -1)])
    H = HomotopyAsGDer(space, 2, m={2: m2})
    sol = unk.solve_affine(lambda x: [relation(H.replace("m", 1, x["m1"]), 1, 2)], rng, 2)
    return {1: sol["m1"], 2: m2}, list(range(dim))


def random_ainfty(rng, max_dim=2, max_arity=4):
    """Small A-infinity data in degrees {0, 1} with m_n for n <= max_arity, built by linear solving."""
    rng = rng_of(rng)
    found = None
    for _ in range(40):
        H = random_homotopy(rng, max_dim, max_arity, degrees=(0, 1))
        if 0 in H.space.degrees:
            found = {n: H.m(n) for n in range(1, max_arity + 1)}
            if max_arity < 3 or not found[3].is_zero():
                return found
    if found:
        return found
    space = GradedSpace(("v1",), (0,))
    return {n: MultiMap.zero(space, n, n - 2) for n in range(1, max_arity + 1)}


def random_cycle(m_maps, rng):
    """A random degree-0 element a with m_1(a) = 0."""
    rng = rng_of(rng)
    space = m_maps[2].space if 2 in m_maps else next(iter(m_maps.values())).space
    zero_idx = [i for i in range(space.dim) if space.degrees[i] == 0]
    m1 = m_maps.get(1)
    rows = []
    if m1 is not None:
        for o in range(space.dim):
            r = {}
            for k, i in enumerate(zero_idx):
                c = m1.table.get((i,), {}).get(o)
                if c:
                    r[k] = c
            if r:
                rows.append(r)
    basis = nullspace(rows, len(zero_idx))
    a = {}
    for v in basis:
        c = small(rng)
        for k, x in enumerate(v):
            if x and c:
                a[zero_idx[k]] = a.get(zero_idx[k], ZERO) + c * x
    return {k: v for k, v in a.items() if v}
