"""Formal deformations of an AsGDer triple truncated at order K.

Order n of (mu_t, h_t, delta_t) is governed by the deformation equations:
writing Ob_n for the quadratic terms in the orders 1..n-1, the equations in
order n say exactly that d(mu_n, h_n, delta_n) = Ob_n in the AsGDer complex.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .cohomology import GDerComplex
from .errors import HypothesisNotMet, MalformedElement
from .linalg import ZERO, rank, solve
from .multimap import MultiMap, vec_add, vec_iadd
from .triples import apply_linear, bilinear, unit_vector, validate_triple


class DeformationTrunc:
    """Base triple plus maps mu_i (arity 2), h_i, delta_i (arity 1) for 1 <= i <= K."""

    def __init__(self, base, order, mu=None, h=None, delta=None, check=True):
        if check and validate_triple(base):
            raise HypothesisNotMet("the base triple is not an AsGDer triple")
        self.base = base
        self.order = order
        space = base.space
        self.mu, self.h, self.delta = {}, {}, {}
        for name, fam, ar, store in (("mu", mu, 2, self.mu), ("h", h, 1, self.h), ("delta", delta, 1, self.delta)):
            fam = fam or {}
            for i in fam:
                if not 1 <= i <= order:
                    raise MalformedElement(f"{name}_{i} outside orders 1..{order}")
            for i in range(1, order + 1):
                f = fam.get(i) or MultiMap.zero(space, ar)
                if f.arity != ar:
                    raise MalformedElement(f"{name}_{i} must have arity {ar}")
                store[i] = f

    # tables for order i, with order 0 the base triple
    def _mu(self, i):
        return self.base.mu if i == 0 else self.mu[i].table

    def _h(self, i):
        return self.base.h if i == 0 else {k[0]: v for k, v in self.h[i].table.items()}

    def _delta(self, i):
        return self.base.delta if i == 0 else {k[0]: v for k, v in self.delta[i].table.items()}

    def extend(self, n, mu_n, h_n, delta_n):
        """A copy with order raised to at least n and the order-n maps replaced."""
        K = max(self.order, n)
        mu, h, d = dict(self.mu), dict(self.h), dict(self.delta)
        mu[n], h[n], d[n] = mu_n, h_n, delta_n
        return DeformationTrunc(self.base, K, mu, h, d, check=False)

    def truncate(self, K):
        keep = lambda fam: {i: f for i, f in fam.items() if i <= K}
        return DeformationTrunc(self.base, K, keep(self.mu), keep(self.h), keep(self.delta), check=False)


@dataclass
class ObstructionTriple:
    n: int
    ob1: MultiMap
    ob2: MultiMap
    ob3: MultiMap

    def is_zero(self):
        return self.ob1.is_zero() and self.ob2.is_zero() and self.ob3.is_zero()

    def to_cochain(self):
        """Coordinates in the degree 3 cochains of the AsGDer complex."""
        out = {}
        for c, f in enumerate((self.ob1, self.ob2, self.ob3)):
            for tup, v in f.table.items():
                for o, x in v.items():
                    out[(c, tup, o)] = x
        return out


def _pairs(n):
    return [(i, n - i) for i in range(1, n)]


def obstruction(d, n):
    """Ob'_n, Ob''_n, Ob'''_n: the sums over i + j = n with i, j > 0."""
    t = d.base
    dim = t.dim
    space = t.space
    e = unit_vector
    t1, t2, t3 = {}, {}, {}
    for i, j in _pairs(n):
        mi, mj = d._mu(i), d._mu(j)
        hi, hj, di = d._h(i), d._h(j), d._delta(i)
        for a, b, c in product(range(dim), repeat=3):
            v = vec_add(bilinear(mi, bilinear(mj, e(a), e(b)), e(c)), bilinear(mi, e(a), bilinear(mj, e(b), e(c))), -1)
            if v:
                vec_iadd(t1.setdefault((a, b, c), {}), v)
        for a, b in product(range(dim), repeat=2):
            ab = bilinear(mj, e(a), e(b))
            v = apply_linear(hi, ab)
            vec_iadd(v, bilinear(mi, apply_linear(hj, e(a)), e(b)), -1)
            vec_iadd(v, bilinear(mi, e(a), apply_linear(hj, e(b))), -1)
            if v:
                vec_iadd(t2.setdefault((a, b), {}), v)
            w = apply_linear(di, ab)
            vec_iadd(w, bilinear(mi, apply_linear(d._delta(j), e(a)), e(b)), -1)
            vec_iadd(w, bilinear(mi, e(a), apply_linear(hj, e(b))), -1)
            if w:
                vec_iadd(t3.setdefault((a, b), {}), w)
    return ObstructionTriple(n, MultiMap(space, 3, 0, t1), MultiMap(space, 2, 0, t2), MultiMap(space, 2, 0, t3))


def _de_rhs(d, n):
    """Right-hand sides of the three order-n equations, as tables."""
    t = d.base
    dim = t.dim
    e = unit_vector
    mu, h, de = t.mu, t.h, t.delta
    mn, hn, dn = d._mu(n), d._h(n), d._delta(n)
    r1, r2, r3 = {}, {}, {}
    for a, b, c in product(range(dim), repeat=3):
        v = bilinear(mu, e(a), bilinear(mn, e(b), e(c)))
        vec_iadd(v, bilinear(mn, bilinear(mu, e(a), e(b)), e(c)), -1)
        vec_iadd(v, bilinear(mn, e(a), bilinear(mu, e(b), e(c))))
        vec_iadd(v, bilinear(mu, bilinear(mn, e(a), e(b)), e(c)), -1)
        if v:
            r1[(a, b, c)] = v
    for a, b in product(range(dim), repeat=2):
        ab = bilinear(mn, e(a), e(b))
        v = bilinear(mn, e(a), apply_linear(h, e(b)))
        vec_iadd(v, bilinear(mn, apply_linear(h, e(a)), e(b)))
        vec_iadd(v, apply_linear(h, ab), -1)
        vec_iadd(v, bilinear(mu, apply_linear(hn, e(a)), e(b)))
        vec_iadd(v, bilinear(mu, e(a), apply_linear(hn, e(b))))
        vec_iadd(v, apply_linear(hn, bilinear(mu, e(a), e(b))), -1)
        if v:
            r2[(a, b)] = v
        w = bilinear(mn, apply_linear(de, e(a)), e(b))
        vec_iadd(w, bilinear(mn, e(a), apply_linear(h, e(b))))
        vec_iadd(w, apply_linear(de, ab), -1)
        vec_iadd(w, bilinear(mu, apply_linear(dn, e(a)), e(b)))
        vec_iadd(w, bilinear(mu, e(a), apply_linear(hn, e(b))))
        vec_iadd(w, apply_linear(dn, bilinear(mu, e(a), e(b))), -1)
        if w:
            r3[(a, b)] = w
    return r1, r2, r3


@dataclass
class DEReport:
    order: int
    residuals: dict = field(default_factory=dict)  # (equation, k) -> {inputs: vector}

    @property
    def holds(self):
        return all(not r for r in self.residuals.values())

    def holds_below(self, n):
        return all(not r for (eq, k), r in self.residuals.items() if k < n)

    def holds_at(self, k):
        return all(not r for (eq, kk), r in self.residuals.items() if kk == k)

    def to_json(self, labels, witnesses=True):
        out = {"order": self.order, "holds": self.holds, "equations": []}
        for (eq, k), r in sorted(self.residuals.items()):
            item = {"equation": eq, "order": k, "holds": not r}
            if witnesses and r:
                key = min(r)
                item["witness"] = {"inputs": [labels[i] for i in key],
                                   "residual": {labels[i]: str(c) for i, c in sorted(r[key].items())}}
            out["equations"].append(item)
        return out


def check_def_equations(d, orders=None):
    """Residual LHS - RHS of each deformation equation, on all basis inputs."""
    rep = DEReport(d.order)
    for k in orders or range(1, d.order + 1):
        ob = obstruction(d, k)
        rhs = _de_rhs(d, k)
        for eq, lhs, r in zip((1, 2, 3), (ob.ob1, ob.ob2, ob.ob3), rhs):
            res = {}
            for key in set(lhs.table) | set(r):
                v = vec_add(lhs.table.get(key, {}), r.get(key, {}), -1)
                if v:
                    res[key] = v
            rep.residuals[(eq, k)] = res
    return rep


def order_cochain(d, n):
    """(mu_n, h_n, delta_n) as a degree 2 cochain."""
    out = {}
    for c, f in enumerate((d.mu[n], d.h[n], d.delta[n])):
        for tup, v in f.table.items():
            for o, x in v.items():
                out[(c, tup, o)] = x
    return out


def cochain_maps(t, vec):
    """Split a degree 2 cochain into (mu, h, delta) MultiMaps."""
    tabs = [{}, {}, {}]
    for (c, tup, o), v in vec.items():
        if v:
            tabs[c].setdefault(tup, {})[o] = Fraction(v)
    return (MultiMap(t.space, 2, 0, tabs[0]), MultiMap(t.space, 1, 0, tabs[1]), MultiMap(t.space, 1, 0, tabs[2]))


@dataclass
class InfinitesimalReport:
    de_holds: bool
    cocycle: bool

    @property
    def equivalent(self):
        return self.de_holds == self.cocycle


def infinitesimal_is_cocycle(d, complex_=None):
    if d.order < 1:
        raise MalformedElement("needs order at least 1")
    de = check_def_equations(d, [1]).holds
    cx = complex_ or GDerComplex(d.base, check=False)
    cocycle = not cx.apply(2, order_cochain(d, 1))
    return InfinitesimalReport(de, cocycle)


@dataclass
class CocycleReport:
    n: int
    is_three_cocycle: bool
    residual: dict
    obstruction: ObstructionTriple


def _require_hypothesis(d, n):
    rep = check_def_equations(d, range(1, n))
    if not rep.holds:
        bad = [k for k in sorted(rep.residuals) if rep.residuals[k]]
        raise HypothesisNotMet(f"deformation equation {bad[0][0]} fails in order {bad[0][1]} < {n}")


def obstruction_is_cocycle(d, n, complex_=None):
    _require_hypothesis(d, n)
    ob = obstruction(d, n)
    cx = complex_ or GDerComplex(d.base, check=False)
    res = cx.apply(3, ob.to_cochain())
    return CocycleReport(n, not res, res, ob)


@dataclass
class LiftReport:
    n: int
    liftable: bool
    solution: tuple = None  # (mu_n, h_n, delta_n)
    revalidated: bool = None
    rank_d2: int = None
    rank_augmented: int = None
    obstruction: ObstructionTriple = None

    def to_json(self, labels):
        out = {"order": self.n, "liftable": self.liftable}
        if self.liftable:
            out["revalidated"] = self.revalidated
            out["solution"] = [_map_json(f, labels) for f in self.solution]
        else:
            out["certificate"] = {"rank_d2": self.rank_d2, "rank_with_obstruction": self.rank_augmented}
        return out


def _map_json(f, labels):
    return {",".join(labels[i] for i in k): {labels[o]: str(c) for o, c in sorted(v.items())}
            for k, v in sorted(f.table.items())}


def lift_step(d, n=None, complex_=None):
    """Solve d(mu_n, h_n, delta_n) = Ob_n; re-check the order n equations on success."""
    n = n or d.order + 1
    _require_hypothesis(d, n)
    cx = complex_ or GDerComplex(d.base, check=False)
    ob = obstruction(d, n)
    target = ob.to_cochain()
    b2, b3 = cx.basis(2), cx.basis(3)
    idx = {k: i for i, k in enumerate(b3)}
    cols = cx.matrix(2)
    rows = [{} for _ in b3]
    for j, col in enumerate(cols):
        for i, v in col.items():
            rows[i][j] = v
    rhs = [target.get(k, ZERO) for k in b3]
    x = solve(rows, rhs, len(b2))
    if x is None:
        aug = [dict(c) for c in cols] + [{idx[k]: v for k, v in target.items()}]
        return LiftReport(n, False, rank_d2=rank(cols), rank_augmented=rank(aug), obstruction=ob)
    sol = cochain_maps(d.base, {b2[j]: v for j, v in enumerate(x) if v})
    ext = d.extend(n, *sol)
    ok = check_def_equations(ext, [n]).holds
    return LiftReport(n, True, sol, ok, obstruction=ob)
