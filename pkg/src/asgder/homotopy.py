"""Homotopy AsGDer structures truncated in arity, and the square-zero coderivation test.

A structure is a family of maps m_n (degree n-2), h_n and delta_n (degree n-1)
on a graded space A, for 1 <= n <= N.  The relations in arity n only involve
maps of arity <= n, so a truncated family can be checked exactly.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from .agd import CooperadTable, Op
from .errors import InvalidSeedElement, MalformedElement
from .linalg import sign
from .multimap import MultiMap, compose_partial, vec_iadd

MAP_KINDS = ("m", "h", "delta")
_COOP_KIND = {"m": "mu", "h": "h", "delta": "delta"}


def map_degree(kind, n):
    return n - 2 if kind == "m" else n - 1


class HomotopyAsGDer:
    def __init__(self, space, max_arity, m=None, h=None, delta=None):
        self.space = space
        self.max_arity = max_arity
        self.maps = {}
        for kind, fam in (("m", m or {}), ("h", h or {}), ("delta", delta or {})):
            for n in range(1, max_arity + 1):
                f = fam.get(n)
                if f is None:
                    f = MultiMap.zero(space, n, map_degree(kind, n))
                if f.arity != n:
                    raise MalformedElement(f"{kind}_{n} has arity {f.arity}")
                if not f.is_zero() and f.degree != map_degree(kind, n):
                    raise MalformedElement(f"{kind}_{n} has degree {f.degree}, expected {map_degree(kind, n)}")
                if f.is_zero():
                    f = MultiMap.zero(space, n, map_degree(kind, n))
                self.maps[(kind, n)] = f

    def m(self, n):
        return self.maps[("m", n)]

    def h(self, n):
        return self.maps[("h", n)]

    def delta(self, n):
        return self.maps[("delta", n)]

    def replace(self, kind, n, f):
        fams = {k: {} for k in MAP_KINDS}
        for (k, a), g in self.maps.items():
            fams[k][a] = g
        fams[kind][n] = f
        return HomotopyAsGDer(self.space, self.max_arity, fams["m"], fams["h"], fams["delta"])


def _triples(n):
    for q in range(1, n + 1):
        for p in range(0, n - q + 1):
            yield p, q, n - p - q


def relation(H, which, n):
    """The left-hand side of relation ``which`` (1, 2 or 3) in arity n, as a MultiMap."""
    space = H.space
    deg = n - 3 if which == 1 else n - 2
    total = MultiMap.zero(space, n, deg)
    m, h, d = H.m, H.h, H.delta
    for p, q, r in _triples(n):
        if which == 1:
            total = total + compose_partial(m(p + r + 1), p + 1, m(q)).scale(sign(p + q * r))
        elif which == 2:
            total = total + compose_partial(m(p + r + 1), p + 1, h(q)).scale(sign(p + q * r))
            total = total + compose_partial(h(p + r + 1), p + 1, m(q)).scale(sign(p + q * (r + 1)))
        else:
            if p >= 1:
                total = total + compose_partial(m(p + r + 1), p + 1, h(q)).scale(sign(p + q * r))
            else:
                total = total + compose_partial(m(r + 1), 1, d(q)).scale(sign(q * r))
            total = total + compose_partial(d(p + r + 1), p + 1, m(q)).scale(sign(p + q * (r + 1)))
    return total


@dataclass
class RelationReport:
    max_arity: int
    residuals: dict = field(default_factory=dict)  # (relation, n) -> MultiMap

    @property
    def holds(self):
        return all(r.is_zero() for r in self.residuals.values())

    def failures(self):
        return [k for k, r in sorted(self.residuals.items()) if not r.is_zero()]

    def to_json(self, witnesses=True):
        out = {"max_arity": self.max_arity, "holds": self.holds, "relations": []}
        for (which, n), res in sorted(self.residuals.items()):
            item = {"relation": which, "arity": n, "holds": res.is_zero()}
            if witnesses and not res.is_zero():
                key = min(res.table)
                labels = res.space.labels
                item["witness"] = {
                    "inputs": [labels[i] for i in key],
                    "value": {labels[i]: str(c) for i, c in sorted(res.table[key].items())},
                }
            out["relations"].append(item)
        return out


def check_homotopy_relations(H, max_arity=None):
    N = max_arity or H.max_arity
    rep = RelationReport(N)
    for n in range(1, N + 1):
        for which in (1, 2, 3):
            rep.residuals[(which, n)] = relation(H, which, n)
    return rep


# ---------------------------------------------------------------- coalgebra

class CofreeTrunc:
    """Basis [theta | a_1..a_n] of the cofree Agd^¡-coalgebra on A, arity <= N."""

    def __init__(self, space, max_arity):
        self.space = space
        self.max_arity = max_arity
        self.cooperad = CooperadTable(max_arity)

    def basis(self):
        out = []
        for n in range(1, self.max_arity + 1):
            for kind in ("mu", "h", "delta"):
                for t in self.space.tuples(n):
                    out.append((Op(kind, n), t))
        return out

    def degree(self, elem):
        theta, t = elem
        return self.cooperad.degree(theta) + sum(self.space.degrees[i] for i in t)


class Coderivation:
    """The coderivation extending psi: Agd^¡(A) -> A.

    ``psi`` maps an Op to a MultiMap of that arity; ``degree`` is the degree of
    psi as a map on the coalgebra.  The sign of a term is
    (-1)^{|psi||theta_(1)| + (|psi|+|theta_(2)|)(|v_1|+...+|v_{i-1}|)}.
    """

    def __init__(self, coalgebra, psi, degree):
        self.coalgebra = coalgebra
        self.psi = psi
        self.degree = degree
        self._decomp = {}

    def _decompose(self, theta):
        d = self._decomp.get(theta)
        if d is None:
            d = self._decomp[theta] = self.coalgebra.cooperad.decompose(theta)
        return d

    def psi_value(self, theta, t):
        f = self.psi.get(theta)
        return f.table.get(t, {}) if f is not None else {}

    def apply_basis(self, theta, t):
        coop = self.coalgebra.cooperad
        degs = self.coalgebra.space.degrees
        dpsi = self.degree
        out = {}
        for c, left, pos, right in self._decompose(theta):
            q = right.arity
            i = pos - 1
            val = self.psi_value(right, t[i:i + q])
            if not val:
                continue
            s = c * sign(dpsi * coop.degree(left) + (dpsi + coop.degree(right)) * sum(degs[x] for x in t[:i]))
            for k, v in val.items():
                key = (left, t[:i] + (k,) + t[i + q:])
                out[key] = out.get(key, 0) + s * v
                if not out[key]:
                    del out[key]
        return out

    def __call__(self, elem):
        out = {}
        for (theta, t), c in elem.items():
            vec_iadd(out, self.apply_basis(theta, t), c)
        return out


def psi_from_structure(H):
    return {Op(_COOP_KIND[k], n): f for (k, n), f in H.maps.items()}


def coderivation_from_maps(H, max_arity=None):
    N = max_arity or H.max_arity
    return Coderivation(CofreeTrunc(H.space, N), psi_from_structure(H), -1)


@dataclass
class SquareZeroReport:
    holds: bool
    witness: object = None
    image: dict = None
    checked: int = 0


def square_zero_check(H, max_arity=None):
    d = coderivation_from_maps(H, max_arity)
    count = 0
    for theta, t in d.coalgebra.basis():
        img = d(d({(theta, t): Fraction(1)}))
        count += 1
        if img:
            return SquareZeroReport(False, (theta, t), img, count)
    return SquareZeroReport(True, None, None, count)


def projection(elem):
    """Component on the cogenerators [mu_1 | a]."""
    out = {}
    for (theta, t), c in elem.items():
        if theta == Op("mu", 1):
            out[t[0]] = out.get(t[0], 0) + c
    return {k: v for k, v in out.items() if v}


def commutator_closure(d1, d2, max_arity):
    """[d1, d2] must be the coderivation of its own projection.

    Returns a list of basis elements where it is not (empty when the
    coderivation formula is compatible with the cooperad structure).
    """
    co = d1.coalgebra
    s = sign(d1.degree * d2.degree)

    def bracket(elem):
        a = d1(d2(elem))
        b = d2(d1(elem))
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, 0) - s * v
            if not out[k]:
                del out[k]
        return out

    chi = {}
    for theta, t in co.basis():
        val = projection(bracket({(theta, t): Fraction(1)}))
        if val:
            f = chi.setdefault(theta, {})
            f[t] = val
    space = co.space
    degs = space.degrees
    dchi = d1.degree + d2.degree
    maps = {}
    for theta, table in chi.items():
        maps[theta] = MultiMap(space, theta.arity, dchi + co.cooperad.degree(theta), table, check=False)
    dc = Coderivation(co, maps, dchi)
    bad = []
    for theta, t in co.basis():
        e = {(theta, t): Fraction(1)}
        if bracket(e) != dc(e):
            bad.append((theta, t))
    return bad


# ---------------------------------------------------------------- examples

def ainfty_induced(m_maps, a, max_arity, check=True):
    """delta_n(b_1..b_n) = (-1)^{n+1} m_{n+1}(a, b_1..b_n), h_n = 0.

    ``m_maps`` maps n to m_n for n <= max_arity + 1; ``a`` is a sparse vector.
    """
    N = max_arity
    space = next(iter(m_maps.values())).space
    a = {k: Fraction(v) for k, v in a.items() if v}
    if any(space.degrees[k] != 0 for k in a):
        raise InvalidSeedElement("the seed element must have degree 0")
    m1 = m_maps.get(1)
    if m1 is not None and m1.evaluate(a):
        raise InvalidSeedElement("the seed element must satisfy m_1(a) = 0")
    if check:
        A = HomotopyAsGDer(space, N + 1, m=m_maps)
        for n in range(1, N + 2):
            if not relation(A, 1, n).is_zero():
                raise InvalidSeedElement(f"the m_n do not satisfy the A-infinity relation in arity {n}")
    delta = {}
    for n in range(1, N + 1):
        mn1 = m_maps.get(n + 1)
        if mn1 is None:
            continue
        table = {}
        for key, out in mn1.table.items():
            c = a.get(key[0])
            if c:
                rest = key[1:]
                cur = table.setdefault(rest, {})
                vec_iadd(cur, out, sign(n + 1) * c)
        delta[n] = MultiMap(space, n, n - 1, {k: v for k, v in table.items() if v}, check=False)
    return HomotopyAsGDer(space, N, m={n: f for n, f in m_maps.items() if n <= N}, delta=delta)


def from_triple(t, max_arity=2):
    """A strict triple as a homotopy structure: m_2 = mu, h_1 = h, delta_1 = delta."""
    mu, h, d = t.maps()
    return HomotopyAsGDer(t.space, max_arity, m={2: mu}, h={1: h}, delta={1: d})
