"""Closed-form tables for the Agd family: the operad Agd^! and the cooperad Agd^¡.

Basis elements are ``Op(kind, n)`` with kind in {"mu", "h", "delta"}.  In the
dual operad ``Op("mu", 1)`` is the identity; the h and delta elements have
degree -1.  In the cooperad the degrees are n-1 for mu and n for h, delta.
"""
from dataclasses import dataclass
from typing import NamedTuple

from .errors import InconsistencyFound
from .linalg import sign
from .rewriting import normal_form, preset, reduced_basis, rules_from_quadratic
from .trees import LEAF, Tree, corolla, graft_signed, render

KINDS = ("mu", "h", "delta")


class Op(NamedTuple):
    kind: str
    arity: int

    def __str__(self):
        return f"{self.kind}_{self.arity}"


def agd_presentation():
    return preset("agd")


def agd_dual_presentation():
    return preset("agd-dual")


class OperadTable:
    """Agd^!: partial composition x o_i y as a dict {Op: coefficient}."""

    def __init__(self, max_arity):
        self.max_arity = max_arity

    identity = Op("mu", 1)

    def basis(self, n):
        return [Op(k, n) for k in KINDS]

    def all_basis(self):
        return [x for n in range(1, self.max_arity + 1) for x in self.basis(n)]

    @staticmethod
    def degree(x):
        return 0 if x.kind == "mu" else -1

    def compose(self, x, i, y):
        n, m = x.arity, y.arity
        if not 1 <= i <= n:
            raise ValueError(f"position {i} outside 1..{n}")
        k = n + m - 1
        if x.kind == "mu":
            if y.kind == "mu":
                return {Op("mu", k): 1}
            if y.kind == "h":
                return {Op("h", k): 1} if i == 1 else {Op("delta", k): 1, Op("h", k): 1}
            return {Op("delta", k): 1} if i == 1 else {}
        # x is h or delta
        if y.kind == "mu":
            return {Op(x.kind, k): 1}
        return {}


class CooperadTable:
    """Agd^¡: infinitesimal decomposition as a list of (coef, left, position, right)."""

    def __init__(self, max_arity):
        self.max_arity = max_arity

    def basis(self, n):
        return [Op(k, n) for k in KINDS]

    def all_basis(self):
        return [x for n in range(1, self.max_arity + 1) for x in self.basis(n)]

    @staticmethod
    def degree(x):
        return x.arity - 1 if x.kind == "mu" else x.arity

    @staticmethod
    def counit(x):
        return 1 if x == Op("mu", 1) else 0

    def coefficient(self, kind, p, q, r, part):
        """Sign of a term; ``part`` says which displayed sum it comes from."""
        if part == "mu.mu":
            return sign(r * (q - 1))
        if part == "mu.x":
            return sign(r * (q - 1))
        if part == "x.mu":
            return sign((r + 1) * (q - 1))
        raise ValueError(part)

    def decompose(self, x):
        n = x.arity
        out = []
        for q in range(1, n + 1):
            for p in range(0, n - q + 1):
                r = n - p - q
                left = p + r + 1
                if x.kind == "mu":
                    out.append((self.coefficient("mu", p, q, r, "mu.mu"), Op("mu", left), p + 1, Op("mu", q)))
                elif x.kind == "h":
                    out.append((self.coefficient("h", p, q, r, "mu.x"), Op("mu", left), p + 1, Op("h", q)))
                    out.append((self.coefficient("h", p, q, r, "x.mu"), Op("h", left), p + 1, Op("mu", q)))
                else:
                    out.append((self.coefficient("delta", p, q, r, "x.mu"), Op("delta", left), p + 1, Op("mu", q)))
                    if p == 0:
                        out.append((self.coefficient("delta", p, q, r, "mu.x"), Op("mu", left), 1, Op("delta", q)))
                    else:
                        out.append((self.coefficient("delta", p, q, r, "mu.x"), Op("mu", left), p + 1, Op("h", q)))
        return out

    def decompose_dict(self, x):
        d = {}
        for c, left, pos, right in self.decompose(x):
            key = (left, pos, right)
            d[key] = d.get(key, 0) + c
        return {k: v for k, v in d.items() if v}


def agd_dual_table(max_arity):
    return OperadTable(max_arity)


def agd_kdual_cooperad(max_arity):
    return CooperadTable(max_arity)


# ---------------------------------------------------------------- suspensions

def desuspension_sign(p, q, r):
    """S^{-c}: the coefficient of alpha_{p+r+1} o_(p+1) alpha_q, |alpha_n| = n-1."""
    return sign(r * (q - 1))


def suspension_sign(p, q, r):
    """S^c: the coefficient of beta_{p+r+1} o_(p+1) beta_q, |beta_n| = 1-n."""
    return sign(p * (q - 1))


def cooperad_from_table(table, max_arity):
    """Dualise Agd^! and take the Hadamard product with S^{-c}.

    The Koszul sign of moving alpha_q past the dual of the left factor is
    included; the result should be the decomposition of Agd^¡.
    """
    out = {}
    for n in range(1, max_arity + 1):
        for x in table.basis(n):
            out[x] = {}
    for n in range(1, max_arity + 1):
        for m in range(1, max_arity - n + 2):
            for y in table.basis(n):
                for z in table.basis(m):
                    for i in range(1, n + 1):
                        p, q, r = i - 1, m, n - i
                        twist = desuspension_sign(p, q, r) * sign((q - 1) * table.degree(y))
                        for x, c in table.compose(y, i, z).items():
                            key = (y, i, z)
                            out[x][key] = out[x].get(key, 0) + c * twist
    return {x: {k: v for k, v in d.items() if v} for x, d in out.items()}


def table_from_cooperad(cooperad, max_arity):
    """Twist Agd^¡ by S^c and dualise: returns {(y, i, z): {x: coef}}."""
    out = {}
    for n in range(1, max_arity + 1):
        for x in cooperad.basis(n):
            for c, y, pos, z in cooperad.decompose(x):
                p, q = pos - 1, z.arity
                r = y.arity - 1 - p
                twist = suspension_sign(p, q, r) * sign((1 - q) * cooperad.degree(y))
                entry = out.setdefault((y, pos, z), {})
                entry[x] = entry.get(x, 0) + c * twist
    return {k: {x: v for x, v in d.items() if v} for k, d in out.items()}


# ---------------------------------------------------------------- tree models

def mubar_tree(n):
    """Right comb ((mubar o2 mubar) o3 mubar)...; the leaf for n = 1."""
    if n == 1:
        return LEAF
    t = corolla("mubar", 2)
    for _ in range(n - 2):
        t = Tree.vertex("mubar", [LEAF, t])
    return t


def basis_tree(x):
    comb = mubar_tree(x.arity)
    if x.kind == "mu":
        return comb
    return Tree.vertex(x.kind + "bar", [comb])


@dataclass
class DualConsistencyReport:
    max_arity: int
    basis_dims: dict
    compositions_checked: int
    decompositions_checked: int

    @property
    def ok(self):
        return True

    def to_json(self):
        return {
            "max_arity": self.max_arity,
            "basis_dims": {str(k): v for k, v in sorted(self.basis_dims.items())},
            "compositions_checked": self.compositions_checked,
            "decompositions_checked": self.decompositions_checked,
            "consistent": True,
        }


def induced_composition(system, x, i, y):
    """Compose basis trees in the free operad and reduce to the Agd^! basis."""
    alpha = system.alphabet
    s, t = graft_signed(basis_tree(x), i, basis_tree(y), alpha)
    nf = normal_form(t, system)
    lookup = {basis_tree(Op(k, t.arity)): Op(k, t.arity) for k in KINDS}
    out = {}
    for tree, c in nf.terms.items():
        if tree not in lookup:
            raise InconsistencyFound(f"normal form of {x} o{i} {y} leaves the basis: {render(tree)}")
        out[lookup[tree]] = s * c
    return out


def verify_dual_consistency(max_arity, table=None, cooperad=None):
    """Cross-check the dual table against rewriting and against the cooperad."""
    table = table or agd_dual_table(max_arity)
    cooperad = cooperad or agd_kdual_cooperad(max_arity)
    system = rules_from_quadratic(agd_dual_presentation())
    dims = {}
    for n in range(1, max_arity + 1):
        found = reduced_basis(system, n, n + 1)
        expected = {basis_tree(x) for x in table.basis(n)}
        dims[n] = len(found)
        if set(found) != expected:
            raise InconsistencyFound(f"reduced basis in arity {n}: {[render(t) for t in found]}")
    checked = 0
    for n in range(1, max_arity + 1):
        for m in range(1, max_arity - n + 2):
            for x in table.basis(n):
                for y in table.basis(m):
                    for i in range(1, n + 1):
                        got = induced_composition(system, x, i, y)
                        want = {k: v for k, v in table.compose(x, i, y).items() if v}
                        if got != want:
                            raise InconsistencyFound(f"({x}, {i}, {y}): rewriting gives {got}, table {want}")
                        checked += 1
    dual = table_from_cooperad(cooperad, max_arity)
    dec = 0
    for n in range(1, max_arity + 1):
        for m in range(1, max_arity - n + 2):
            for y in table.basis(n):
                for z in table.basis(m):
                    for i in range(1, n + 1):
                        want = {k: v for k, v in table.compose(y, i, z).items() if v}
                        got = dual.get((y, i, z), {})
                        if got != want:
                            raise InconsistencyFound(f"({y}, {i}, {z}): cooperad dual gives {got}, table {want}")
                        dec += 1
    return DualConsistencyReport(max_arity, dims, checked, dec)


def check_operad_axioms(table, max_arity):
    """Identity and both associativity axioms (with Koszul sign) on all basis triples."""
    deg = table.degree
    one = table.identity

    def comp(a, i, b):
        # a, b are dicts {Op: coef}
        out = {}
        for x, c in a.items():
            for y, d in b.items():
                for z, e in table.compose(x, i, y).items():
                    out[z] = out.get(z, 0) + c * d * e
        return {k: v for k, v in out.items() if v}

    failures = []
    basis = table.all_basis()
    for x in basis:
        for i in range(1, x.arity + 1):
            if comp({x: 1}, i, {one: 1}) != {x: 1}:
                failures.append(("unit", x, i))
        if comp({one: 1}, 1, {x: 1}) != {x: 1}:
            failures.append(("unit", one, x))
    for lam in basis:
        for mu in basis:
            for nu in basis:
                l, m = lam.arity, mu.arity
                if l + m + nu.arity - 2 > max_arity:
                    continue
                for i in range(1, l + 1):
                    for j in range(1, m + 1):
                        lhs = comp(comp({lam: 1}, i, {mu: 1}), i - 1 + j, {nu: 1})
                        rhs = comp({lam: 1}, i, comp({mu: 1}, j, {nu: 1}))
                        if lhs != rhs:
                            failures.append(("sequential", lam, i, mu, j, nu))
                    for k in range(i + 1, l + 1):
                        lhs = comp(comp({lam: 1}, i, {mu: 1}), k - 1 + m, {nu: 1})
                        rhs = comp(comp({lam: 1}, k, {nu: 1}), i, {mu: 1})
                        s = sign(deg(mu) * deg(nu))
                        if lhs != {key: s * v for key, v in rhs.items()}:
                            failures.append(("parallel", lam, i, mu, k, nu))
    return failures
