"""Rewriting systems for quadratic nonsymmetric operads.

Relators are linear combinations of weight-2 tree monomials.  After exact
elimination each relator yields a rule ``leading term -> smaller terms``.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import ConfluenceNotEstablished, DegenerateRelator, NotQuadratic, ResourceGuard
from .linalg import rref, sign
from .trees import (LEAF, Alphabet, Generator, Tree, TreePoly, monomials_of_weight, occurrences,
                    parse_poly, path_lex_compare, render, replace_at, sort_key, subtree_at)


def _pattern(t):
    """(parent label, child position, child label) of a weight-2 monomial."""
    for c, child in enumerate(t.children, 1):
        if not child.is_leaf:
            return t.label, c, child.label
    raise NotQuadratic(f"{render(t)} is not a weight-2 monomial")


@dataclass
class RewriteRule:
    lhs: Tree
    rhs: TreePoly

    @property
    def key(self):
        return _pattern(self.lhs)

    def render(self):
        return f"{render(self.lhs)} -> {self.rhs.render()}"


@dataclass
class QuadraticData:
    alphabet: Alphabet
    relators: list
    name: str = ""


@dataclass
class RewritingSystem:
    alphabet: Alphabet
    rules: dict  # pattern -> RewriteRule
    word_order: str = "lex"
    dropped: list = field(default_factory=list)

    def rule_for(self, pattern):
        return self.rules.get(pattern)

    def leading_terms(self):
        return [r.lhs for r in self.rules.values()]

    def sorted_rules(self):
        key = sort_key(self.alphabet, self.word_order)
        return sorted(self.rules.values(), key=lambda r: key(r.lhs))


def rules_from_quadratic(data, word_order="lex"):
    alpha = data.alphabet
    monos = set()
    for rel in data.relators:
        if rel.is_zero():
            raise DegenerateRelator("relator is zero")
        for t in rel.terms:
            if t.weight != 2:
                raise NotQuadratic(f"{render(t)} has weight {t.weight}")
            monos.add(t)
    key = sort_key(alpha, word_order)
    order = sorted(monos, key=key, reverse=True)  # column 0 = largest monomial
    col = {t: k for k, t in enumerate(order)}
    rows = [{col[t]: c for t, c in rel.terms.items()} for rel in data.relators]
    red = rref(rows)
    system = RewritingSystem(alpha, {}, word_order)
    if len(red) < len(rows):
        system.dropped = [k for k in range(len(rows) - len(red))]
    for pc, row in red:
        lead = order[pc]
        rhs = TreePoly({order[j]: -c for j, c in row.items() if j != pc})
        for t in rhs.terms:
            assert path_lex_compare(t, lead, alpha, word_order) < 0
        rule = RewriteRule(lead, rhs)
        system.rules[rule.key] = rule
    return system


def _fill(p, subtrees):
    """Put subtrees into the leaves of p, left to right."""
    it = iter(subtrees)

    def walk(u):
        if u.is_leaf:
            return next(it)
        return Tree.vertex(u.label, [walk(c) for c in u.children])

    return walk(p)


def apply_rule_at(t, occ, rule, alpha):
    """Rewrite monomial t at occurrence occ.  Returns a TreePoly."""
    addr, c, _, _ = occ
    v = subtree_at(t, addr)
    w = v.children[c - 1]
    subs = list(v.children[:c - 1]) + list(w.children) + list(v.children[c:])
    degs = [alpha.tree_degree(s) for s in subs]
    dw = alpha.degree(w.label)
    s_lhs = sign(dw * sum(degs[:c - 1])) if dw % 2 else 1
    out = TreePoly()
    for p, coef in rule.rhs.terms.items():
        _, b, y = _pattern(p)
        dy = alpha.degree(y)
        s_rhs = sign(dy * sum(degs[:b - 1])) if dy % 2 else 1
        out.add_term(replace_at(t, addr, _fill(p, subs)), coef * s_lhs * s_rhs)
    return out


def rewritable(t, system):
    return [o for o in occurrences(t) if (o[2], o[1], o[3]) in system.rules]


@dataclass
class Step:
    before: TreePoly
    monomial: Tree
    occurrence: tuple
    rule: RewriteRule
    after: TreePoly


def rewrite_once(poly, system, monomial, occ):
    rule = system.rules[(occ[2], occ[1], occ[3])]
    coef = poly.terms[monomial]
    rest = TreePoly(poly.terms)
    rest.add_term(monomial, -coef)
    return rest + apply_rule_at(monomial, occ, rule, system.alphabet).scale(coef), rule


def normal_form(poly, system, strategy="outermost", max_steps=100000, trace=None):
    """Rewrite until no leading term occurs.

    The largest reducible monomial is rewritten first; within it the first
    (``outermost``) or last (``innermost``) occurrence in preorder is used.
    """
    if isinstance(poly, Tree):
        poly = TreePoly.monomial(poly)
    key = sort_key(system.alphabet, system.word_order)
    steps = 0
    while True:
        target = None
        for t in sorted(poly.terms, key=key, reverse=True):
            occ = rewritable(t, system)
            if occ:
                target = (t, occ[0] if strategy == "outermost" else occ[-1])
                break
        if target is None:
            return poly
        steps += 1
        if steps > max_steps:
            raise ResourceGuard(f"rewriting did not terminate within {max_steps} steps")
        new, rule = rewrite_once(poly, system, *target)
        if trace is not None:
            trace.append(Step(poly, target[0], target[1], rule, new))
        poly = new


def critical_monomials(system):
    alpha = system.alphabet
    out = []
    for t in monomials_of_weight(alpha, 3):
        occ = occurrences(t)
        if len(occ) == 2 and all((o[2], o[1], o[3]) in system.rules for o in occ):
            out.append(t)
    return sorted(out, key=sort_key(alpha, system.word_order))


@dataclass
class Chain:
    first: tuple
    steps: list
    result: TreePoly


@dataclass
class CriticalReport:
    monomial: Tree
    chains: list

    @property
    def agrees(self):
        return all(c.result == self.chains[0].result for c in self.chains)


@dataclass
class ConfluenceReport:
    system: RewritingSystem
    critical: list

    @property
    def confluent(self):
        return all(c.agrees for c in self.critical)

    def to_json(self):
        alpha = self.system.alphabet
        return {
            "confluent": self.confluent,
            "order": list(alpha.order),
            "word_order": self.system.word_order,
            "rules": [r.render() for r in self.system.sorted_rules()],
            "critical_monomials": [
                {
                    "monomial": render(c.monomial),
                    "agrees": c.agrees,
                    "chains": [
                        {
                            "first_step_at": render(_occurrence_tree(c.monomial, ch.first)),
                            "terms": [s.after.render(alpha) for s in ch.steps],
                            "normal_form": ch.result.render(alpha),
                        }
                        for ch in c.chains
                    ],
                }
                for c in self.critical
            ],
        }


def _occurrence_tree(t, occ):
    addr, c, _, _ = occ
    v = subtree_at(t, addr)
    kids = [LEAF] * len(v.children)
    w = v.children[c - 1]
    kids[c - 1] = Tree.vertex(w.label, [LEAF] * len(w.children))
    return Tree.vertex(v.label, kids)


def reduce_critical(t, system, strategy="outermost"):
    chains = []
    start = TreePoly.monomial(t)
    for occ in rewritable(t, system):
        first, rule = rewrite_once(start, system, t, occ)
        steps = [Step(start, t, occ, rule, first)]
        result = normal_form(first, system, strategy, trace=steps)
        chains.append(Chain(occ, steps, result))
    return CriticalReport(t, chains)


def check_confluence(system, strategy="outermost"):
    return ConfluenceReport(system, [reduce_critical(t, system, strategy) for t in critical_monomials(system)])


def require_confluent(system):
    rep = check_confluence(system)
    if not rep.confluent:
        bad = [render(c.monomial) for c in rep.critical if not c.agrees]
        raise ConfluenceNotEstablished(f"critical monomials do not reduce uniquely: {bad}")
    return rep


def reduced_basis(system, arity, max_weight):
    """Tree monomials of the given arity and weight <= max_weight avoiding every leading term.

    Generation prunes forbidden parent/child pairs, so large arities stay cheap.
    """
    alpha = system.alphabet
    gens = [(g.name, g.arity) for g in alpha.generators.values()]
    forbidden = set(system.rules)

    @lru_cache(maxsize=None)
    def trees(n, w):
        if w == 0:
            return (LEAF,) if n == 1 else ()
        out = []
        for name, a in gens:
            for kids in forests(name, 1, a, n, w - 1):
                out.append(Tree.vertex(name, kids))
        return tuple(out)

    @lru_cache(maxsize=None)
    def forests(parent, pos, k, n, w):
        if pos > k:
            return ((),) if n == 0 and w == 0 else ()
        out = []
        remaining = k - pos
        for n1 in range(1, n - remaining + 1):
            for w1 in range(w + 1):
                for t in trees(n1, w1):
                    if not t.is_leaf and (parent, pos, t.label) in forbidden:
                        continue
                    for rest in forests(parent, pos + 1, k, n - n1, w - w1):
                        out.append((t,) + rest)
        return tuple(out)

    result = [t for w in range(max_weight + 1) for t in trees(arity, w)]
    return sorted(result, key=sort_key(alpha, system.word_order))


# ---------------------------------------------------------------- presets

def agd_alphabet():
    gens = [Generator("mu", 2, 0), Generator("h", 1, 0), Generator("delta", 1, 0)]
    return Alphabet(gens, ["mu", "h", "delta"])


def agd_dual_alphabet():
    gens = [Generator("mubar", 2, 0), Generator("hbar", 1, -1), Generator("deltabar", 1, -1)]
    return Alphabet(gens, ["deltabar", "hbar", "mubar"])


def as_alphabet():
    return Alphabet([Generator("mu", 2, 0)], ["mu"])


AGD_RELATORS = [
    "mu o1 mu - mu o2 mu",
    "h o1 mu - mu o1 h - mu o2 h",
    "delta o1 mu - mu o1 delta - mu o2 h",
]

AGD_DUAL_RELATORS = [
    "mubar o1 mubar - mubar o2 mubar",
    "mubar o1 hbar - hbar o1 mubar",
    "mubar o1 deltabar - deltabar o1 mubar",
    "mubar o2 hbar - deltabar o1 mubar - hbar o1 mubar",
    "mubar o2 deltabar",
    "hbar o1 hbar",
    "hbar o1 deltabar",
    "deltabar o1 deltabar",
    "deltabar o1 hbar",
]


def preset(name):
    if name == "agd":
        alpha, rels = agd_alphabet(), AGD_RELATORS
    elif name == "agd-dual":
        alpha, rels = agd_dual_alphabet(), AGD_DUAL_RELATORS
    elif name == "as":
        alpha, rels = as_alphabet(), AGD_RELATORS[:1]
    else:
        raise ValueError(f"unknown preset {name!r}")
    return QuadraticData(alpha, [parse_poly(r, alpha) for r in rels], name)


def quadratic_from_json(obj):
    """{"generators": [{"name", "arity", "degree"}], "order": [...], "relators": ["mu o1 mu - ..."]}"""
    from .errors import MalformedElement
    try:
        gens = [Generator(g["name"], int(g["arity"]), int(g.get("degree", 0))) for g in obj["generators"]]
        alpha = Alphabet(gens, obj.get("order"))
        rels = [parse_poly(r, alpha) for r in obj["relators"]]
    except (KeyError, TypeError) as exc:
        raise MalformedElement(f"bad quadratic data: {exc}") from exc
    return QuadraticData(alpha, rels, obj.get("name", ""))
