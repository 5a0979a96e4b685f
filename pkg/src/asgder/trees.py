"""Planar tree monomials of a free nonsymmetric operad.

A tree is either the leaf ``LEAF`` or a vertex labelled by a generator with a
tuple of children.  Leaves are numbered 1..arity from left to right.  A tree
monomial stands for the element obtained by composing its vertices in preorder,
which fixes the Koszul signs when generators have odd degree.
"""
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, lru_cache

from .errors import InvalidPosition, MalformedElement
from .linalg import format_fraction, sign


@dataclass(frozen=True)
class Tree:
    label: object = None
    children: tuple = ()
    arity: int = field(default=1, compare=False, repr=False)
    weight: int = field(default=0, compare=False, repr=False)

    @classmethod
    def vertex(cls, label, children):
        children = tuple(children)
        return cls(label, children, sum(c.arity for c in children), 1 + sum(c.weight for c in children))

    @property
    def is_leaf(self):
        return self.label is None

    def vertices(self):
        """Labels in preorder."""
        if self.is_leaf:
            return []
        out = [self.label]
        for c in self.children:
            out.extend(c.vertices())
        return out

    def __repr__(self):
        return f"Tree({render(self)})"


LEAF = Tree()


@dataclass(frozen=True)
class Generator:
    name: str
    arity: int
    degree: int = 0


class Alphabet:
    """Generators with arities, degrees and a total order (first = smallest)."""

    def __init__(self, generators, order=None):
        self.generators = {g.name: g for g in generators}
        order = list(order) if order is not None else [g.name for g in generators]
        if sorted(order) != sorted(self.generators):
            raise MalformedElement("order must list each generator exactly once")
        self.order = order
        self.rank = {name: k for k, name in enumerate(order)}

    def __contains__(self, name):
        return name in self.generators

    def arity(self, name):
        return self.generators[name].arity

    def degree(self, name):
        return self.generators[name].degree

    def tree_degree(self, t):
        return sum(self.generators[v].degree for v in t.vertices())

    def corolla(self, name):
        return Tree.vertex(name, [LEAF] * self.arity(name))

    def with_order(self, order):
        return Alphabet(self.generators.values(), order)


def corolla(name, arity):
    return Tree.vertex(name, [LEAF] * arity)


def graft(t, i, s):
    """Plug s into the i-th leaf of t (no sign)."""
    if not 1 <= i <= t.arity:
        raise InvalidPosition(f"position {i} outside 1..{t.arity}")
    return _graft(t, i, s)


def _graft(t, i, s):
    if t.is_leaf:
        return s
    kids = []
    for c in t.children:
        if 1 <= i <= c.arity:
            kids.append(_graft(c, i, s))
        else:
            kids.append(c)
        i -= c.arity
    return Tree.vertex(t.label, kids)


def _degree_after_leaf(t, i, alpha):
    """Total degree of vertices of t that come after leaf i in preorder."""
    total = 0
    seen = [False]
    count = [0]

    def walk(u):
        nonlocal total
        if u.is_leaf:
            count[0] += 1
            if count[0] == i:
                seen[0] = True
            return
        if seen[0]:
            total += alpha.degree(u.label)
        for c in u.children:
            walk(c)

    walk(t)
    return total


def graft_signed(t, i, s, alpha):
    """t o_i s in the free operad: returns (sign, tree) in the preorder basis."""
    tree = graft(t, i, s)
    ds = alpha.tree_degree(s)
    if ds % 2 == 0:
        return 1, tree
    return sign(ds * _degree_after_leaf(t, i, alpha)), tree


def path_sequence(t):
    """Tuple of root-to-leaf label words, one per leaf."""
    if t.is_leaf:
        return ((),)
    out = []
    for c in t.children:
        for w in path_sequence(c):
            out.append((t.label,) + w)
    return tuple(out)


def compare_words(u, v, alpha, word_order="lex"):
    """Compare two label words.  ``lex``: letterwise, a proper prefix is smaller.
    ``deglex``: shorter words first, then letterwise."""
    if word_order == "deglex" and len(u) != len(v):
        return -1 if len(u) < len(v) else 1
    rank = alpha.rank
    for a, b in zip(u, v):
        if a != b:
            return -1 if rank[a] < rank[b] else 1
    return (len(u) > len(v)) - (len(u) < len(v))


def path_lex_compare(t1, t2, alpha, word_order="lex"):
    if t1.arity != t2.arity:
        return -1 if t1.arity < t2.arity else 1
    if t1.weight != t2.weight:
        return -1 if t1.weight < t2.weight else 1
    for u, v in zip(path_sequence(t1), path_sequence(t2)):
        c = compare_words(u, v, alpha, word_order)
        if c:
            return c
    # same path sequence; fall back to a structural comparison so that the order is total
    r1, r2 = render(t1), render(t2)
    return (r1 > r2) - (r1 < r2)


def sort_key(alpha, word_order="lex"):
    return cmp_to_key(lambda a, b: path_lex_compare(a, b, alpha, word_order))


def enumerate_monomials(alpha, arity, max_weight):
    """All tree monomials of the given arity and weight <= max_weight, in path-lex order."""
    gens = [(g.name, g.arity) for g in alpha.generators.values()]

    @lru_cache(maxsize=None)
    def trees(n, w):
        if w == 0:
            return (LEAF,) if n == 1 else ()
        out = []
        for name, a in gens:
            for kids in forests(a, n, w - 1):
                out.append(Tree.vertex(name, kids))
        return tuple(out)

    @lru_cache(maxsize=None)
    def forests(k, n, w):
        # k trees with total arity n and total weight w
        if k == 0:
            return ((),) if n == 0 and w == 0 else ()
        out = []
        for n1 in range(1, n - k + 2):
            for w1 in range(w + 1):
                for t in trees(n1, w1):
                    for rest in forests(k - 1, n - n1, w - w1):
                        out.append((t,) + rest)
        return tuple(out)

    result = [t for w in range(max_weight + 1) for t in trees(arity, w)]
    return sorted(result, key=sort_key(alpha))


def monomials_of_weight(alpha, weight, max_arity=None):
    """All tree monomials with exactly ``weight`` vertices (any arity)."""
    top = max((g.arity for g in alpha.generators.values()), default=1)
    if max_arity is None:
        max_arity = max(1, weight * (top - 1) + 1)
    out = []
    for n in range(1, max_arity + 1):
        out.extend(t for t in enumerate_monomials(alpha, n, weight) if t.weight == weight)
    return out


def occurrences(t):
    """Weight-2 subtrees: (address, child position, parent label, child label).

    The address is the path of child positions (1-based) from the root.
    """
    out = []

    def walk(u, addr):
        if u.is_leaf:
            return
        for c, child in enumerate(u.children, 1):
            if not child.is_leaf:
                out.append((addr, c, u.label, child.label))
        for c, child in enumerate(u.children, 1):
            walk(child, addr + (c,))

    walk(t, ())
    return out


def subtree_at(t, addr):
    for c in addr:
        t = t.children[c - 1]
    return t


def replace_at(t, addr, new):
    if not addr:
        return new
    kids = list(t.children)
    kids[addr[0] - 1] = replace_at(kids[addr[0] - 1], addr[1:], new)
    return Tree.vertex(t.label, kids)


# ---------------------------------------------------------------- polynomials

class TreePoly:
    """Finite linear combination of tree monomials with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for t, c in items:
                self.add_term(t, c)

    @classmethod
    def monomial(cls, t, c=1):
        return cls({t: c})

    def add_term(self, t, c):
        c = Fraction(c)
        if not c:
            return
        v = self.terms.get(t, 0) + c
        if v:
            self.terms[t] = v
        else:
            self.terms.pop(t, None)

    def __add__(self, other):
        out = TreePoly(self.terms)
        for t, c in other.terms.items():
            out.add_term(t, c)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return TreePoly({t: c * v for t, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, TreePoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def sorted_terms(self, alpha, descending=True):
        key = sort_key(alpha)
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]), reverse=descending)

    def leading(self, alpha):
        return self.sorted_terms(alpha)[0] if self.terms else None

    def render(self, alpha=None):
        if not self.terms:
            return "0"
        items = self.sorted_terms(alpha) if alpha else sorted(self.terms.items(), key=lambda kv: render(kv[0]))
        parts = []
        for t, c in items:
            body = render(t)
            if c == 1:
                parts.append(("+", body))
            elif c == -1:
                parts.append(("-", body))
            elif c > 0:
                parts.append(("+", f"{format_fraction(c)} {body}"))
            else:
                parts.append(("-", f"{format_fraction(-c)} {body}"))
        s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sg, body in parts[1:]:
            s += f" {sg} {body}"
        return s

    def __repr__(self):
        return f"TreePoly({self.render()})"


# ---------------------------------------------------------------- rendering

def render(t):
    """Left-nested composition expression, vertices attached in preorder.

    ``mu`` with ``delta`` in slot 1 and ``mu`` in slot 2 renders as
    ``(mu o1 delta) o2 mu``.  The identity renders as ``id``.
    """
    if t.is_leaf:
        return "id"
    expr = t.label
    current = corolla(t.label, len(t.children))
    # pending: (leaf index in current tree, subtree to attach there)
    steps = []

    def attach(u, offset):
        # u is a subtree whose root already sits in `current`; offset = number of
        # leaves of `current` strictly left of u's first leaf
        nonlocal current
        pos = offset
        for child in u.children:
            if child.is_leaf:
                pos += 1
            else:
                steps.append((pos + 1, child.label))
                current = graft(current, pos + 1, corolla(child.label, len(child.children)))
                attach(child, pos)
                pos += child.arity

    attach(t, 0)
    for k, (pos, label) in enumerate(steps):
        expr = f"{expr} o{pos} {label}" if k == 0 else f"({expr}) o{pos} {label}"
    return expr


_TOKEN = re.compile(r"\s*(?:(\()|(\))|o(\d+)|∘(\d+)|([A-Za-z_][A-Za-z_0-9]*))")


def parse_signed(text, alpha):
    """Parse ``(mu o1 delta) o2 mu`` or ``delta o1 (mu o1 mu)`` into (sign, tree).

    Each ``o_i`` is the signed partial composition of the free operad, so the
    sign is only nontrivial for odd generators.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise MalformedElement(f"cannot parse tree at column {pos + 1}: {text!r}")
        pos = m.end()
        if m.group(1):
            tokens.append("(")
        elif m.group(2):
            tokens.append(")")
        elif m.group(3) or m.group(4):
            tokens.append(int(m.group(3) or m.group(4)))
        else:
            tokens.append(m.group(5))
    k = 0

    def atom():
        nonlocal k
        if k >= len(tokens):
            raise MalformedElement(f"unexpected end of expression: {text!r}")
        tok = tokens[k]
        k += 1
        if tok == "(":
            st = expr()
            if k >= len(tokens) or tokens[k] != ")":
                raise MalformedElement(f"missing ')' in {text!r}")
            k += 1
            return st
        if tok == "id":
            return 1, LEAF
        if isinstance(tok, str) and tok in alpha:
            return 1, alpha.corolla(tok)
        raise MalformedElement(f"unknown symbol {tok!r} in {text!r}")

    def expr():
        nonlocal k
        s, t = atom()
        while k < len(tokens) and isinstance(tokens[k], int):
            i = tokens[k]
            k += 1
            s2, u = atom()
            s3, t = graft_signed(t, i, u, alpha)
            s *= s2 * s3
        return s, t

    st = expr()
    if k != len(tokens):
        raise MalformedElement(f"trailing input in {text!r}")
    return st


def parse_tree(text, alpha):
    return parse_signed(text, alpha)[1]


def parse_poly(text, alpha):
    """Parse ``a + b - 2 c`` where each summand is a tree expression (unsigned grafting)."""
    out = TreePoly()
    depth = 0
    cur = ""
    parts = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0:
            parts.append(cur)
            cur = ch
        else:
            cur += ch
    parts.append(cur)
    for p in parts:
        p = p.strip()
        if not p:
            continue
        sg = 1
        if p[0] in "+-":
            sg = -1 if p[0] == "-" else 1
            p = p[1:].strip()
        m = re.match(r"^(\d+(?:/\d+)?)\s+(.*)$", p)
        c = Fraction(1)
        if m:
            c, p = Fraction(m.group(1)), m.group(2)
        s, t = parse_signed(p, alpha)
        out.add_term(t, s * sg * c)
    return out
