"""Finite-dimensional AsGDer triples, their modules and morphisms."""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import InvalidModule, NotRealizable, TruncationOverflow
from .linalg import ZERO, format_fraction
from .multimap import GradedSpace, MultiMap, vec_add, vec_iadd


def _vec_str(v, labels):
    if not v:
        return "0"
    return " + ".join(f"{format_fraction(c)}*{labels[i]}" for i, c in sorted(v.items()))


def apply_linear(table, v):
    """Apply a linear map given as {index: vector} to a sparse vector."""
    out = {}
    for i, c in v.items():
        img = table.get(i)
        if img:
            vec_iadd(out, img, c)
    return out


def bilinear(table, u, v):
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            img = table.get((i, j))
            if img:
                vec_iadd(out, img, a * b)
    return out


def unit_vector(i):
    return {i: Fraction(1)}


@dataclass
class Violation:
    identity: str
    inputs: tuple
    lhs: dict
    rhs: dict

    def to_json(self, labels):
        return {
            "identity": self.identity,
            "inputs": [labels[i] for i in self.inputs],
            "lhs": _vec_str(self.lhs, labels),
            "rhs": _vec_str(self.rhs, labels),
        }


class AsGDerTriple:
    """An algebra (A, mu) with linear maps h and delta, all given by structure constants.

    ``mu`` is {(i, j): vector}, ``h`` and ``delta`` are {i: vector}; vectors are
    sparse dicts {index: Fraction}.  Validity is not assumed; see
    :func:`validate_triple`.
    """

    def __init__(self, space, mu, h, delta, unit=None):
        if isinstance(space, int):
            space = GradedSpace.ungraded(space)
        self.space = space
        self.mu = {tuple(k): {a: Fraction(b) for a, b in v.items() if b} for k, v in mu.items()}
        self.mu = {k: v for k, v in self.mu.items() if v}
        self.h = {k: {a: Fraction(b) for a, b in v.items() if b} for k, v in h.items()}
        self.h = {k: v for k, v in self.h.items() if v}
        self.delta = {k: {a: Fraction(b) for a, b in v.items() if b} for k, v in delta.items()}
        self.delta = {k: v for k, v in self.delta.items() if v}
        self.unit = unit
        self._maps = None

    @property
    def dim(self):
        return self.space.dim

    @property
    def labels(self):
        return self.space.labels

    def mul(self, u, v):
        return bilinear(self.mu, u, v)

    def apply_h(self, v):
        return apply_linear(self.h, v)

    def apply_delta(self, v):
        return apply_linear(self.delta, v)

    def maps(self):
        """(mu, h, delta) as MultiMaps."""
        if self._maps is None:
            s = self.space
            self._maps = (
                MultiMap(s, 2, 0, self.mu, check=False),
                MultiMap(s, 1, 0, {(i,): v for i, v in self.h.items()}, check=False),
                MultiMap(s, 1, 0, {(i,): v for i, v in self.delta.items()}, check=False),
            )
        return self._maps

    def with_maps(self, mu=None, h=None, delta=None):
        return AsGDerTriple(self.space, self.mu if mu is None else mu, self.h if h is None else h,
                            self.delta if delta is None else delta, self.unit)

    @classmethod
    def from_maps(cls, mu, h, delta, unit=None):
        return cls(mu.space, dict(mu.table), {k[0]: v for k, v in h.table.items()},
                   {k[0]: v for k, v in delta.table.items()}, unit)

    def __repr__(self):
        return f"AsGDerTriple(dim={self.dim})"


def _nonzero_pairs(mu):
    return [k for k, v in mu.items() if v]


def validate_associative(t):
    out = []
    n = t.dim
    seen = set()
    e = unit_vector
    for (i, j) in _nonzero_pairs(t.mu):
        for k in range(n):
            seen.add((i, j, k))
    for (j, k) in _nonzero_pairs(t.mu):
        for i in range(n):
            seen.add((i, j, k))
    for (i, j, k) in sorted(seen):
        lhs = t.mul(t.mul(e(i), e(j)), e(k))
        rhs = t.mul(e(i), t.mul(e(j), e(k)))
        if lhs != rhs:
            out.append(Violation("(ab)c = a(bc)", (i, j, k), lhs, rhs))
    return out


def validate_derivation(t, hmap, name="h(ab) = h(a)b + a h(b)"):
    out = []
    e = unit_vector
    n = t.dim
    for i in range(n):
        for j in range(n):
            lhs = apply_linear(hmap, t.mul(e(i), e(j)))
            rhs = vec_add(t.mul(apply_linear(hmap, e(i)), e(j)), t.mul(e(i), apply_linear(hmap, e(j))))
            if lhs != rhs:
                out.append(Violation(name, (i, j), lhs, rhs))
    return out


def validate_generalized(t):
    out = []
    e = unit_vector
    n = t.dim
    for i in range(n):
        for j in range(n):
            lhs = t.apply_delta(t.mul(e(i), e(j)))
            rhs = vec_add(t.mul(t.apply_delta(e(i)), e(j)), t.mul(e(i), t.apply_h(e(j))))
            if lhs != rhs:
                out.append(Violation("delta(ab) = delta(a)b + a h(b)", (i, j), lhs, rhs))
    return out


def validate_unit(t):
    """With a declared unit: 1 is two-sided and delta(a) = delta(1) a + h(a)."""
    if t.unit is None:
        return []
    out = []
    one = unit_vector(t.unit)
    d1 = t.apply_delta(one)
    for i in range(t.dim):
        a = unit_vector(i)
        if t.mul(one, a) != a or t.mul(a, one) != a:
            out.append(Violation("1a = a = a1", (t.unit, i), t.mul(one, a), a))
        lhs = t.apply_delta(a)
        rhs = vec_add(t.mul(d1, a), t.apply_h(a))
        if lhs != rhs:
            out.append(Violation("delta(a) = delta(1)a + h(a)", (i,), lhs, rhs))
    return out


def validate_triple(t):
    """All violated instances of the triple axioms (empty list means valid)."""
    return (validate_associative(t) + validate_derivation(t, t.h) + validate_generalized(t)
            + validate_unit(t))


def validate_assder_pair(t):
    """(A, h) is an associative algebra with a derivation; delta is ignored."""
    return validate_associative(t) + validate_derivation(t, t.h)


# ---------------------------------------------------------------- modules

class GDerModule:
    """Bimodule M over A with maps hM, deltaM.

    ``left`` is {(a, m): vector in M}, ``right`` is {(m, a): vector in M},
    ``hM`` and ``deltaM`` are {m: vector in M}.
    """

    def __init__(self, space, left, right, hM, deltaM):
        if isinstance(space, int):
            space = GradedSpace.ungraded(space)
        self.space = space

        def clean(d):
            d = {k: {a: Fraction(b) for a, b in v.items() if b} for k, v in d.items()}
            return {k: v for k, v in d.items() if v}

        self.left = clean(left)
        self.right = clean(right)
        self.hM = clean(hM)
        self.deltaM = clean(deltaM)

    @property
    def dim(self):
        return self.space.dim

    @classmethod
    def regular(cls, t):
        """A as a module over itself."""
        return cls(t.space, t.mu, t.mu, t.h, t.delta)

    @classmethod
    def zero(cls):
        return cls(GradedSpace.ungraded(0), {}, {}, {}, {})

    def act_left(self, a, m):
        return bilinear(self.left, a, m)

    def act_right(self, m, a):
        return bilinear(self.right, m, a)


def validate_module(t, mod):
    out = []
    e = unit_vector
    A, M = range(t.dim), range(mod.dim)
    L, R = mod.act_left, mod.act_right
    for a, b, m in product(A, A, M):
        lhs = L(t.mul(e(a), e(b)), e(m))
        rhs = L(e(a), L(e(b), e(m)))
        if lhs != rhs:
            out.append(Violation("(ab)m = a(bm)", ("A", a, "A", b, "M", m), lhs, rhs))
        lhs = R(R(e(m), e(a)), e(b))
        rhs = R(e(m), t.mul(e(a), e(b)))
        if lhs != rhs:
            out.append(Violation("(ma)b = m(ab)", ("M", m, "A", a, "A", b), lhs, rhs))
    for a, m, b in product(A, M, A):
        lhs = R(L(e(a), e(m)), e(b))
        rhs = L(e(a), R(e(m), e(b)))
        if lhs != rhs:
            out.append(Violation("(am)b = a(mb)", ("A", a, "M", m, "A", b), lhs, rhs))
    hM = lambda v: apply_linear(mod.hM, v)
    dM = lambda v: apply_linear(mod.deltaM, v)
    for a, m in product(A, M):
        ea, em = e(a), e(m)
        checks = [
            ("hM(am) = h(a)m + a hM(m)", hM(L(ea, em)), vec_add(L(t.apply_h(ea), em), L(ea, hM(em))), ("A", a, "M", m)),
            ("hM(ma) = hM(m)a + m h(a)", hM(R(em, ea)), vec_add(R(hM(em), ea), R(em, t.apply_h(ea))), ("M", m, "A", a)),
            ("deltaM(am) = delta(a)m + a hM(m)", dM(L(ea, em)), vec_add(L(t.apply_delta(ea), em), L(ea, hM(em))), ("A", a, "M", m)),
            ("deltaM(ma) = deltaM(m)a + m h(a)", dM(R(em, ea)), vec_add(R(dM(em), ea), R(em, t.apply_h(ea))), ("M", m, "A", a)),
        ]
        for name, lhs, rhs, inputs in checks:
            if lhs != rhs:
                out.append(Violation(name, inputs, lhs, rhs))
    return out


def semidirect(t, mod, check=True):
    """A ⋉ M with (a, m)(b, n) = (ab, an + mb), h + hM and delta + deltaM."""
    if check:
        bad = validate_module(t, mod)
        if bad:
            v = bad[0]
            raise InvalidModule(f"module axiom {v.identity} fails at {v.inputs}")
    n = t.dim
    space = GradedSpace(tuple(f"a:{x}" for x in t.labels) + tuple(f"m:{x}" for x in mod.space.labels),
                        (0,) * (n + mod.dim))
    shift = lambda v: {k + n: c for k, c in v.items()}
    mu = dict(t.mu)
    for (a, m), v in mod.left.items():
        mu[(a, m + n)] = shift(v)
    for (m, a), v in mod.right.items():
        mu[(m + n, a)] = shift(v)
    h = dict(t.h)
    h.update({m + n: shift(v) for m, v in mod.hM.items()})
    delta = dict(t.delta)
    delta.update({m + n: shift(v) for m, v in mod.deltaM.items()})
    return AsGDerTriple(space, mu, h, delta)


# ---------------------------------------------------------------- morphisms

@dataclass
class TripleMorphism:
    source: AsGDerTriple
    target: AsGDerTriple
    images: dict  # source basis index -> vector in target

    def __call__(self, v):
        return apply_linear(self.images, v)


def validate_morphism(f, product_ok=None, unary_ok=None):
    """Multiplicativity and compatibility with h and delta on basis elements.

    ``product_ok(i, j)`` / ``unary_ok(i)`` restrict the check to pairs or
    elements where the source operation is not affected by a truncation.
    """
    src, tgt = f.source, f.target
    e = unit_vector
    out = []
    for i in range(src.dim):
        for j in range(src.dim):
            if product_ok and not product_ok(i, j):
                continue
            lhs = f(src.mul(e(i), e(j)))
            rhs = tgt.mul(f(e(i)), f(e(j)))
            if lhs != rhs:
                out.append(Violation("f(ab) = f(a)f(b)", (i, j), lhs, rhs))
    for i in range(src.dim):
        if unary_ok and not unary_ok(i):
            continue
        for name, ms, mt in (("h", src.apply_h, tgt.apply_h), ("delta", src.apply_delta, tgt.apply_delta)):
            lhs = mt(f(e(i)))
            rhs = f(ms(e(i)))
            if lhs != rhs:
                out.append(Violation(f"{name}_B f = f {name}_A", (i,), lhs, rhs))
    return out


# ---------------------------------------------------------------- examples

@dataclass
class InnerReport:
    triple: AsGDerTriple
    convention: str


def inner_generalized(t, a, b):
    """delta(x) = ax + xb with h = ad_b; the commutator sign is the one that validates.

    ``t`` only needs an associative multiplication; its h and delta are ignored.
    """
    a = {k: Fraction(v) for k, v in a.items() if v}
    b = {k: Fraction(v) for k, v in b.items() if v}
    n = t.dim
    delta = {i: vec_add(t.mul(a, unit_vector(i)), t.mul(unit_vector(i), b)) for i in range(n)}
    candidates = [
        ("h(x) = xb - bx", {i: vec_add(t.mul(unit_vector(i), b), t.mul(b, unit_vector(i)), -1) for i in range(n)}),
        ("h(x) = bx - xb", {i: vec_add(t.mul(b, unit_vector(i)), t.mul(unit_vector(i), b), -1) for i in range(n)}),
    ]
    for name, h in candidates:
        cand = AsGDerTriple(t.space, t.mu, h, delta, t.unit)
        if not validate_triple(cand):
            return InnerReport(cand, name)
    raise NotRealizable("no sign of ad_b makes delta_{a,b} a generalized derivation")


def words(max_len, letters, min_len=1):
    out = []
    cur = [()]
    for length in range(1, max_len + 1):
        cur = [w + (x,) for w in cur for x in letters]
        if length >= min_len:
            out.extend(cur)
    return out


def _word_label(w, names):
    return "(" + "⊗".join(names[i] for i in w) + ")"


def tensor_triple(dimV, d, delta0, max_len):
    """Truncated reduced tensor algebra with d extended as a derivation and
    delta0 in the first slot, d elsewhere.

    ``d`` and ``delta0`` map a generator index to {word (tuple): coefficient}.
    """
    L = max_len
    for name, m in (("d", d), ("delta0", delta0)):
        for v, img in m.items():
            for w in img:
                if len(w) > L:
                    raise TruncationOverflow(f"{name}({v}) has a word of length {len(w)} > {L}")
    basis = words(L, range(dimV))
    index = {w: k for k, w in enumerate(basis)}
    names = [f"v{i + 1}" for i in range(dimV)]
    space = GradedSpace.ungraded([_word_label(w, names) for w in basis])
    mu = {}
    for u in basis:
        for v in basis:
            if len(u) + len(v) <= L:
                mu[(index[u], index[v])] = {index[u + v]: 1}

    def extend(w, first):
        out = {}
        for pos, x in enumerate(w):
            img = (first if pos == 0 else d).get(x, {})
            for word, c in img.items():
                nw = w[:pos] + tuple(word) + w[pos + 1:]
                if len(nw) <= L:
                    k = index[nw]
                    out[k] = out.get(k, 0) + Fraction(c)
        return {k: c for k, c in out.items() if c}

    h = {index[w]: extend(w, d) for w in basis}
    delta = {index[w]: extend(w, delta0) for w in basis}
    return AsGDerTriple(space, mu, h, delta)


@dataclass
class FreeTriple:
    triple: AsGDerTriple
    basis: list  # tuples of (word over "xy", generator index)
    dimV: int
    word_len: int
    tensor_len: int

    def index(self, elem):
        return self._index[elem]

    def __post_init__(self):
        self._index = {b: k for k, b in enumerate(self.basis)}


def free_triple(dimV, word_len, tensor_len):
    """The AsGDer triple on T̄(k<x,y> ⊗ V), truncated in word length and tensor length.

    A basis element is a tuple of factors (g, v); h puts x in front of one g_i
    (summed over i), delta puts y in front of g_1 and x in front of the others.
    """
    W, L = word_len, tensor_len
    factors = [(g, v) for g in [""] + ["".join(w) for w in words(W, "xy")] for v in range(dimV)]
    basis = [tuple(f) for n in range(1, L + 1) for f in product(factors, repeat=n)]
    index = {b: k for k, b in enumerate(basis)}

    def label(b):
        return "⊗".join(f"{g or '1'}v{v + 1}" for g, v in b)

    space = GradedSpace.ungraded([label(b) for b in basis])
    mu = {}
    for u in basis:
        for v in basis:
            if len(u) + len(v) <= L:
                mu[(index[u], index[v])] = {index[u + v]: 1}

    def prepend(b, pos, letter):
        g, v = b[pos]
        if len(g) + 1 > W:
            return None
        return b[:pos] + ((letter + g, v),) + b[pos + 1:]

    h, delta = {}, {}
    for b in basis:
        hv, dv = {}, {}
        for pos in range(len(b)):
            nb = prepend(b, pos, "x")
            if nb is not None:
                hv[index[nb]] = hv.get(index[nb], 0) + 1
            nb = prepend(b, pos, "y" if pos == 0 else "x")
            if nb is not None:
                dv[index[nb]] = dv.get(index[nb], 0) + 1
        h[index[b]] = hv
        delta[index[b]] = dv
    return FreeTriple(AsGDerTriple(space, mu, h, delta), basis, dimV, W, L)


def free_extension(free, target, phi):
    """The extension of phi: V -> B given by gv -> h^{i1} delta^{j1} ... phi(v),
    multiplied out over tensor factors."""
    images = {}
    for k, b in enumerate(free.basis):
        val = None
        for g, v in b:
            x = dict(phi.get(v, {}))
            for letter in reversed(g):
                x = target.apply_h(x) if letter == "x" else target.apply_delta(x)
            val = x if val is None else target.mul(val, x)
        images[k] = val
    return TripleMorphism(free.triple, target, images)


def free_extension_by_generation(free, target, phi):
    """Build the same morphism by closing {1v} under h, delta and products of the
    free triple, checking that every route to a basis element agrees."""
    src = free.triple
    images = {}
    conflicts = []

    def record(k, val):
        if k in images:
            if images[k] != val:
                conflicts.append(k)
        else:
            images[k] = val

    for v in range(free.dimV):
        record(free.index((("", v),)), dict(phi.get(v, {})))
    frontier = list(images)
    singles = set()
    while frontier:
        nxt = []
        for k in frontier:
            if len(free.basis[k]) != 1:
                continue
            singles.add(k)
            for op_src, op_tgt in ((src.h, target.apply_h), (src.delta, target.apply_delta)):
                out = op_src.get(k, {})
                if len(out) == 1:
                    (j, c), = out.items()
                    if c == 1:
                        before = j in images
                        record(j, op_tgt(images[k]))
                        if not before:
                            nxt.append(j)
        frontier = nxt
    # products of known elements, shortest first
    changed = True
    while changed:
        changed = False
        known = list(images)
        for i in known:
            for j in known:
                out = src.mu.get((i, j))
                if out:
                    (k, _), = out.items()
                    before = k in images
                    record(k, target.mul(images[i], images[j]))
                    changed |= not before
    return TripleMorphism(src, target, images), conflicts


def free_truncation_filters(free):
    """Predicates marking where the truncated source operations are exact."""
    def product_ok(i, j):
        return len(free.basis[i]) + len(free.basis[j]) <= free.tensor_len

    def unary_ok(i):
        return all(len(g) < free.word_len for g, _ in free.basis[i])

    return product_ok, unary_ok
