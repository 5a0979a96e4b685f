"""The graded Lie algebra L_Agd(V), the AsGDer complex and its comparison with the AssDer complex.

An element of L^{-k} is a triple (f1, f2, f3) of maps of arities k+1, k, k
(only f1 when k = 0).  Cochains of degree n live in L^{1-n}.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from .agd import Op
from .errors import InvalidModule, MalformedElement, ResourceGuard
from .homotopy import Coderivation, CofreeTrunc, projection
from .linalg import ZERO, nullspace, rank, sign
from .multimap import GradedSpace, MultiMap, compose_partial, vec_iadd
from .triples import GDerModule, semidirect, validate_module, validate_triple

DEFAULT_CAP = 20000


class LElem:
    """An element of L^{-k}_Agd(V)."""

    def __init__(self, k, f1, f2=None, f3=None):
        self.k = k
        self.space = f1.space
        if f1.arity != k + 1:
            raise MalformedElement(f"first component must have arity {k + 1}, got {f1.arity}")
        if k == 0:
            if (f2 is not None and not f2.is_zero()) or (f3 is not None and not f3.is_zero()):
                raise MalformedElement("L^0 has a single component")
            f2 = f3 = None
        else:
            f2 = f2 if f2 is not None else MultiMap.zero(self.space, k)
            f3 = f3 if f3 is not None else MultiMap.zero(self.space, k)
            if f2.arity != k or f3.arity != k:
                raise MalformedElement(f"second and third components must have arity {k}")
        self.f1, self.f2, self.f3 = f1, f2, f3

    @classmethod
    def zero(cls, space, k):
        return cls(k, MultiMap.zero(space, k + 1))

    def parts(self):
        return (self.f1,) if self.k == 0 else (self.f1, self.f2, self.f3)

    def is_zero(self):
        return all(p.is_zero() for p in self.parts())

    def __add__(self, other):
        if self.k != other.k:
            raise MalformedElement("adding elements of different degrees")
        if self.k == 0:
            return LElem(0, self.f1 + other.f1)
        return LElem(self.k, self.f1 + other.f1, self.f2 + other.f2, self.f3 + other.f3)

    def scale(self, c):
        if self.k == 0:
            return LElem(0, self.f1.scale(c))
        return LElem(self.k, self.f1.scale(c), self.f2.scale(c), self.f3.scale(c))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, LElem) and self.k == other.k and self.parts() == other.parts()

    def __repr__(self):
        return f"LElem(k={self.k}, {self.parts()})"


def structure_element(t):
    """(mu, h, delta) in L^{-1}."""
    mu, h, d = t.maps()
    return LElem(1, mu, h, d)


def _sum(space, arity, terms):
    out = MultiMap.zero(space, arity)
    for c, f, j, g in terms:
        if c and not f.is_zero() and not g.is_zero():
            term = compose_partial(f, j, g)
            out = out + (term if c == 1 else term.scale(c))
    return out


def lie_bracket(f, g):
    """The bracket of L_Agd(V), component by component."""
    if f.space != g.space:
        raise MalformedElement("bracket of elements on different spaces")
    n, m = f.k, g.k
    space = f.space
    mn = sign(m * n)
    f1, g1 = f.f1, g.f1
    terms = [(sign(m * (j - 1)), f1, j, g1) for j in range(1, n + 2)]
    terms += [(-mn * sign(n * (j - 1)), g1, j, f1) for j in range(1, m + 2)]
    psi1 = _sum(space, n + m + 1, terms)
    if n + m == 0:
        return LElem(0, psi1)
    t2, t3 = [], []
    if m >= 1:
        t2 += [(sign(n) * sign((m - 1) * (j - 1)), f1, j, g.f2) for j in range(1, n + 2)]
        t2 += [(-mn * sign((j - 1) * n), g.f2, j, f1) for j in range(1, m + 1)]
        t3 += [(sign(n), f1, 1, g.f3)]
        t3 += [(sign(n) * sign((m - 1) * (j - 1)), f1, j, g.f2) for j in range(2, n + 2)]
        t3 += [(-mn * sign((j - 1) * n), g.f3, j, f1) for j in range(1, m + 1)]
    if n >= 1:
        t2 += [(sign((j - 1) * m), f.f2, j, g1) for j in range(1, n + 1)]
        t2 += [(-mn * sign(m) * sign((n - 1) * (j - 1)), g1, j, f.f2) for j in range(1, m + 2)]
        t3 += [(sign((j - 1) * m), f.f3, j, g1) for j in range(1, n + 1)]
        t3 += [(-mn * sign(m), g1, 1, f.f3)]
        t3 += [(-mn * sign(m) * sign((n - 1) * (j - 1)), g1, j, f.f2) for j in range(2, m + 2)]
    return LElem(n + m, psi1, _sum(space, n + m, t2), _sum(space, n + m, t3))


def coderivation_of(f, coalgebra):
    """The coderivation of degree -k attached to f in L^{-k}."""
    psi = {Op("mu", f.k + 1): f.f1}
    if f.k >= 1:
        psi[Op("h", f.k)] = f.f2
        psi[Op("delta", f.k)] = f.f3
    return Coderivation(coalgebra, psi, -f.k)


def bracket_via_coderivations(f, g):
    """Transport the commutator of coderivations back to L_Agd(V)."""
    n, m = f.k, g.k
    k = n + m
    co = CofreeTrunc(f.space, k + 1)
    df, dg = coderivation_of(f, co), coderivation_of(g, co)
    s = sign(m * n)
    space = f.space

    def component(theta):
        table = {}
        for tup in space.tuples(theta.arity):
            e = {(theta, tup): Fraction(1)}
            val = dict(projection(df(dg(e))))
            vec_iadd(val, projection(dg(df(e))), -s)
            if val:
                table[tup] = val
        return MultiMap(space, theta.arity, 0, table, check=False)

    f1 = component(Op("mu", k + 1))
    if k == 0:
        return LElem(0, f1)
    return LElem(k, f1, component(Op("h", k)), component(Op("delta", k)))


def jacobi_defect(f, g, k):
    """[f,[g,k]] - [[f,g],k] - (-1)^{|f||g|}[g,[f,k]] with L-degrees |f| = -f.k."""
    lhs = lie_bracket(f, lie_bracket(g, k))
    rhs = lie_bracket(lie_bracket(f, g), k) + lie_bracket(g, lie_bracket(f, k)).scale(sign(f.k * g.k))
    return lhs - rhs


@dataclass
class MCReport:
    is_mc: bool
    violated: list
    validate_agrees: bool

    def to_json(self):
        return {"is_mc": self.is_mc, "violated_components": self.violated,
                "agrees_with_validate_triple": self.validate_agrees}


def mc_check(t):
    """Is [(mu,h,delta),(mu,h,delta)] = 0?  Compared against the axiom validator."""
    x = structure_element(t)
    b = lie_bracket(x, x)
    violated = [name for name, p in zip(("psi1", "psi2", "psi3"), b.parts()) if not p.is_zero()]
    is_mc = not violated
    valid = not validate_triple(t)
    return MCReport(is_mc, violated, is_mc == valid)


# ---------------------------------------------------------------- complexes

@dataclass
class DegreeData:
    n: int
    dim_C: int
    rank_d: int
    dim_Z: int
    dim_B: int
    dim_H: int

    def to_json(self):
        return {"degree": self.n, "dim_C": self.dim_C, "rank_d": self.rank_d,
                "dim_Z": self.dim_Z, "dim_B": self.dim_B, "dim_H": self.dim_H}


@dataclass
class ComplexReport:
    name: str
    degrees: list = field(default_factory=list)
    h1_kernel: int = None
    witnesses: dict = None

    def dim_H(self, n):
        for d in self.degrees:
            if d.n == n:
                return d.dim_H
        raise KeyError(n)

    @property
    def h1_agrees(self):
        return None if self.h1_kernel is None else self.h1_kernel == self.dim_H(1)

    def to_json(self):
        out = {"complex": self.name, "degrees": [d.to_json() for d in self.degrees]}
        if self.h1_kernel is not None:
            out["h1_kernel_description"] = self.h1_kernel
            out["h1_agrees"] = self.h1_agrees
        if self.witnesses is not None:
            out["witnesses"] = self.witnesses
        return out


class CochainComplex:
    """A finite cochain complex with an explicit basis in each degree.

    Subclasses provide ``basis(n)`` (sorted list of keys) and ``apply(n, vec)``.
    """

    name = "complex"
    cap = DEFAULT_CAP

    def basis(self, n):
        raise NotImplementedError

    def apply(self, n, vec):
        raise NotImplementedError

    def dim(self, n):
        return len(self.basis(n))

    def matrix(self, n):
        """Columns of the differential in degree n, as sparse dicts over basis(n+1) positions."""
        index = {k: i for i, k in enumerate(self.basis(n + 1))}
        cols = []
        for key in self.basis(n):
            img = self.apply(n, {key: Fraction(1)})
            col = {}
            for k, v in img.items():
                if k not in index:
                    raise MalformedElement(f"differential leaves the complex at {k}")
                col[index[k]] = v
            cols.append(col)
        return cols

    def rank_d(self, n):
        if n <= 0 or self.dim(n) == 0:
            return 0
        return rank(self.matrix(n))

    def guard(self, max_degree):
        size = self.dim(max_degree + 1)
        if size > self.cap:
            raise ResourceGuard(f"dim C^{max_degree + 1} = {size} exceeds the cap {self.cap}")

    def report(self, max_degree, witnesses=False):
        self.guard(max_degree)
        ranks = {0: 0}
        for n in range(1, max_degree + 1):
            ranks[n] = self.rank_d(n)
        degs = []
        for n in range(1, max_degree + 1):
            c = self.dim(n)
            z = c - ranks[n]
            b = ranks[n - 1]
            degs.append(DegreeData(n, c, ranks[n], z, b, z - b))
        rep = ComplexReport(self.name, degs)
        if witnesses:
            rep.witnesses = {str(n): self.cocycle_basis(n) for n in range(1, max_degree + 1)}
        return rep

    def cocycle_vectors(self, n):
        """A basis of Z^n as coordinate dicts over basis(n)."""
        basis = self.basis(n)
        cols = self.matrix(n)
        rows = {}
        for j, col in enumerate(cols):
            for i, v in col.items():
                rows.setdefault(i, {})[j] = v
        null = nullspace(list(rows.values()), len(basis))
        return [{basis[j]: v for j, v in enumerate(vec) if v} for vec in null]

    def coboundary_vectors(self, n):
        """Images d(e) of the basis of C^{n-1}; they span B^n."""
        out = []
        for key in self.basis(n - 1):
            img = self.apply(n - 1, {key: Fraction(1)})
            if img:
                out.append(img)
        return out

    def cocycle_basis(self, n):
        return [{_key_str(k): str(v) for k, v in vec.items()} for vec in self.cocycle_vectors(n)]

    def square(self, n, vec):
        return self.apply(n + 1, self.apply(n, vec))

    def square_zero_failures(self, max_degree):
        """Basis elements e of degree n <= max_degree with d(d(e)) != 0, via matrix products."""
        bad = []
        nxt = self.matrix(1) if max_degree >= 1 else []
        for n in range(1, max_degree + 1):
            cur, nxt = nxt, self.matrix(n + 1)
            basis = self.basis(n)
            for j, col in enumerate(cur):
                acc = {}
                for i, v in col.items():
                    vec_iadd(acc, nxt[i], v)
                if acc:
                    bad.append((n, basis[j]))
        return bad


def _key_str(key):
    c, tup, o = key
    return f"f{c + 1}{list(tup)}->{o}"


def _clean(vec):
    return {k: v for k, v in vec.items() if v}


class GDerComplex(CochainComplex):
    """The AsGDer complex C*(A, M).

    With ``mod=None`` the coefficients are A itself and the bracket is taken on
    A.  Otherwise the differential is the restriction of the one of A ⋉ M.
    """

    name = "AsGDer"

    def __init__(self, t, mod=None, check=True, cap=DEFAULT_CAP):
        self.triple = t
        self.cap = cap
        self.a = t.dim
        if mod is None:
            self.module = GDerModule.regular(t)
            self.work = t
            self.offset = 0
        else:
            if check and validate_module(t, mod):
                raise InvalidModule("module axioms fail")
            self.module = mod
            self.work = semidirect(t, mod, check=False)
            self.offset = t.dim
        self.m = self.module.dim
        self.space = self.work.space
        self.x = structure_element(self.work)
        self._basis = {}

    def basis(self, n):
        if n <= 0:
            return []
        b = self._basis.get(n)
        if b is None:
            A = GradedSpace.ungraded(self.a)
            comps = [(0, n)] if n == 1 else [(0, n), (1, n - 1), (2, n - 1)]
            b = [(c, tup, o) for c, ar in comps for tup in A.tuples(ar) for o in range(self.m)]
            self._basis[n] = b
        return b

    def to_elem(self, n, vec):
        tables = [{}, {}, {}]
        for (c, tup, o), v in vec.items():
            if v:
                tables[c].setdefault(tup, {})[o + self.offset] = v
        f1 = MultiMap(self.space, n, 0, tables[0], check=False)
        if n == 1:
            return LElem(0, f1)
        return LElem(n - 1, f1, MultiMap(self.space, n - 1, 0, tables[1], check=False),
                     MultiMap(self.space, n - 1, 0, tables[2], check=False))

    def from_elem(self, elem):
        out = {}
        for c, f in enumerate(elem.parts()):
            for tup, val in f.table.items():
                if any(x >= self.a for x in tup) or any(o < self.offset for o in val):
                    raise MalformedElement("cochain does not have A inputs and M outputs")
                for o, v in val.items():
                    out[(c, tup, o - self.offset)] = v
        return _clean(out)

    def apply_elem(self, n, elem):
        return lie_bracket(self.x, elem).scale(sign(n - 1))

    def apply(self, n, vec):
        return self.from_elem(self.apply_elem(n, self.to_elem(n, vec)))

    def expanded(self, n, vec):
        """The differential written out term by term (the degree 1 and degree n >= 2 formulas)."""
        f = self.to_elem(n, vec)
        mu, h, d = self.x.parts()
        sp = self.space
        cp = compose_partial
        if n == 1:
            g = f.f1
            out = LElem(1, cp(mu, 1, g) + cp(mu, 2, g) - cp(g, 1, mu), cp(h, 1, g) - cp(g, 1, h),
                        cp(d, 1, g) - cp(g, 1, d))
            return self.from_elem(out)
        f1, f2, f3 = f.parts()
        s = sign(n - 1)
        c1 = cp(mu, 2, f1) + cp(mu, 1, f1).scale(sign(n + 1))
        for i in range(1, n + 1):
            c1 = c1 + cp(f1, i, mu).scale(sign(i))
        c2 = cp(mu, 2, f2) + cp(mu, 1, f2).scale(sign(n))
        c3 = cp(mu, 2, f2) + cp(mu, 1, f3).scale(sign(n))
        for i in range(1, n):
            c2 = c2 + cp(f2, i, mu).scale(sign(i))
            c3 = c3 + cp(f3, i, mu).scale(sign(i))
        hs = MultiMap.zero(sp, n)
        for i in range(1, n + 1):
            hs = hs + cp(f1, i, h)
        c2 = c2 + (cp(h, 1, f1) - hs).scale(s)
        hs = MultiMap.zero(sp, n)
        for i in range(2, n + 1):
            hs = hs + cp(f1, i, h)
        c3 = c3 + (cp(d, 1, f1) - cp(f1, 1, d) - hs).scale(s)
        return self.from_elem(LElem(n, c1, c2, c3))


def _act(table, i, j):
    return table.get((i, j), {})


class HochschildOps:
    """d_Hoch and the operator Delta on Hom(A^n, M), written directly on structure constants."""

    def __init__(self, t, mod):
        self.t = t
        self.mod = mod
        self.a = t.dim
        # preimages: which (x, y) have x*y involving z
        self.pre = {}
        for (x, y), v in t.mu.items():
            for z, c in v.items():
                self.pre.setdefault(z, []).append((x, y, c))
        self.hpre = {}
        for x, v in t.h.items():
            for z, c in v.items():
                self.hpre.setdefault(z, []).append((x, c))

    def d(self, n, vec):
        """vec: {(tuple, o): c} for arity n; returns arity n+1."""
        out = {}
        mod = self.mod
        for (tup, o), c in vec.items():
            for a1 in range(self.a):
                for p, v in _act(mod.left, a1, o).items():
                    key = ((a1,) + tup, p)
                    out[key] = out.get(key, ZERO) + c * v
            for i in range(1, n + 1):
                for x, y, v in self.pre.get(tup[i - 1], ()):
                    key = (tup[:i - 1] + (x, y) + tup[i:], o)
                    out[key] = out.get(key, ZERO) + sign(i) * c * v
            for a in range(self.a):
                for p, v in _act(mod.right, o, a).items():
                    key = (tup + (a,), p)
                    out[key] = out.get(key, ZERO) + sign(n + 1) * c * v
        return _clean(out)

    def delta(self, n, vec):
        out = {}
        for (tup, o), c in vec.items():
            for i in range(n):
                for x, v in self.hpre.get(tup[i], ()):
                    key = (tup[:i] + (x,) + tup[i + 1:], o)
                    out[key] = out.get(key, ZERO) + c * v
            for p, v in self.mod.hM.get(o, {}).items():
                out[(tup, p)] = out.get((tup, p), ZERO) - c * v
        return _clean(out)


class AssDerComplex(CochainComplex):
    """The mapping cone of Delta on the Hochschild complex (C^0_Hoch = 0)."""

    name = "AssDer"

    def __init__(self, t, mod=None, cap=DEFAULT_CAP):
        self.triple = t
        self.module = mod if mod is not None else GDerModule.regular(t)
        self.cap = cap
        self.ops = HochschildOps(t, self.module)
        self.a, self.m = t.dim, self.module.dim

    def basis(self, n):
        if n <= 0:
            return []
        A = GradedSpace.ungraded(self.a)
        comps = [(0, n)] if n == 1 else [(0, n), (1, n - 1)]
        return [(c, tup, o) for c, ar in comps for tup in A.tuples(ar) for o in range(self.m)]

    def apply(self, n, vec):
        f = {(tup, o): v for (c, tup, o), v in vec.items() if c == 0}
        fb = {(tup, o): v for (c, tup, o), v in vec.items() if c == 1}
        out = {(0, tup, o): v for (tup, o), v in self.ops.d(n, f).items()}
        if n == 1:
            for (tup, o), v in self.ops.delta(1, f).items():
                out[(1, tup, o)] = -v
        else:
            sec = self.ops.d(n - 1, fb)
            vec_iadd(sec, self.ops.delta(n, f), sign(n))
            for (tup, o), v in sec.items():
                out[(1, tup, o)] = v
        return _clean(out)


class HochschildComplex(CochainComplex):
    name = "Hochschild"

    def __init__(self, t, mod=None, cap=DEFAULT_CAP):
        self.module = mod if mod is not None else GDerModule.regular(t)
        self.ops = HochschildOps(t, self.module)
        self.a, self.m = t.dim, self.module.dim
        self.cap = cap

    def basis(self, n):
        if n <= 0:
            return []
        A = GradedSpace.ungraded(self.a)
        return [(0, tup, o) for tup in A.tuples(n) for o in range(self.m)]

    def apply(self, n, vec):
        f = {(tup, o): v for (_, tup, o), v in vec.items()}
        return {(0, tup, o): v for (tup, o), v in self.ops.d(n, f).items()}


class KernelComplex(CochainComplex):
    """The kernel of the projection (f1, f2, f3) -> (f1, f2): K^n = Hom(A^{n-1}, M) for n >= 2."""

    name = "kernel"

    def __init__(self, t, mod=None, cap=DEFAULT_CAP):
        self.module = mod if mod is not None else GDerModule.regular(t)
        self.t = t
        self.ops = HochschildOps(t, self.module)
        self.a, self.m = t.dim, self.module.dim
        self.cap = cap

    def basis(self, n):
        if n <= 1:
            return []
        A = GradedSpace.ungraded(self.a)
        return [(2, tup, o) for tup in A.tuples(n - 1) for o in range(self.m)]

    def apply(self, n, vec):
        # sum_{i<n} (-1)^i f(.., a_i a_{i+1}, ..) + (-1)^n f(..) a_n, for f of arity n-1
        k = n - 1
        out = {}
        mod = self.module
        for (_, tup, o), c in vec.items():
            for i in range(1, k + 1):
                for x, y, v in self.ops.pre.get(tup[i - 1], ()):
                    key = (2, tup[:i - 1] + (x, y) + tup[i:], o)
                    out[key] = out.get(key, ZERO) + sign(i) * c * v
            for a in range(self.a):
                for p, v in _act(mod.right, o, a).items():
                    key = (2, tup + (a,), p)
                    out[key] = out.get(key, ZERO) + sign(n) * c * v
        return _clean(out)


def theta(n, vec):
    """(f1, f2, f3) -> (f1, f2)."""
    return {k: v for k, v in vec.items() if k[0] != 2}


def differential(t, mod, f, n):
    """The differential of a degree-n cochain given as a coordinate dict."""
    return GDerComplex(t, mod).apply(n, f)


def h1_kernel_dimension(t, mod=None):
    """dim {f: A -> M : f(ab) = a f(b) + f(a) b, hM f = f h, deltaM f = f delta}."""
    mod = mod if mod is not None else GDerModule.regular(t)
    a, m = t.dim, mod.dim
    var = lambda x, o: x * m + o
    rows = []
    for x in range(a):
        for y in range(a):
            for o in range(m):
                r = {}
                for z, c in t.mu.get((x, y), {}).items():
                    r[var(z, o)] = r.get(var(z, o), ZERO) + c
                for p in range(m):
                    c = _act(mod.left, x, p).get(o)
                    if c:
                        r[var(y, p)] = r.get(var(y, p), ZERO) - c
                    c = _act(mod.right, p, y).get(o)
                    if c:
                        r[var(x, p)] = r.get(var(x, p), ZERO) - c
                rows.append(r)
    for opA, opM in ((t.h, mod.hM), (t.delta, mod.deltaM)):
        for x in range(a):
            for o in range(m):
                r = {}
                for p in range(m):
                    c = opM.get(p, {}).get(o)
                    if c:
                        r[var(x, p)] = r.get(var(x, p), ZERO) + c
                for z, c in opA.get(x, {}).items():
                    r[var(z, o)] = r.get(var(z, o), ZERO) - c
                rows.append(r)
    rows = [{k: v for k, v in r.items() if v} for r in rows]
    return a * m - rank([r for r in rows if r])


def cohomology(t, mod=None, max_degree=3, witnesses=False, cap=DEFAULT_CAP):
    cx = GDerComplex(t, mod, cap=cap)
    rep = cx.report(max_degree, witnesses)
    rep.h1_kernel = h1_kernel_dimension(t, mod)
    return rep


def assder_complex(t, mod=None, max_degree=3, cap=DEFAULT_CAP):
    return AssDerComplex(t, mod, cap).report(max_degree)


# ---------------------------------------------------------------- exact sequence

@dataclass
class LESReport:
    max_degree: int
    gder: list
    assder: list
    kernel: list
    induced_rank: list
    checks: list
    delta_eq_h: bool
    splitting: list = None

    @property
    def holds(self):
        return all(ok for _, ok in self.checks) and (self.splitting is None or all(self.splitting))

    def to_json(self):
        return {"max_degree": self.max_degree, "H_GDer": self.gder, "H_AssDer": self.assder,
                "H_kernel": self.kernel, "rank_H(Theta)": self.induced_rank,
                "checks": [{"name": n, "holds": ok} for n, ok in self.checks],
                "delta_eq_h": self.delta_eq_h, "splitting": self.splitting, "holds": self.holds}


def _induced_rank(gder, assder, n, rank_c, rank_d_prev):
    """rank of H^n(Theta), without computing cocycle bases.

    With F(x, y) = (dx, Theta x + dy) on C^n + D^{n-1}, one has
    dim(Theta Z^n + B^n) = rank F - rank d_C^n, hence the induced rank is
    rank F - rank d_C^n - rank d_D^{n-1}.
    """
    idx_c = {k: ("c", i) for i, k in enumerate(gder.basis(n + 1))}
    idx_d = {k: ("d", i) for i, k in enumerate(assder.basis(n))}
    cols = []
    for key in gder.basis(n):
        e = {key: Fraction(1)}
        col = {idx_c[k]: v for k, v in gder.apply(n, e).items()}
        col.update({idx_d[k]: v for k, v in theta(n, e).items()})
        cols.append(col)
    for key in assder.basis(n - 1):
        cols.append({idx_d[k]: v for k, v in assder.apply(n - 1, {key: Fraction(1)}).items()})
    order = {k: i for i, k in enumerate(sorted(set().union(*cols)))} if cols else {}
    r = rank([{order[k]: v for k, v in c.items()} for c in cols])
    return r - rank_c - rank_d_prev


def les_dimension_check(t, mod=None, max_degree=4, cap=DEFAULT_CAP):
    """Dimension constraints of the long exact sequence 0 -> K -> C_GDer -> C_AssDer -> 0.

    With b_n the rank of H^n(C_GDer) -> H^n(C_AssDer), exactness forces
    a_n = h^n_GDer - b_n >= 0 (image of H^n(K)), r_n = h^n_AssDer - b_n >= 0
    (image of the connecting map) and h^n_K = r_{n-1} + a_n.  Summing gives
    the Euler identity sum (-1)^n (h_K - h_GDer + h_AssDer) = (-1)^N r_N.
    """
    C = GDerComplex(t, mod, cap=cap)
    D = AssDerComplex(t, mod, cap)
    K = KernelComplex(t, mod, cap)
    N = max_degree
    repC, repD, repK = C.report(N), D.report(N), K.report(N)
    hC = [repC.dim_H(n) for n in range(1, N + 1)]
    hD = [repD.dim_H(n) for n in range(1, N + 1)]
    hK = [repK.dim_H(n) for n in range(1, N + 1)]
    rc = {d.n: d.rank_d for d in repC.degrees}
    rd = {d.n: d.rank_d for d in repD.degrees}
    rd[0] = 0
    b = [_induced_rank(C, D, n, rc[n], rd[n - 1]) for n in range(1, N + 1)]
    a = [hC[i] - b[i] for i in range(N)]
    r = [hD[i] - b[i] for i in range(N)]
    checks = []
    checks.append(("image of H(K) has nonnegative dimension", all(x >= 0 for x in a)))
    checks.append(("connecting map has nonnegative rank", all(x >= 0 for x in r)))
    ok = all(hK[i] == (r[i - 1] if i > 0 else 0) + a[i] for i in range(N))
    checks.append(("dim H^n(K) = rank of connecting map + rank into H^n_GDer", ok))
    euler = sum(sign(i + 1) * (hK[i] - hC[i] + hD[i]) for i in range(N))
    checks.append(("Euler identity over degrees 1..N", euler == sign(N) * r[N - 1]))
    delta_eq_h = t.delta == t.h and (mod is None or mod.deltaM == mod.hM)
    split = None
    if delta_eq_h:
        split = [hC[i] == hD[i] + hK[i] for i in range(N)]
    return LESReport(N, hC, hD, hK, b, checks, delta_eq_h, split)
