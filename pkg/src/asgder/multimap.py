"""Graded vector spaces and sparse multilinear maps with Koszul-signed composition."""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import InvalidPosition, MalformedElement
from .linalg import ZERO, format_fraction, sign


@dataclass(frozen=True)
class GradedSpace:
    labels: tuple
    degrees: tuple

    def __post_init__(self):
        if len(self.labels) != len(self.degrees):
            raise MalformedElement("labels and degrees differ in length")

    @classmethod
    def ungraded(cls, labels):
        if isinstance(labels, int):
            labels = tuple(f"e{i + 1}" for i in range(labels))
        return cls(tuple(labels), (0,) * len(labels))

    @property
    def dim(self):
        return len(self.labels)

    def degree(self, i):
        return self.degrees[i]

    def __add__(self, other):
        return GradedSpace(self.labels + other.labels, self.degrees + other.degrees)

    def tuples(self, arity):
        return product(range(self.dim), repeat=arity)

    def tuples_of_degree(self, arity, total):
        return (t for t in self.tuples(arity) if sum(self.degrees[i] for i in t) == total)


def vec_add(u, v, c=1):
    """u + c*v for sparse vectors, returning a new dict."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, ZERO) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vec_iadd(u, v, c=1):
    for k, x in v.items():
        y = u.get(k, ZERO) + c * x
        if y:
            u[k] = y
        else:
            u.pop(k, None)


class MultiMap:
    """A homogeneous multilinear map V^{(n)} -> V stored sparsely.

    ``table`` sends a tuple of basis indices to a sparse output vector
    {index: Fraction}.  Missing keys mean zero.
    """

    __slots__ = ("space", "arity", "degree", "table", "_index")

    def __init__(self, space, arity, degree, table=None, check=True):
        self.space = space
        self.arity = arity
        self.degree = degree
        self.table = {}
        self._index = None
        if table:
            for key, out in table.items():
                key = tuple(key)
                out = {k: Fraction(v) for k, v in out.items() if v != 0}
                if out:
                    self.table[key] = out
        if check:
            self._check()

    def _check(self):
        deg = self.space.degrees
        for key, out in self.table.items():
            if len(key) != self.arity:
                raise MalformedElement(f"input {key} has wrong arity (expected {self.arity})")
            d = sum(deg[i] for i in key) + self.degree
            for k in out:
                if deg[k] != d:
                    raise MalformedElement(f"map is not homogeneous of degree {self.degree} at {key}->{k}")

    @classmethod
    def _raw(cls, space, arity, degree, table):
        # trusted constructor: table already has tuple keys and nonzero Fraction values
        self = cls.__new__(cls)
        self.space, self.arity, self.degree, self.table, self._index = space, arity, degree, table, None
        return self

    @classmethod
    def zero(cls, space, arity, degree=0):
        return cls(space, arity, degree, check=False)

    @classmethod
    def identity(cls, space):
        return cls(space, 1, 0, {(i,): {i: 1} for i in range(space.dim)}, check=False)

    @classmethod
    def from_function(cls, space, arity, degree, fn):
        """Build from fn(tuple of indices) -> sparse vector, on degree-compatible inputs."""
        table = {}
        for t in space.tuples(arity):
            out = fn(t)
            if out:
                table[t] = out
        return cls(space, arity, degree, table)

    def __call__(self, *idx):
        return self.table.get(tuple(idx), {})

    def evaluate(self, *vectors):
        """Multilinear evaluation on sparse vectors, with Koszul-free input order."""
        out = {}
        for key, c in _expand(vectors):
            val = self.table.get(key)
            if val:
                vec_iadd(out, val, c)
        return out

    def is_zero(self):
        return not self.table

    def _same_shape(self, other):
        if self.arity != other.arity:
            raise MalformedElement(f"arity mismatch {self.arity} vs {other.arity}")

    def _deg_for(self, other):
        if self.is_zero():
            return other.degree
        if other.is_zero() or self.degree == other.degree:
            return self.degree
        raise MalformedElement(f"degree mismatch {self.degree} vs {other.degree}")

    def __add__(self, other):
        self._same_shape(other)
        table = {k: dict(v) for k, v in self.table.items()}
        for k, v in other.table.items():
            cur = table.get(k)
            if cur is None:
                table[k] = dict(v)
            else:
                vec_iadd(cur, v)
                if not cur:
                    del table[k]
        return MultiMap._raw(self.space, self.arity, self._deg_for(other), table)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return MultiMap.zero(self.space, self.arity, self.degree)
        table = {k: {i: c * x for i, x in v.items()} for k, v in self.table.items()}
        return MultiMap._raw(self.space, self.arity, self.degree, table)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, MultiMap):
            return NotImplemented
        if self.arity != other.arity or self.table != other.table:
            return False
        return self.is_zero() or self.degree == other.degree

    def __hash__(self):
        return hash((self.arity, frozenset((k, frozenset(v.items())) for k, v in self.table.items())))

    def _by_position(self):
        if self._index is None:
            idx = {}
            for key, out in self.table.items():
                for pos, lab in enumerate(key):
                    idx.setdefault((pos, lab), []).append((key, out))
            self._index = idx
        return self._index

    def compose(self, i, g):
        return compose_partial(self, i, g)

    def restrict_inputs(self, allowed):
        """Keep only the inputs whose every entry lies in ``allowed``."""
        table = {k: v for k, v in self.table.items() if all(x in allowed for x in k)}
        return MultiMap(self.space, self.arity, self.degree, table, check=False)

    def coordinates(self, keys, outputs):
        """Dense coordinate list over (input tuple, output index) pairs."""
        return [self.table.get(k, {}).get(o, ZERO) for k in keys for o in outputs]

    def __repr__(self):
        items = []
        for key in sorted(self.table):
            out = " + ".join(f"{format_fraction(c)}*{self.space.labels[i]}"
                             for i, c in sorted(self.table[key].items()))
            items.append(f"{key}->{out}")
        return f"MultiMap(arity={self.arity}, degree={self.degree}, {{{'; '.join(items)}}})"


def _expand(vectors):
    keys = [((), Fraction(1))]
    for v in vectors:
        keys = [(k + (i,), c * x) for k, c in keys for i, x in v.items()]
    return keys


def compose_partial(f, i, g):
    """(f o_i g)(v_1..) = (-1)^{|g|(|v_1|+..+|v_{i-1}|)} f(v_1, .., g(v_i, ..), ..)."""
    if not 1 <= i <= f.arity:
        raise InvalidPosition(f"position {i} outside 1..{f.arity}")
    if f.space != g.space:
        raise MalformedElement("composition of maps on different spaces")
    deg = f.space.degrees
    pos = i - 1
    table = {}
    if not f.is_zero() and not g.is_zero():
        index = f._by_position()
        godd = g.degree % 2
        for gkey, gout in g.table.items():
            for lab, c in gout.items():
                for fkey, fout in index.get((pos, lab), ()):
                    pre = fkey[:pos]
                    s = sign(sum(deg[x] for x in pre)) if godd else 1
                    key = pre + gkey + fkey[pos + 1:]
                    cur = table.setdefault(key, {})
                    vec_iadd(cur, fout, s * c)
                    if not cur:
                        del table[key]
    return MultiMap._raw(f.space, f.arity + g.arity - 1, f.degree + g.degree, table)


def sum_maps(maps, space, arity, degree=0):
    total = MultiMap.zero(space, arity, degree)
    for m in maps:
        total = total + m
    return total
