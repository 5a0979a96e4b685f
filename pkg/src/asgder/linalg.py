"""Exact rational scalars and sparse linear algebra over Q."""
import bisect
from fractions import Fraction

from gmpy2 import mpq

from .errors import DivisionByZero, MalformedElement

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(x):
    """Parse an int, Fraction or a "p/q" string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise MalformedElement(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            if "/0" in x.replace(" ", ""):
                raise DivisionByZero(f"zero denominator in {x!r}") from exc
            raise MalformedElement(f"not a rational: {x!r}") from exc
    raise MalformedElement(f"not a rational: {x!r}")


def div(a, b):
    if b == 0:
        raise DivisionByZero("division by zero")
    return Fraction(a) / Fraction(b)


def format_fraction(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def sign(k):
    """(-1)**k for an integer k."""
    return -1 if k % 2 else 1


def _q(x):
    # elimination runs on gmpy2 rationals; Fraction stays the public type
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def _frac(x):
    return Fraction(int(x.numerator), int(x.denominator))


def _as_rows(rows):
    out = []
    for r in rows:
        if isinstance(r, dict):
            out.append({k: _q(v) for k, v in r.items() if v != 0})
        else:
            out.append({j: _q(v) for j, v in enumerate(r) if v != 0})
    return out


class Echelon:
    """Incremental row echelon form over Q.

    Rows are sparse dicts {column: rational}.  Each stored row is normalised so
    that its pivot (smallest column) has coefficient 1.
    """

    def __init__(self):
        self.pivots = {}  # pivot column -> row
        self.order = []

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row):
        row = {k: _q(v) for k, v in row.items() if v}
        # pivot rows start at their pivot, so one sweep in pivot order suffices
        for col in self.order:
            c = row.get(col)
            if not c:
                continue
            for k, v in self.pivots[col].items():
                nv = row.get(k, 0) - c * v
                if nv:
                    row[k] = nv
                else:
                    del row[k]
        return row

    def add(self, row):
        """Insert a row; return True if it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        col = min(row)
        inv = 1 / row[col]
        self.pivots[col] = {k: v * inv for k, v in row.items()}
        bisect.insort(self.order, col)
        return True

    def contains(self, row):
        return not self.reduce(row)


def rank(rows):
    """Exact rank of a matrix given as dense lists or sparse dicts."""
    rows = _as_rows(rows)
    if not rows:
        return 0
    # eliminate along the shorter side
    ncols = max((max(r) + 1 for r in rows if r), default=0)
    if ncols < len(rows):
        rows = transpose(rows)
    rows.sort(key=len)
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def transpose(rows):
    cols = {}
    for i, r in enumerate(rows):
        for j, v in r.items():
            cols.setdefault(j, {})[i] = v
    return [cols[j] for j in sorted(cols)]


def rref(rows):
    """Reduced row echelon form: list of (pivot column, row dict), sorted by pivot."""
    ech = Echelon()
    for r in _as_rows(rows):
        ech.add(r)
    cols = sorted(ech.pivots)
    # back substitution, from the last pivot upwards
    done = {}
    for col in reversed(cols):
        row = dict(ech.pivots[col])
        for k in sorted(k for k in row if k != col and k in done):
            c = row.get(k)
            if not c:
                continue
            for kk, vv in done[k].items():
                nv = row.get(kk, 0) - c * vv
                if nv:
                    row[kk] = nv
                else:
                    row.pop(kk, None)
        done[col] = row
    return [(c, {k: _frac(v) for k, v in done[c].items()}) for c in cols]


def nullspace(rows, ncols):
    """Basis of {x : rows . x = 0} as dense Fraction lists of length ncols."""
    red = rref(rows)
    pivcols = {c for c, _ in red}
    basis = []
    for free in range(ncols):
        if free in pivcols:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for c, r in red:
            coef = r.get(free)
            if coef:
                v[c] = -coef
        basis.append(v)
    return basis


def solve(rows, rhs, ncols):
    """One solution x of rows . x = rhs, or None if the system is inconsistent."""
    aug = []
    for r, b in zip(_as_rows(rows), rhs):
        r = dict(r)
        if b:
            r[ncols] = Fraction(b)
        aug.append(r)
    red = rref(aug)
    x = [ZERO] * ncols
    for c, r in red:
        if c == ncols:
            return None
        x[c] = r.get(ncols, ZERO)
    return x
