"""JSON input and output.  Rationals are written as strings "p/q"."""
import json

from .errors import DivisionByZero, InputError, MalformedElement
from .homotopy import HomotopyAsGDer, map_degree
from .linalg import format_fraction, to_fraction
from .multimap import GradedSpace, MultiMap
from .triples import AsGDerTriple, GDerModule, TripleMorphism


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", str(path)) from exc
    return loads(text, str(path))


def loads(text, source="<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", f"{source}:{exc.lineno}:{exc.colno}") from exc


def dumps(obj):
    """Deterministic JSON: sorted keys, fixed indentation."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _scalar(x, path):
    try:
        return to_fraction(x)
    except DivisionByZero as exc:
        raise InputError("zero denominator", path) from exc
    except MalformedElement as exc:
        raise InputError(f"not a rational: {x!r}", path) from exc


def _vector(v, dim, path):
    if not isinstance(v, list) or len(v) != dim:
        raise InputError(f"expected a list of {dim} coefficients", path)
    return {k: c for k, c in ((k, _scalar(x, f"{path}[{k}]")) for k, x in enumerate(v)) if c}


def _matrix(rows, n, dim, path):
    if not isinstance(rows, list) or len(rows) != n:
        raise InputError(f"expected a list of {n} vectors", path)
    return {i: v for i, v in ((i, _vector(r, dim, f"{path}[{i}]")) for i, r in enumerate(rows)) if v}


def _cube(cube, n1, n2, dim, path):
    if not isinstance(cube, list) or len(cube) != n1:
        raise InputError(f"expected a list of {n1} rows", path)
    out = {}
    for i, row in enumerate(cube):
        if not isinstance(row, list) or len(row) != n2:
            raise InputError(f"expected a list of {n2} vectors", f"{path}[{i}]")
        for j, v in enumerate(row):
            vec = _vector(v, dim, f"{path}[{i}][{j}]")
            if vec:
                out[(i, j)] = vec
    return out


def _field(obj, key, path, default=None, required=True):
    if not isinstance(obj, dict):
        raise InputError("expected a JSON object", path)
    if key not in obj:
        if required:
            raise InputError(f"missing field {key!r}", path)
        return default
    return obj[key]


def _dim_and_basis(obj, path, prefix="e"):
    dim = _field(obj, "dim", path)
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise InputError("dim must be a nonnegative integer", f"{path}.dim")
    basis = _field(obj, "basis", path, required=False)
    if basis is None:
        basis = [f"{prefix}{i + 1}" for i in range(dim)]
    if not isinstance(basis, list) or len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise InputError(f"basis must be a list of {dim} names", f"{path}.basis")
    if len(set(basis)) != dim:
        raise InputError("basis names must be distinct", f"{path}.basis")
    return dim, basis


def triple_from_json(obj, path="triple"):
    dim, basis = _dim_and_basis(obj, path)
    mu = _cube(_field(obj, "mu", path), dim, dim, dim, f"{path}.mu")
    h = _matrix(_field(obj, "h", path), dim, dim, f"{path}.h")
    delta = _matrix(_field(obj, "delta", path), dim, dim, f"{path}.delta")
    unit = _field(obj, "unit", path, required=False)
    if unit is not None and (not isinstance(unit, int) or not 0 <= unit < dim):
        raise InputError("unit must be a basis index", f"{path}.unit")
    return AsGDerTriple(GradedSpace.ungraded(basis), mu, h, delta, unit)


def module_from_json(obj, adim, path="module"):
    dim, basis = _dim_and_basis(obj, path, "m")
    left = _cube(_field(obj, "left", path), adim, dim, dim, f"{path}.left")
    right = _cube(_field(obj, "right", path), dim, adim, dim, f"{path}.right")
    hM = _matrix(_field(obj, "hM", path), dim, dim, f"{path}.hM")
    dM = _matrix(_field(obj, "deltaM", path), dim, dim, f"{path}.deltaM")
    return GDerModule(GradedSpace.ungraded(basis), left, right, hM, dM)


def morphism_from_json(obj, path="morphism"):
    """{"source": triple, "target": triple, "map": [image of each source basis vector]}"""
    src = triple_from_json(_field(obj, "source", path), f"{path}.source")
    tgt = triple_from_json(_field(obj, "target", path), f"{path}.target")
    images = _matrix(_field(obj, "map", path), src.dim, tgt.dim, f"{path}.map")
    return TripleMorphism(src, tgt, images)


def _dense_vec(v, dim):
    return [format_fraction(v.get(k, 0)) for k in range(dim)]


def triple_to_json(t):
    n = t.dim
    out = {
        "dim": n,
        "basis": list(t.labels),
        "mu": [[_dense_vec(t.mu.get((i, j), {}), n) for j in range(n)] for i in range(n)],
        "h": [_dense_vec(t.h.get(i, {}), n) for i in range(n)],
        "delta": [_dense_vec(t.delta.get(i, {}), n) for i in range(n)],
    }
    if t.unit is not None:
        out["unit"] = t.unit
    return out


def module_to_json(m, adim):
    n = m.dim
    return {
        "dim": n,
        "basis": list(m.space.labels),
        "left": [[_dense_vec(m.left.get((a, i), {}), n) for i in range(n)] for a in range(adim)],
        "right": [[_dense_vec(m.right.get((i, a), {}), n) for a in range(adim)] for i in range(n)],
        "hM": [_dense_vec(m.hM.get(i, {}), n) for i in range(n)],
        "deltaM": [_dense_vec(m.deltaM.get(i, {}), n) for i in range(n)],
    }


# ---------------------------------------------------------------- sparse maps

def map_to_json(f):
    labels = f.space.labels
    return {",".join(labels[i] for i in key): {labels[o]: format_fraction(c) for o, c in sorted(v.items())}
            for key, v in sorted(f.table.items())}


def map_from_json(obj, space, arity, degree, path):
    if not isinstance(obj, dict):
        raise InputError("expected an object of inputs -> outputs", path)
    index = {lab: i for i, lab in enumerate(space.labels)}
    table = {}
    for key, out in obj.items():
        p = f"{path}[{key!r}]"
        names = [s.strip() for s in key.split(",")] if arity else []
        if len(names) != arity:
            raise InputError(f"expected {arity} comma-separated inputs", p)
        try:
            tup = tuple(index[s] for s in names)
        except KeyError as exc:
            raise InputError(f"unknown basis element {exc.args[0]!r}", p) from exc
        if not isinstance(out, dict):
            raise InputError("expected an object basis element -> coefficient", p)
        vec = {}
        for lab, c in out.items():
            if lab not in index:
                raise InputError(f"unknown basis element {lab!r}", p)
            c = _scalar(c, f"{p}[{lab!r}]")
            if c:
                vec[index[lab]] = c
        if vec:
            table[tup] = vec
    try:
        return MultiMap(space, arity, degree, table)
    except MalformedElement as exc:
        raise InputError(str(exc), path) from exc


def homotopy_from_json(obj, path="homotopy", max_arity=None):
    """{"basis": [...], "degrees": [...], "max_arity": N, "m": {"2": {"a,b": {"c": "1"}}}, "h": ..., "delta": ...}"""
    basis = _field(obj, "basis", path)
    degrees = _field(obj, "degrees", path, [0] * len(basis) if isinstance(basis, list) else None, required=False)
    if not isinstance(basis, list) or not all(isinstance(b, str) and "," not in b for b in basis):
        raise InputError("basis must be a list of names without commas", f"{path}.basis")
    if not isinstance(degrees, list) or len(degrees) != len(basis) or not all(
            isinstance(d, int) and not isinstance(d, bool) for d in degrees):
        raise InputError("degrees must be a list of integers, one per basis element", f"{path}.degrees")
    space = GradedSpace(tuple(basis), tuple(degrees))
    fams = {}
    top = 1
    for kind in ("m", "h", "delta"):
        fam = _field(obj, kind, path, {}, required=False)
        if not isinstance(fam, dict):
            raise InputError("expected an object arity -> map", f"{path}.{kind}")
        fams[kind] = {}
        for n, table in fam.items():
            try:
                n = int(n)
            except ValueError as exc:
                raise InputError("arity keys must be integers", f"{path}.{kind}") from exc
            if n < 1:
                raise InputError("arity must be at least 1", f"{path}.{kind}")
            top = max(top, n)
            fams[kind][n] = map_from_json(table, space, n, map_degree(kind, n), f"{path}.{kind}.{n}")
    N = max_arity or _field(obj, "max_arity", path, top, required=False)
    fams = {k: {n: f for n, f in v.items() if n <= N} for k, v in fams.items()}
    return HomotopyAsGDer(space, N, fams["m"], fams["h"], fams["delta"])


def homotopy_to_json(H):
    out = {"basis": list(H.space.labels), "degrees": list(H.space.degrees), "max_arity": H.max_arity}
    for kind in ("m", "h", "delta"):
        out[kind] = {str(n): map_to_json(f) for (k, n), f in sorted(H.maps.items()) if k == kind and not f.is_zero()}
    return out


def deformation_from_json(obj, base, path="deformation"):
    """{"order": K, "mu": {"1": [[[...]]]}, "h": {"1": [[...]]}, "delta": {"1": [[...]]}}, dense tables."""
    from .deformation import DeformationTrunc
    n = base.dim
    K = _field(obj, "order", path)
    if not isinstance(K, int) or K < 1:
        raise InputError("order must be a positive integer", f"{path}.order")
    fams = {}
    for kind in ("mu", "h", "delta"):
        fam = _field(obj, kind, path, {}, required=False)
        if not isinstance(fam, dict):
            raise InputError("expected an object order -> table", f"{path}.{kind}")
        fams[kind] = {}
        for i, table in fam.items():
            p = f"{path}.{kind}.{i}"
            try:
                i = int(i)
            except ValueError as exc:
                raise InputError("order keys must be integers", p) from exc
            if not 1 <= i <= K:
                raise InputError(f"order must lie in 1..{K}", p)
            if kind == "mu":
                tab = _cube(table, n, n, n, p)
                fams[kind][i] = MultiMap(base.space, 2, 0, tab)
            else:
                tab = _matrix(table, n, n, p)
                fams[kind][i] = MultiMap(base.space, 1, 0, {(k,): v for k, v in tab.items()})
    return DeformationTrunc(base, K, fams["mu"], fams["h"], fams["delta"])


def deformation_to_json(d):
    n = d.base.dim
    out = {"order": d.order, "mu": {}, "h": {}, "delta": {}}
    for i in range(1, d.order + 1):
        mu = d.mu[i].table
        out["mu"][str(i)] = [[_dense_vec(mu.get((a, b), {}), n) for b in range(n)] for a in range(n)]
        out["h"][str(i)] = [_dense_vec(d.h[i].table.get((a,), {}), n) for a in range(n)]
        out["delta"][str(i)] = [_dense_vec(d.delta[i].table.get((a,), {}), n) for a in range(n)]
    return out


def violations_to_json(vs, labels):
    return [v.to_json(labels) for v in vs]


def module_violations_to_json(vs, alabels, mlabels):
    """Module violations carry inputs as ("A", i, "M", j, ...) pairs."""
    out = []
    for v in vs:
        pairs = list(zip(v.inputs[::2], v.inputs[1::2]))
        names = [f"{alabels[i]}" if kind == "A" else f"{mlabels[i]}" for kind, i in pairs]
        out.append({"identity": v.identity, "inputs": names,
                    "lhs": {mlabels[k]: format_fraction(c) for k, c in sorted(v.lhs.items())},
                    "rhs": {mlabels[k]: format_fraction(c) for k, c in sorted(v.rhs.items())}})
    return out


def as_error(exc):
    return {"error": type(exc).__name__, "message": str(exc)}


__all__ = [
    "load_json", "loads", "dumps", "triple_from_json", "triple_to_json",
    "module_from_json", "module_to_json", "morphism_from_json", "map_to_json", "map_from_json", "homotopy_from_json",
    "homotopy_to_json", "deformation_from_json", "deformation_to_json", "violations_to_json",
    "module_violations_to_json", "as_error",
]
