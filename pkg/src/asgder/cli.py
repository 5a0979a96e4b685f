"""Command-line front end.

Exit codes: 0 when every check passes, 1 on a mathematical failure (the report
says which), 2 on unreadable or malformed input.
"""
import argparse
import sys

from . import io
from .acceptance import CRITERIA, run_all
from .agd import CooperadTable, OperadTable
from .cohomology import assder_complex, cohomology, les_dimension_check
from .deformation import check_def_equations, infinitesimal_is_cocycle, lift_step
from .errors import (AsgderError, DegenerateRelator, DivisionByZero, InvalidPosition, MalformedElement,
                     NotQuadratic, ResourceGuard, TruncationOverflow)
from .homotopy import check_homotopy_relations, square_zero_check
from .rewriting import check_confluence, preset, quadratic_from_json, reduced_basis, rules_from_quadratic
from .triples import validate_module, validate_morphism, validate_triple

INPUT_ERRORS = (MalformedElement, DegenerateRelator, NotQuadratic, DivisionByZero, InvalidPosition,
                TruncationOverflow, ResourceGuard)


class Failure(Exception):
    """Raised by a subcommand to report a mathematical failure; carries the report."""

    def __init__(self, report):
        super().__init__("check failed")
        self.report = report


def _render_table(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_table(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.extend(_render_table(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return lines


def _scalar(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v == {} or v == []:
        return "(none)"
    return str(v)


def emit(obj, fmt, stream=None):
    stream = stream or sys.stdout
    if fmt == "table":
        stream.write("\n".join(_render_table(obj)) + "\n")
    else:
        stream.write(io.dumps(obj) + "\n")


# ---------------------------------------------------------------- subcommands

def cmd_koszul_check(args):
    if args.file:
        data = quadratic_from_json(io.load_json(args.file))
    else:
        data = preset(args.preset)
    system = rules_from_quadratic(data, args.word_order)
    rep = check_confluence(system)
    out = rep.to_json()
    out["preset"] = None if args.file else args.preset
    out["critical_count"] = len(rep.critical)
    if args.max_arity:
        dims = {}
        for n in range(1, args.max_arity + 1):
            w = args.max_weight if args.max_weight is not None else n + 1
            dims[str(n)] = len(reduced_basis(system, n, w))
        out["reduced_basis_dims"] = dims
        out["max_weight"] = args.max_weight if args.max_weight is not None else "arity + 1"
    if not rep.confluent:
        raise Failure(out)
    return out


def cmd_dump_table(args):
    N = args.max_arity
    if args.which == "dual":
        table = OperadTable(N)
        entries = []
        for n in range(1, N + 1):
            for m in range(1, N - n + 2):
                for x in table.basis(n):
                    for y in table.basis(m):
                        for i in range(1, n + 1):
                            res = {str(k): v for k, v in table.compose(x, i, y).items() if v}
                            entries.append({"left": str(x), "position": i, "right": str(y), "result": res})
        return {"operad": "Agd^!", "max_arity": N, "compositions": entries}
    co = CooperadTable(N)
    entries = []
    for n in range(1, N + 1):
        for x in co.basis(n):
            items = sorted(co.decompose_dict(x).items(),
                           key=lambda kv: (kv[0][0].arity, kv[0][1], kv[0][0].kind, kv[0][2].kind))
            terms = [{"coefficient": c, "left": str(l), "position": p, "right": str(r)}
                     for (l, p, r), c in items]
            entries.append({"element": str(x), "degree": co.degree(x), "decomposition": terms})
    return {"cooperad": "Agd^¡", "max_arity": N, "decompositions": entries}


def cmd_validate(args):
    if args.morphism:
        f = io.morphism_from_json(io.load_json(args.morphism))
        vs = validate_morphism(f)
        out = {"kind": "morphism", "valid": not vs,
               "violations": [v.to_json(f.target.labels) for v in vs]}
        if vs:
            raise Failure(out)
        return out
    if not args.file:
        raise MalformedElement("validate needs a triple file or --morphism")
    t = io.triple_from_json(io.load_json(args.file))
    vs = validate_triple(t)
    out = {"kind": "triple", "dim": t.dim, "valid": not vs, "violations": io.violations_to_json(vs, t.labels)}
    if args.module:
        mod = io.module_from_json(io.load_json(args.module), t.dim)
        mvs = validate_module(t, mod)
        out["module"] = {"dim": mod.dim, "valid": not mvs,
                         "violations": io.module_violations_to_json(mvs, t.labels, mod.space.labels)}
        vs = vs + mvs
    if vs:
        raise Failure(out)
    return out


def cmd_homotopy_check(args):
    H = io.homotopy_from_json(io.load_json(args.file), max_arity=args.max_arity)
    rel = check_homotopy_relations(H)
    sq = square_zero_check(H)
    out = rel.to_json(args.witnesses)
    out["square_zero"] = sq.holds
    out["basis_elements_checked"] = sq.checked
    out["agree"] = rel.holds == sq.holds
    if not (rel.holds and sq.holds):
        raise Failure(out)
    return out


def _load_triple_and_module(args):
    t = io.triple_from_json(io.load_json(args.file))
    mod = io.module_from_json(io.load_json(args.module), t.dim) if args.module else None
    return t, mod


def cmd_cohomology(args):
    t, mod = _load_triple_and_module(args)
    vs = validate_triple(t)
    if vs:
        raise Failure({"valid": False, "violations": io.violations_to_json(vs, t.labels)})
    if mod is not None:
        mvs = validate_module(t, mod)
        if mvs:
            raise Failure({"valid": False, "module_violations":
                           io.module_violations_to_json(mvs, t.labels, mod.space.labels)})
    rep = cohomology(t, mod, args.max_degree, args.witnesses, args.cap)
    out = rep.to_json()
    ok = rep.h1_agrees
    if args.with_assder:
        out["assder"] = assder_complex(t, mod, args.max_degree, args.cap).to_json()
    if args.les:
        les = les_dimension_check(t, mod, args.max_degree, args.cap)
        out["exact_sequence"] = les.to_json()
        ok = ok and les.holds
    if not ok:
        raise Failure(out)
    return out


def cmd_deform(args):
    t = io.triple_from_json(io.load_json(args.triple))
    d = io.deformation_from_json(io.load_json(args.deformation), t)
    if args.order and args.order < d.order:
        d = d.truncate(args.order)
    labels = t.labels
    de = check_def_equations(d)
    out = {"deformation_equations": de.to_json(labels, args.witnesses)}
    inf = infinitesimal_is_cocycle(d)
    out["order_1"] = {"equation_holds": inf.de_holds, "is_cocycle": inf.cocycle, "equivalent": inf.equivalent}
    ok = de.holds and inf.equivalent
    if args.lift:
        n = args.lift if args.lift is not True else d.order + 1
        if not de.holds_below(n):
            raise Failure(dict(out, lift={"order": n, "error": "the equations fail below this order"}))
        rep = lift_step(d, n)
        out["lift"] = rep.to_json(labels)
        ok = ok and rep.liftable and rep.revalidated
    if not ok:
        raise Failure(out)
    return out


def cmd_selftest(args):
    only = set(args.only) if args.only else None
    results = run_all(args.seed, only)
    out = {"seed": args.seed, "criteria": [r.to_json() for r in results],
           "passed": sum(r.passed for r in results), "total": len(results)}
    if args.format == "table":
        for r in results:
            print(r.line(), flush=True)
        if not all(r.passed for r in results):
            raise Failure(None)
        return None
    if not all(r.passed for r in results):
        raise Failure(out)
    return out


# ---------------------------------------------------------------- parser

def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _criteria(text):
    try:
        nums = [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of numbers: {text!r}")
    if any(not 1 <= n <= len(CRITERIA) for n in nums):
        raise argparse.ArgumentTypeError(f"criteria are numbered 1..{len(CRITERIA)}")
    return nums


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--witnesses", action="store_true", help="include witnesses in reports")

    p = argparse.ArgumentParser(prog="asgder", description="Checks for AsGDer triples and the operad Agd.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("koszul-check", parents=[common], help="confluence of a quadratic rewriting system")
    s.add_argument("file", nargs="?", help="quadratic data as JSON (overrides --preset)")
    s.add_argument("--preset", choices=("agd", "agd-dual", "as"), default="agd")
    s.add_argument("--word-order", choices=("lex", "deglex"), default="lex")
    s.add_argument("--max-arity", type=_positive, help="also count reduced basis monomials up to this arity")
    s.add_argument("--max-weight", type=int, help="weight cap for the reduced basis (default arity + 1)")
    s.set_defaults(run=cmd_koszul_check)

    s = sub.add_parser("dump-table", parents=[common], help="composition table of Agd^! or decompositions of Agd^¡")
    s.add_argument("--which", choices=("dual", "cooperad"), default="dual")
    s.add_argument("--max-arity", type=_positive, default=4)
    s.set_defaults(run=cmd_dump_table)

    s = sub.add_parser("validate", parents=[common], help="check the axioms of a triple, module or morphism")
    s.add_argument("file", nargs="?", help="triple JSON")
    s.add_argument("--module", help="module JSON over the triple")
    s.add_argument("--morphism", help="morphism JSON with source, target and map")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("homotopy-check", parents=[common], help="homotopy relations and the square-zero test")
    s.add_argument("file")
    s.add_argument("--max-arity", type=_positive)
    s.set_defaults(run=cmd_homotopy_check)

    s = sub.add_parser("cohomology", parents=[common], help="cohomology dimensions of the AsGDer complex")
    s.add_argument("file")
    s.add_argument("--module")
    s.add_argument("--max-degree", type=_positive, default=3)
    s.add_argument("--with-assder", action="store_true", help="also report the AssDer complex")
    s.add_argument("--les", action="store_true", help="check the long exact sequence constraints")
    s.add_argument("--cap", type=_positive, default=20000, help="largest cochain space allowed")
    s.set_defaults(run=cmd_cohomology)

    s = sub.add_parser("deform", parents=[common], help="deformation equations, obstructions and lifts")
    s.add_argument("triple")
    s.add_argument("deformation")
    s.add_argument("--order", type=_positive, help="only use the orders up to this one")
    s.add_argument("--lift", nargs="?", const=True, type=_positive,
                   help="solve for the next order (or the given one)")
    s.set_defaults(run=cmd_deform)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    s.add_argument("--only", type=_criteria, help="comma separated criterion numbers")
    s.set_defaults(run=cmd_selftest)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        out = args.run(args)
    except Failure as f:
        if f.report is not None:
            emit(f.report, args.format)
        return 1
    except INPUT_ERRORS as exc:
        emit(io.as_error(exc), "json", sys.stderr)
        return 2
    except AsgderError as exc:
        emit(io.as_error(exc), args.format)
        return 1
    if out is not None:
        emit(out, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
