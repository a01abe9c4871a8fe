"""Command line surface: JSON vector/matrix files in, JSON reports out.

Exit codes are uniform across subcommands: 0 when the queried predicate
holds, 1 when it fails (the report then embeds a witness that the
library predicates re-verify), 2 for usage, parse, guard, or
precondition errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import isotone
from .doubly_stochastic import NotMajorized, witness_ds
from .majorization import desc_prefix_sums, first_violation
from .numerics import (
    DEFAULT_GUARD,
    GuardExceeded,
    Mat,
    Perm,
    Rational,
    Vec,
    as_rational,
)
from .rearrangement import distinct_count, extremizer_bound, extremizer_sets


class CliError(Exception):
    """Operational failure that should exit with code 2."""


def _scalar(value: Any, warnings: list[str], where: str) -> Rational:
    if isinstance(value, bool):
        raise CliError(f"{where}: boolean is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        exact = Fraction(value)
        warnings.append(
            f"{where}: float {value!r} converted to the exact binary64 "
            f"rational {exact}"
        )
        return exact
    if isinstance(value, str):
        try:
            return as_rational(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise CliError(f"{where}: bad rational literal {value!r}: {exc}")
    raise CliError(f"{where}: expected number or 'p/q' string, got {value!r}")


def _load_json(path: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}")


def load_vector(path: str, warnings: list[str]) -> Vec:
    doc = _load_json(path)
    if not isinstance(doc, list) or not doc:
        raise CliError(f"{path}: a vector file is a non-empty JSON array")
    entries = [_scalar(v, warnings, f"{path}[{i}]") for i, v in enumerate(doc)]
    return Vec(entries)


def load_matrix(path: str, warnings: list[str]) -> Mat:
    doc = _load_json(path)
    if (not isinstance(doc, list) or not doc
            or not all(isinstance(r, list) and r for r in doc)):
        raise CliError(f"{path}: a matrix file is a non-empty JSON array of rows")
    rows = [
        [_scalar(v, warnings, f"{path}[{i}][{j}]") for j, v in enumerate(row)]
        for i, row in enumerate(doc)
    ]
    if any(len(r) != len(rows[0]) for r in rows):
        raise CliError(f"{path}: matrix rows have unequal lengths")
    return Mat(rows)


def _digest(path: str) -> dict[str, str]:
    data = Path(path).read_bytes()
    return {"path": path, "sha256": hashlib.sha256(data).hexdigest()}


def _ser(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Vec):
        return [str(v) for v in value]
    if isinstance(value, Mat):
        return [[str(v) for v in row] for row in value.rows]
    if isinstance(value, Perm):
        return list(value.image)
    if isinstance(value, dict):
        return {k: _ser(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_ser(v) for v in value]
    return value


def write_matrix(path: str, a: Mat) -> None:
    Path(path).write_text(json.dumps(_ser(a), indent=2) + "\n", encoding="utf-8")


def _emit(report: dict[str, Any], as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    for warning in report.get("warnings", []):
        print(f"warning: {warning}", file=sys.stderr)
    print(f"{report['command']}: verdict = {report['verdict']}")
    for key in ("witness", "counts"):
        if report.get(key) is not None:
            print(f"  {key}: {json.dumps(report[key], sort_keys=True)}")


def _report(command: str, args: argparse.Namespace, inputs: Any, verdict: Any,
            start: float, witness: Any = None, counts: Any = None,
            warnings: list[str] | None = None) -> dict[str, Any]:
    return {
        "command": command,
        "inputs": inputs,
        "seed": args.seed,
        "trials": args.trials,
        "verdict": _ser(verdict),
        "witness": _ser(witness),
        "counts": _ser(counts),
        "warnings": warnings or [],
        "elapsed_ms": int((time.monotonic() - start) * 1000),
    }


def cmd_check(args: argparse.Namespace) -> int:
    start = time.monotonic()
    warnings: list[str] = []
    x = load_vector(args.x, warnings)
    y = load_vector(args.y, warnings)
    violation = first_violation(x, y)
    holds = violation is None
    witness = None
    if violation is not None:
        witness = {"kind": violation.kind, "index": violation.index,
                   "lhs": violation.lhs, "rhs": violation.rhs}
    counts = {
        "x_sorted_prefix_sums": list(desc_prefix_sums(x)),
        "y_sorted_prefix_sums": list(desc_prefix_sums(y)),
    }
    report = _report("check", args, {"x": _digest(args.x), "y": _digest(args.y)},
                     holds, start, witness, counts, warnings)
    _emit(report, args.json)
    return 0 if holds else 1


def cmd_witness(args: argparse.Namespace) -> int:
    start = time.monotonic()
    warnings: list[str] = []
    x = load_vector(args.x, warnings)
    y = load_vector(args.y, warnings)
    inputs = {"x": _digest(args.x), "y": _digest(args.y)}
    try:
        witness = witness_ds(x, y)
    except NotMajorized as exc:
        v = exc.violation
        report = _report("witness", args, inputs, False, start,
                         {"kind": v.kind, "index": v.index,
                          "lhs": v.lhs, "rhs": v.rhs},
                         None, warnings)
        _emit(report, args.json)
        return 1
    write_matrix(args.out, witness.matrix.matrix)
    counts = {"transforms": len(witness.transforms), "out": args.out}
    report = _report("witness", args, inputs, True, start,
                     {"matrix": witness.matrix.matrix}, counts, warnings)
    _emit(report, args.json)
    return 0


def cmd_extremizers(args: argparse.Namespace) -> int:
    start = time.monotonic()
    warnings: list[str] = []
    x = load_vector(args.x, warnings)
    y = load_vector(args.y, warnings)
    rep = extremizer_sets(x, y, guard=args.guard_n)
    k = distinct_count(x)
    counts = {
        "max_value": rep.max_value,
        "min_value": rep.min_value,
        "n_maximizers": len(rep.maximizers),
        "n_minimizers": len(rep.minimizers),
        "distinct_count": k,
        "bound": extremizer_bound(len(x), k),
        "maximizers": list(rep.maximizers),
        "minimizers": list(rep.minimizers),
    }
    report = _report("extremizers", args,
                     {"x": _digest(args.x), "y": _digest(args.y)},
                     True, start, None, counts, warnings)
    _emit(report, args.json)
    return 0


def _statement_counts(check: isotone.StatementCheck) -> dict[str, Any]:
    return {
        "bits": "".join("1" if b else "0" for b in check.bits),
        "consistent": check.consistent,
        "advisory_disagreement": list(check.advisory_disagreement),
        "global_form": _form_json(check.global_form),
    }


def _form_json(form: isotone.GlobalForm | None) -> dict[str, Any]:
    if form is None:
        return {"kind": "not_isotone"}
    if isinstance(form, isotone.TraceMap):
        return {"kind": "trace_map", "a": _ser(form.a)}
    return {"kind": "perm_scaled", "alpha": str(form.alpha),
            "beta": str(form.beta), "perm": list(form.perm.image)}


def cmd_isotone(args: argparse.Namespace) -> int:
    start = time.monotonic()
    warnings: list[str] = []
    a = load_matrix(args.matrix, warnings)
    inputs: dict[str, Any] = {"matrix": _digest(args.matrix)}

    if args.global_:
        form = isotone.classify_global(a)
        report = _report("isotone", args, inputs, form is not None, start,
                         None, {"classification": _form_json(form)}, warnings)
        _emit(report, args.json)
        return 0 if form is not None else 1

    anchor = isotone.AnchorPoint(load_vector(args.at, warnings))
    inputs["alpha"] = _digest(args.at)
    if args.predicate == "all":
        if not anchor.strictly_decreasing:
            raise CliError("--predicate all requires a strictly decreasing anchor")
        check = isotone.verify_statements(a, anchor, args.trials, args.seed,
                                          args.guard_n)
        ok = check.consistent and check.all_hold
        witness = None
        for name, verdict in (("left", check.left), ("right", check.right),
                              ("point", check.point), ("equiv", check.equiv)):
            if not verdict.holds:
                witness = {"statement": name, **(verdict.witness or {})}
                break
        report = _report("isotone", args, inputs, ok, start, witness,
                         _statement_counts(check), warnings)
        _emit(report, args.json)
        return 0 if ok else 1

    runners = {
        "equiv": lambda: isotone.is_equiv_preserving_at(a, anchor, args.guard_n),
        "left": lambda: isotone.is_left_isotone_at(a, anchor, args.guard_n),
        "right": lambda: isotone.is_right_isotone_at(
            a, anchor, args.trials, args.seed, args.guard_n),
        "point": lambda: isotone.is_isotone_at(
            a, anchor, args.trials, args.seed, args.guard_n),
    }
    verdict = runners[args.predicate]()
    counts = {"sampled_trials": verdict.trials}
    report = _report("isotone", args, inputs, verdict.holds, start,
                     verdict.witness, counts, warnings)
    _emit(report, args.json)
    return 0 if verdict.holds else 1


def cmd_verify(args: argparse.Namespace) -> int:
    start = time.monotonic()
    warnings: list[str] = []
    if args.alpha is not None:
        alpha = load_vector(args.alpha, warnings)
        inputs: dict[str, Any] = {"alpha": _digest(args.alpha), "n": len(alpha)}
    else:
        alpha = Vec(range(args.n, 0, -1))
        inputs = {"alpha": _ser(alpha), "n": args.n}
    anchor = isotone.AnchorPoint(alpha)
    if not anchor.strictly_decreasing:
        raise CliError("verify requires a strictly decreasing anchor")
    inputs["matrices"] = args.matrices

    cells = isotone.campaign_matrices(anchor.n, args.matrices, args.seed)
    per_matrix = []
    inconsistent: list[dict[str, Any]] = []
    unclassified_preservers: list[dict[str, Any]] = []
    for idx, (label, a) in enumerate(cells):
        check = isotone.verify_statements(a, anchor, args.trials,
                                          f"{args.seed}:{idx}", args.guard_n)
        row = {"label": label, **_statement_counts(check)}
        per_matrix.append(row)
        if not check.consistent or check.advisory_disagreement:
            inconsistent.append({"matrix": _ser(a), **row})
        if check.equiv.holds and check.global_form is None:
            unclassified_preservers.append({"matrix": _ser(a), **row})
    ok = not inconsistent and not unclassified_preservers
    counts = {
        "matrices": len(cells),
        "consistent": len(cells) - len(inconsistent),
        "all_true": sum(1 for r in per_matrix if r["bits"] == "11111"),
        "all_false": sum(1 for r in per_matrix if r["bits"] == "00000"),
        "unclassified_preservers": len(unclassified_preservers),
        "per_matrix": per_matrix,
    }
    witness = None
    if not ok:
        witness = {"inconsistent": inconsistent,
                   "unclassified_preservers": unclassified_preservers}
    report = _report("verify", args, inputs, ok, start, witness, counts, warnings)
    _emit(report, args.json)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="seed for every sampled campaign (default 0)")
    common.add_argument("--trials", type=int, default=isotone.DEFAULT_TRIALS,
                        help="sample count for the one-sided predicates")
    common.add_argument("--guard-n", type=int, default=DEFAULT_GUARD,
                        help="largest size allowed for factorial enumeration")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="json", action="store_true", default=True,
                     help="machine-readable report on stdout (default)")
    fmt.add_argument("--text", dest="json", action="store_false",
                     help="human-readable summary instead of JSON")

    parser = argparse.ArgumentParser(
        prog="majorkit",
        description="Exact majorization toolkit: order checks, doubly "
                    "stochastic witnesses, rearrangement extremizers, and "
                    "isotonicity of linear maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common],
                       help="decide whether x is majorized by y")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("witness", parents=[common],
                       help="write a doubly stochastic D with D y = x")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("out")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("extremizers", parents=[common],
                       help="rearrangement extremes and attaining permutations")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_extremizers)

    p = sub.add_parser("isotone", parents=[common],
                       help="point-wise predicates or global classification")
    p.add_argument("matrix")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--at", help="anchor vector file")
    target.add_argument("--global", dest="global_", action="store_true",
                        help="classify the global form instead")
    p.add_argument("--predicate", choices=["left", "right", "point", "equiv", "all"],
                   default="equiv")
    p.set_defaults(func=cmd_isotone)

    p = sub.add_parser("verify", parents=[common],
                       help="campaign: all five statements must agree per matrix")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--alpha", help="anchor vector file (default n, n-1, .., 1)")
    p.add_argument("--matrices", type=int, default=100)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (CliError, GuardExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())
