"""Command line entry point.

Human-readable summaries go to standard output; ``--out FILE`` writes the
JSON certificate.  Exit codes: 0 all checks pass, 1 a mathematical check
failed, 2 usage or I/O error, 3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import covers, graphs, invariants, monodromy, numeric
from .symgroup import Permutation

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _plain(value):
    """JSON-ready copy with fixed float precision and exact rationals as strings."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(f"{float(value):.6e}")
    return value


def dumps(payload: dict) -> str:
    return json.dumps(_plain(payload), indent=2) + "\n"


def _emit(payload: dict, out: str | None) -> None:
    if out:
        Path(out).write_text(dumps(payload))


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


# -- subcommands ----------------------------------------------------------------------


def cmd_classify(args) -> int:
    classes = graphs.enumerate_generic_covers(args.n, args.m)
    print(f"generic covers branched over x^{args.n} = y^{args.m} (degree >= 3)")
    print(f"{'d':>4} {'orientation':>12} {'valence':>8} {'increment':>10} {'exponent':>9}")
    for c in classes:
        p = c.polygon
        print(f"{p.d:>4} {c.orientation:>12} {p.valence:>8} {p.increment:>10} {c.compatible_exponent:>9}")
    print("degree 2: always present")
    _emit({"n": args.n, "m": args.m, "classes": [c.to_json() for c in classes], "double_cover": True}, args.out)
    return EXIT_OK


def cmd_polygon(args) -> int:
    spec = graphs.PolygonSpec(args.d, args.a, args.j)
    g = graphs.build_polygon(spec)
    payload = {**g.to_json(), "valence": args.a, "increment": args.j, "axioms": graphs.check_polygon_axioms(g, args.j)}
    sys.stdout.write(dumps(payload))
    _emit(payload, args.out)
    return EXIT_OK if payload["axioms"] else EXIT_FAIL


def cmd_verify(args) -> int:
    data = _load_json(args.file)
    try:
        d = int(data["d"])
        taus = tuple(Permutation(tuple(t)) for t in data["taus"])
        pres = monodromy.PresentationSpec.from_json(data["presentation"])
        cert = monodromy.certificate(monodromy.MonodromyAssignment(d, taus), pres)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad assignment file: {exc}") from None
    for name, ok in cert["checks"].items():
        print(f"{name:>12}: {'pass' if ok else 'FAIL'}")
    _emit(cert, args.out)
    return EXIT_OK if all(cert["checks"].values()) else EXIT_FAIL


def cmd_numeric(args) -> int:
    config = numeric.TrackingConfig(eps=args.eps)
    cert = numeric.numeric_vs_polygon(args.h, args.k, args.a, args.b, config)
    cert["residual_tolerance"] = args.tol
    cert["passed"] = cert["passed"] and cert["max_residual"] < args.tol
    print(f"(h,k)=({args.h},{args.k}) a={args.a} b={args.b}: d={cert['polygon']['d']} increment={cert['polygon']['j']}")
    print(f"transpositions: {cert['transpositions']}")
    print(f"max residual {cert['max_residual']:.2e}, steps {cert['steps']}: {'pass' if cert['passed'] else 'FAIL'}")
    _emit(cert, args.out)
    return EXIT_OK if cert["passed"] else EXIT_FAIL


def _curve(path: str) -> invariants.BranchCurveData:
    data = _load_json(path)
    try:
        return invariants.BranchCurveData.from_json(data)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"bad curve file: {exc}") from None


def cmd_invariants(args) -> int:
    curve = _curve(args.file)
    report = invariants.invariant_report(curve, args.N, check_degree=not args.no_degree_check)
    for key, value in report.items():
        print(f"{key:>28}: {value}")
    _emit(report, args.out)
    ok = report["dual_degree"] == report["class_formula_dual_degree"] and report.get("noether", True)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bound(args) -> int:
    curve = _curve(args.file)
    report = invariants.bmy_report(curve, args.N, check_degree=not args.no_degree_check)
    bound = report["chisini_bound"]
    print(f"Chisini bound: {bound}  (a smooth cover with smooth ramification of degree > {bound} is unique)")
    print(f"uniform estimate: {report['uniform_estimate']} < {report['degree_threshold']}: {report['uniform_below_threshold']}")
    print(f"verdict: any smooth cover of degree >= {report['degree_threshold']} is unique ({report['threshold_note']})")
    _emit(report, args.out)
    return EXIT_OK if report["uniform_below_threshold"] else EXIT_FAIL


def cmd_counterexample(args) -> int:
    cert = covers.pair_certificate(args.t)
    c = cert["curve"]
    print(f"curve {c['equation']}")
    print(f"degree {c['degree']}, {c['singular_points']} singular points of type x^{c['local_type']['m']} = y^{c['local_type']['n']}")
    for cov in cert["covers"]:
        ram = cov["ramification"]
        desc = "smooth" if ram["smooth"] else f"{ram['singular_points']} points of type {ram['local_type']['name']}"
        status = "pass" if all(cov["checks"].values()) else "FAIL"
        print(f"  cover of degree {cov['degree']}: ramification {desc}; checks {status}")
    print(f"non-equivalent by degree: {cert['non_equivalent_by_degree']}")
    _emit(cert, args.out)
    return EXIT_OK if cert["passed"] else EXIT_FAIL


def cmd_certify(args) -> int:
    result = covers.certify(_load_json(args.file))
    print("pass" if result["passed"] else "FAIL")
    for f in result["failures"]:
        print(f"  {f}")
    _emit(result, args.out)
    return EXIT_OK if result["passed"] else EXIT_FAIL


def cmd_unique_pair(args) -> int:
    result = covers.unique_sum_product_pair(args.bound)
    for a, b in result["solutions"]:
        print(f"{tuple(a)} <-> {tuple(b)}")
    _emit(result, args.out)
    return EXIT_OK if result["solutions"] == [[[1, 5], [2, 3]]] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chisini-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--out", help="write the JSON certificate here")
        p.set_defaults(func=func)
        return p

    p = add("classify", cmd_classify, "list generic covers branched over x^n = y^m")
    p.add_argument("n", type=_positive_int)
    p.add_argument("m", type=_positive_int)

    p = add("polygon", cmd_polygon, "build a polygon monodromy graph")
    p.add_argument("d", type=_positive_int)
    p.add_argument("a", type=_positive_int, help="valence")
    p.add_argument("j", type=_positive_int, help="increment")

    p = add("verify", cmd_verify, "check an assignment file against its presentation")
    p.add_argument("file")

    p = add("numeric-monodromy", cmd_numeric, "track fibre roots of F(h,k,a,b) around the branch points")
    p.add_argument("h", type=_positive_int)
    p.add_argument("k", type=_positive_int)
    p.add_argument("--a", type=_positive_int, default=1)
    p.add_argument("--b", type=_positive_int, default=1)
    p.add_argument("--eps", type=_positive_float, default=0.1)
    p.add_argument("--tol", type=_positive_float, default=1e-8, help="maximal accepted tracking residual")

    for name, func, help_ in (
        ("invariants", cmd_invariants, "curve and surface invariants"),
        ("bound", cmd_bound, "uniqueness bounds"),
    ):
        p = add(name, func, help_)
        p.add_argument("file")
        p.add_argument("--N", type=_positive_int, help="cover degree")
        p.add_argument("--no-degree-check", action="store_true", help="skip the N >= max s(n+1) gate")

    p = add("counterexample", cmd_counterexample, "certified pair of covers over one curve")
    p.add_argument("--t", type=_positive_int, required=True)

    p = add("certify", cmd_certify, "re-verify a pair certificate")
    p.add_argument("file")

    p = add("unique-pair", cmd_unique_pair, "search couples with swapped sum and product")
    p.add_argument("--bound", type=_positive_int, default=100)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except numeric.NumericFailure as exc:
        print(f"numeric failure: {exc} {exc.diagnostics}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, graphs.UnsupportedInput, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except invariants.InconsistentData as exc:
        print(f"inconsistent data: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
