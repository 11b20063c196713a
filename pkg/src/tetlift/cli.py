"""Command-line interface.

Exit codes: 0 success, 1 validation failure (incompatible data, failed
checks), 2 usage error (bad flags, unreadable or malformed input).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .bump import BumpSpec, moment_table
from .hardy import edge_kernel_A, edge_kernel_A_quadrature, edge_kernel_grid, partial_fraction_decompose, verify_partial_fractions
from .jsonio import dumps, poly_from_json, poly_to_json, report, traces_from_json, traces_to_json
from .kernels import lift_E, lift_M, lift_R, lift_S, lift_S_krq
from .norms import stability_csv, stability_experiment
from .pipeline import IncompatibleTraces, lift_L4, verify_roundtrip
from .poly import NotDivisible
from .traces import check_polynomial_compatibility, normal_trace_tuple

__all__ = ["main", "run_command", "build_parser"]

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


class ValidationFailure(Exception):
    def __init__(self, message: str, payload: dict | None = None) -> None:
        super().__init__(message)
        self.payload = payload


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _int_triple(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated integers")
    try:
        return tuple(int(p) for p in parts)  # type: ignore[return-value]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _load_poly(path: str, nvars: int | None = None):
    try:
        p = poly_from_json(_read_json(path))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed polynomial in {path}: {exc}") from exc
    if nvars is not None and p.nvars != nvars:
        raise UsageError(f"{path}: expected a {nvars}-variable polynomial, got {p.nvars}")
    return p


def _load_traces(path: str):
    try:
        return traces_from_json(_read_json(path))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed trace data in {path}: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _bump(args) -> BumpSpec:
    return BumpSpec(args.m)


# -- subcommands -------------------------------------------------------------


def cmd_moments(args) -> int:
    rows = moment_table(_bump(args), args.max_degree)
    if args.json:
        body = {"m": args.m, "moments": [{"alpha": [a, b], "mu": str(mu)} for a, b, mu in rows]}
        _emit(dumps(report("moments", body)), args.out)
    else:
        _emit("\n".join(f"{a} {b} {mu}" for a, b, mu in rows), args.out)
    return EXIT_OK


def cmd_trace(args) -> int:
    u = _load_poly(args.poly, 3)
    F = normal_trace_tuple(u, args.k)
    _emit(dumps(traces_to_json(F)), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    F = _load_traces(args.traces)
    rep = check_polynomial_compatibility(F)
    _emit(dumps(report("compatibility", rep.to_dict())), args.out)
    return EXIT_OK if rep.ok else EXIT_INVALID


def _run_kernel(fn, args) -> int:
    f = _load_poly(args.poly, 2)
    try:
        out = fn(f)
    except NotDivisible as exc:
        raise ValidationFailure(str(exc)) from exc
    _emit(dumps(poly_to_json(out)), args.out)
    return EXIT_OK


def cmd_lift_e(args) -> int:
    return _run_kernel(lambda f: lift_E(f, args.k, _bump(args)), args)


def cmd_lift_m(args) -> int:
    return _run_kernel(lambda f: lift_M(f, args.k, args.r, _bump(args), face=args.face), args)


def cmd_lift_s(args) -> int:
    if args.q is None:
        return _run_kernel(lambda f: lift_S(f, args.k, args.r, _bump(args), face=args.face), args)
    return _run_kernel(lambda f: lift_S_krq(f, args.k, args.r, args.q, _bump(args), face=args.face), args)


def cmd_lift_r(args) -> int:
    return _run_kernel(lambda f: lift_R(f, args.k, args.r, _bump(args), face=args.face), args)


def cmd_lift(args) -> int:
    F = _load_traces(args.traces)
    try:
        u = lift_L4(F, _bump(args))
    except IncompatibleTraces as exc:
        raise ValidationFailure(str(exc), {"face": exc.face, "order": exc.order}) from exc
    _emit(dumps(poly_to_json(u)), args.out)
    return EXIT_OK


def cmd_verify_roundtrip(args) -> int:
    if args.order > args.degree:
        raise UsageError("--order must not exceed --degree")
    rep = verify_roundtrip(args.degree, args.order, args.samples, args.seed, _bump(args), workers=args.workers)
    _emit(dumps(report("roundtrip", rep.to_dict())), args.report)
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_partial_fractions(args) -> int:
    beta = args.beta
    if min(beta) < 0 or sum(beta) < 2:
        raise UsageError("--beta needs nonnegative entries with sum >= 2")
    table = partial_fraction_decompose(beta)
    verified = verify_partial_fractions(beta, table)
    if args.json:
        body = {
            "beta": list(beta),
            "verified": verified,
            "terms": [{"alpha": list(a), "c": c} for a, c in sorted(table.items())],
        }
        _emit(dumps(report("partial_fractions", body)), args.out)
    else:
        lines = ["alpha1,alpha2,alpha3,c"] + [f"{a[0]},{a[1]},{a[2]},{c}" for a, c in sorted(table.items())]
        _emit("\n".join(lines), args.out)
    return EXIT_OK if verified else EXIT_INVALID


def cmd_edge_kernel(args) -> int:
    if args.grid < 1:
        raise UsageError("--grid must be positive")
    header = "x1,x2,A" + (",A_quadrature" if args.oracle else "")
    lines = [header]
    for x1, x2 in edge_kernel_grid(args.grid):
        row = [repr(float(x1)), repr(float(x2)), repr(edge_kernel_A(x1, x2))]
        if args.oracle:
            row.append(repr(edge_kernel_A_quadrature(x1, x2)))
        lines.append(",".join(row))
    _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_stability(args) -> int:
    if args.s < args.order + 1:
        raise UsageError("--s must be at least --order + 1")
    if args.p <= 1:
        raise UsageError("--p must exceed 1")
    rows = stability_experiment(args.degree, args.order, args.samples, args.s, args.p, args.seed, _bump(args))
    _emit(stability_csv(rows), args.csv)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output and errors")
    common.add_argument("--out", help="write output to this file instead of stdout")

    bump = argparse.ArgumentParser(add_help=False)
    bump.add_argument("--m", type=int, default=2, help="bump exponent (default 2)")

    parser = _Parser(prog="tetlift", description="Exact polynomial trace lifting on the reference tetrahedron.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("moments", parents=[common, bump], help="bump moment table")
    p.add_argument("--max-degree", type=int, default=2)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("trace", parents=[common], help="normal-derivative traces of a polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("check", parents=[common], help="compatibility report for trace data")
    p.add_argument("--traces", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lift-e", parents=[common, bump], help="convolution lift from face 1")
    p.add_argument("--poly", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_lift_e)

    for name, func, faces, extra in (
        ("lift-m", cmd_lift_m, (1, 2), False),
        ("lift-s", cmd_lift_s, (1, 3), True),
        ("lift-r", cmd_lift_r, (1, 4), False),
    ):
        p = sub.add_parser(name, parents=[common, bump], help=f"weighted lift on face {faces[0]} or {faces[1]}")
        p.add_argument("--poly", required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--r", type=int, required=True)
        if extra:
            p.add_argument("--q", type=int, default=None)
        p.add_argument("--face", type=int, choices=faces, default=1)
        p.set_defaults(func=func)

    p = sub.add_parser("lift", parents=[common, bump], help="lift compatible trace data")
    p.add_argument("--traces", required=True)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("verify-roundtrip", parents=[common, bump], help="randomized lift/trace check")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify_roundtrip)

    p = sub.add_parser("partial-fractions", parents=[common], help="two-weight partial fractions")
    p.add_argument("--beta", type=_int_triple, required=True)
    p.set_defaults(func=cmd_partial_fractions)

    p = sub.add_parser("edge-kernel", parents=[common], help="edge kernel on an interior grid (CSV)")
    p.add_argument("--grid", type=int, default=10)
    p.add_argument("--oracle", action="store_true", help="add a quadrature column")
    p.set_defaults(func=cmd_edge_kernel)

    p = sub.add_parser("stability", parents=[common, bump], help="lift-norm / trace-surrogate ratios (CSV)")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_stability)
    return parser


def _report_error(kind: str, message: str, as_json: bool, extra: dict | None = None) -> None:
    if as_json:
        payload = {"error": kind, "message": message}
        if extra:
            payload.update(extra)
        sys.stderr.write(json.dumps(payload) + "\n")
    else:
        sys.stderr.write(f"tetlift: {kind}: {message}\n")


def run_command(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        _report_error("usage", str(exc), as_json)
        return EXIT_USAGE
    except ValidationFailure as exc:
        _report_error("validation", str(exc), as_json, exc.payload)
        return EXIT_INVALID
    except ValueError as exc:
        # invalid parameter combinations caught deeper down
        _report_error("usage", str(exc), as_json)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
