"""Command-line front end: ``qdeform {eval,triangle,numbers,classify,check}``.

Exit codes: 0 success, 2 parse or usage error, 3 domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .core_ops import DeformParam
from .errors import DomainError, ResourceError
from .expr import EvalContext, EvalError, ParseError, evaluate, parse
from .laws import SampleSpec, check_claims
from .numerics import Scalar, Tolerance, is_exact, parse_scalar, to_decimal_string
from .pascal import Format, build_triangle, classify, render
from .qnumbers import int_sequence

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: error: {message}")


def _number(text: str) -> Scalar:
    try:
        return parse_scalar(text, exact=True)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _q_value(text: str) -> Scalar:
    """Integral q stays exact; anything else runs in floating point."""
    value = _number(text)
    return value if isinstance(value, int) else float(value)


def _fmt(value: Scalar, precision: int | None) -> str:
    if precision is not None and not is_exact(value):
        return format(value, f".{precision}g")
    return to_decimal_string(value)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="qdeform", description="Deformed q-arithmetic toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a deformed expression")
    p.add_argument("expression")
    p.add_argument("--q", type=_q_value, required=True)
    p.add_argument("--g", type=_number, default=1, help="generator used by qnum()")
    p.add_argument("--H", type=_number, default=None, help="Heine base used by heine()")
    p.add_argument("--exact", action="store_true", help="exact rational arithmetic (needs integer 1-q)")
    p.add_argument("--precision", type=int, default=None)

    p = sub.add_parser("triangle", help="build and render a q-Pascal triangle")
    p.add_argument("--q", type=_q_value, required=True)
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--g", type=_number, default=1)
    p.add_argument("--format", choices=[f.value for f in Format], default="text")
    p.add_argument("--precision", type=int, default=3, help="decimals kept (truncated) in text output")
    p.add_argument("--exact", action="store_true")

    p = sub.add_parser("numbers", help="tabulate deformed integers n_q")
    p.add_argument("--q", type=_q_value, required=True)
    p.add_argument("--from", dest="lo", type=int, required=True)
    p.add_argument("--to", dest="hi", type=int, required=True)
    p.add_argument("--g", type=_number, default=1)
    p.add_argument("--format", choices=[f.value for f in Format], default="text")

    p = sub.add_parser("classify", help="name the triangle pattern for q")
    p.add_argument("--q", type=_q_value, required=True)

    p = sub.add_parser("check", help="run the distributivity law checker (JSON lines)")
    p.add_argument("--family", choices=["q", "qab", "a", "k", "all"], default="all")
    p.add_argument("--param", type=_q_value, default=None)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_eval(args: argparse.Namespace, out: TextIO) -> int:
    q = DeformParam(args.q)
    if args.exact and not (is_exact(q.q) and q.one_minus_q != 0):
        raise UsageError("--exact needs 1 - q to be a non-zero integer")
    ast = parse(args.expression)
    ctx = EvalContext(q, generator=args.g, exact=args.exact, H=args.H)
    print(_fmt(evaluate(ast, ctx), args.precision), file=out)
    return EXIT_OK


def _cmd_triangle(args: argparse.Namespace, out: TextIO) -> int:
    if args.rows < 1:
        raise UsageError("--rows must be at least 1")
    try:
        tri = build_triangle(args.rows, args.q, args.g, exact=True if args.exact else None)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(render(tri, args.format, args.precision), file=out)
    return EXIT_OK


def _cmd_numbers(args: argparse.Namespace, out: TextIO) -> int:
    if args.lo > args.hi:
        raise UsageError("--from must not exceed --to")
    values = int_sequence(args.lo, args.hi, args.q, args.g)
    pairs = list(zip(range(args.lo, args.hi + 1), values))
    if args.format == "json":
        payload = {
            "q": to_decimal_string(args.q),
            "g": to_decimal_string(args.g),
            "numbers": [{"n": str(n), "value": to_decimal_string(v)} for n, v in pairs],
        }
        print(json.dumps(payload), file=out)
    elif args.format == "csv":
        print("n,value", file=out)
        for n, v in pairs:
            print(f"{n},{to_decimal_string(v)}", file=out)
    else:
        for n, v in pairs:
            print(f"{n}\t{to_decimal_string(v)}", file=out)
    return EXIT_OK


def _cmd_classify(args: argparse.Namespace, out: TextIO) -> int:
    result = classify(args.q)
    line = result.label.value
    if result.limit_value is not None:
        line += f" limit={to_decimal_string(result.limit_value)}"
    print(line, file=out)
    return EXIT_OK


def _cmd_check(args: argparse.Namespace, out: TextIO) -> int:
    families = ["q", "a", "k"] if args.family == "all" else ["q" if args.family == "qab" else args.family]
    if args.samples < 100:
        raise UsageError("--samples must be at least 100")
    tolerance = SampleSpec.tolerance
    env_tol = Tolerance.from_env()
    if env_tol != Tolerance():
        tolerance = max(env_tol.abs_eps, env_tol.rel_eps)
    spec = SampleSpec(count=args.samples, seed=args.seed, tolerance=tolerance)
    params = None if args.param is None else [args.param]
    for report in check_claims(families, params, spec):
        print(report.dumps(), file=out)
    return EXIT_OK


COMMANDS = {
    "eval": _cmd_eval,
    "triangle": _cmd_triangle,
    "numbers": _cmd_numbers,
    "classify": _cmd_classify,
    "check": _cmd_check,
}


def run(argv: Sequence[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(list(argv))
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(str(exc), file=err)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_USAGE
    except (EvalError, DomainError, ResourceError) as exc:
        print(f"domain error: {exc}", file=err)
        return EXIT_DOMAIN
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
