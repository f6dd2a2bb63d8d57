"""Command-line front-end: evaluate expressions and run identity suites.

Exit codes for eval: 0 ok, 1 config error, 2 syntax/type error, 3 math
error; check exits 0 iff every identity passes.  Diagnostics go to
stderr as one machine-readable line, e.g. "UnknownSymbol c9".
"""

from __future__ import annotations

import argparse
import sys

from .config import ChartConfig
from .dsl import Reframe, evaluate, parse, print_canonical
from .errors import (ConfigError, DivisionByZero, DslSyntaxError, IndexOutOfRange,
                     NotBasic, NotDegreeOne, SingularMatrix, SupercartanError,
                     TypeMismatch, UnknownSymbol)
from .randgen import GenBounds
from .suites import available_suites, run_suite

_SYNTAX_ERRORS = (DslSyntaxError, UnknownSymbol, TypeMismatch, IndexOutOfRange,
                  NotDegreeOne, NotBasic)
_MATH_ERRORS = (SingularMatrix, DivisionByZero)

_LABELS = {DslSyntaxError: "SyntaxError"}


def _label(exc) -> str:
    return _LABELS.get(type(exc), type(exc).__name__)


def _complain(exc) -> None:
    print("%s %s" % (_label(exc), exc), file=sys.stderr)


def _load_config(path) -> ChartConfig:
    if path is None:
        return ChartConfig.default()
    return ChartConfig.load(path)


def cmd_eval(args) -> int:
    try:
        config = _load_config(args.config)
    except ConfigError as exc:
        _complain(exc)
        return 1
    try:
        tree = parse(args.expression, config.chart)
        value = evaluate(tree, config.chart, config)
    except _SYNTAX_ERRORS as exc:
        _complain(exc)
        return 2
    except _MATH_ERRORS as exc:
        _complain(exc)
        return 3
    primed = isinstance(tree, Reframe)
    print(print_canonical(value, config.chart, primed=primed))
    return 0


def cmd_check(args) -> int:
    try:
        config = _load_config(args.config)
    except ConfigError as exc:
        _complain(exc)
        return 1
    if args.suite not in available_suites():
        print("ConfigError unknown suite %r (choose from %s)"
              % (args.suite, ", ".join(available_suites())), file=sys.stderr)
        return 1
    bounds = GenBounds()
    if args.max_degree is not None:
        bounds = GenBounds(poly_degree=args.max_degree)
    results = run_suite(args.suite, config.chart, seed=args.seed,
                        cases=args.cases, bounds=bounds)
    for result in results:
        print(result.line())
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supercartan",
        description="Exact Cartan calculus on a graded coordinate chart.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate an expression to canonical form")
    p_eval.add_argument("expression")
    p_eval.add_argument("--config", metavar="PATH",
                        help="chart configuration file (default: n=2, m=2)")
    p_eval.set_defaults(run=cmd_eval)

    p_check = sub.add_parser("check", help="run the identity verification suites")
    p_check.add_argument("--config", metavar="PATH")
    p_check.add_argument("--suite", default="all",
                         help="one of: %s" % ", ".join(available_suites()))
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--cases", type=int, default=20)
    p_check.add_argument("--max-degree", type=int, default=None,
                         help="polynomial degree bound for random coefficients")
    p_check.set_defaults(run=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except SupercartanError as exc:  # safety net: anything uncaught is config-level
        _complain(exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
