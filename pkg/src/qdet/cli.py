"""Command line entry points.

    qdet verify --m 3 --n 3 --gamma "1,3|1,2" --max-degree 3 \
        --suites torus,ore-tower --report out.json
    qdet compute minor --m 3 --n 3 "1,3|1,2"
    qdet compute expr --m 2 --n 2 "x[1,1]*x[2,2] - q*x[1,2]*x[2,1]"

verify exits 0 when every check passes, 1 when any check fails, and 2 on
configuration or syntax problems.  The QDET_CACHE environment variable
overrides --cache when both are present.
"""

import argparse
import sys
from fractions import Fraction

from .errors import ConfigError, ExprSyntaxError, WorkbenchError
from .algebra import MatrixShape, render_poly
from .minors import Minor, minor_value
from .parser import parse_expression, parse_index_pair
from .suites import SUITE_NAMES, WorkbenchConfig, emit_report, run_workbench

#: failing checks printed before the list is elided
FAIL_PRINT_CAP = 25


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qdet",
        description="Exact checks for quantum matrix algebras and their "
                    "determinantal factor rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument("--m", type=int, required=True, help="number of rows")
    verify.add_argument("--n", type=int, required=True, help="number of columns")
    verify.add_argument("--gamma", default=None,
                        help="minor as 'rows|cols', e.g. '1,3|1,2'")
    verify.add_argument("--max-degree", type=int, default=3, dest="max_degree")
    verify.add_argument("--suites", default="all",
                        help="comma-separated subset of: %s, all"
                             % ", ".join(SUITE_NAMES))
    verify.add_argument("--report", default=None,
                        help="write a JSON report to this path")
    verify.add_argument("--q-mode", choices=("exact", "specialize"),
                        default="exact", dest="q_mode")
    verify.add_argument("--q-values", default=None, dest="q_values",
                        help="comma-separated rationals for specialize mode")
    verify.add_argument("--cache", default=None,
                        help="directory for cached ideal spans")
    verify.add_argument("--jobs", type=int, default=1,
                        help="suites run in this many threads")

    compute = sub.add_parser("compute", help="evaluate one expression")
    compute.add_argument("what", choices=("minor", "expr"))
    compute.add_argument("text", help="minor indices 'rows|cols' or an expression")
    compute.add_argument("--m", type=int, required=True)
    compute.add_argument("--n", type=int, required=True)
    return parser


def _parse_q_values(text):
    if not text:
        return ()
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        try:
            out.append(Fraction(piece))
        except (ValueError, ZeroDivisionError):
            raise ConfigError("bad q value %r" % piece) from None
    return tuple(out)


def _cmd_verify(args):
    gamma = None
    if args.gamma is not None:
        gamma = parse_index_pair(args.gamma)
    config = WorkbenchConfig(
        m=args.m, n=args.n, gamma=gamma, max_degree=args.max_degree,
        suites=tuple(s.strip() for s in args.suites.split(",") if s.strip()),
        q_mode=args.q_mode, q_values=_parse_q_values(args.q_values),
        cache=args.cache, jobs=args.jobs)
    run = run_workbench(config)
    shown = 0
    for suite in run.suites:
        failed = suite.failed
        print("suite %-13s pass %d / fail %d"
              % (suite.name, len(suite.checks) - len(failed), len(failed)))
        for check in failed:
            if shown < FAIL_PRINT_CAP:
                detail = " (%s)" % check.witness if check.witness else ""
                print("  FAIL %s: %s%s" % (suite.name, check.name, detail))
            shown += 1
    if shown > FAIL_PRINT_CAP:
        print("  ... %d more failures" % (shown - FAIL_PRINT_CAP))
    print(run.summary_line())
    if args.report:
        with open(args.report, "w", encoding="ascii") as fh:
            emit_report(run, fh)
        print("report written to %s" % args.report)
    return 0 if run.ok else 1


def _cmd_compute(args):
    shape = MatrixShape(args.m, args.n)
    if args.what == "minor":
        rows, cols = parse_index_pair(args.text)
        value = minor_value(Minor(shape, rows, cols))
    else:
        value = parse_expression(args.text, shape)
    print(render_poly(value))
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_compute(args)
    except ExprSyntaxError as exc:
        print("syntax error at position %d: %s" % (exc.pos, exc),
              file=sys.stderr)
        return 2
    except WorkbenchError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
