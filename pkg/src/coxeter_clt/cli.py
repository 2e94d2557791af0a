"""Command line entry point: ``coxeter-clt run|dist|d2|audit``.

Exit codes: 0 success, 1 validation error (bad spec, group string or input
law), 2 runtime error (cap exceeded, missing table, I/O, failed audit).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .audit import run_all
from .coxeter import parse_group
from .distributions import DiscreteDistribution, product_t_distribution, standardize
from .enumeration import DEFAULT_CAP
from .errors import CoxeterError, ParameterOutOfRange, ParseError
from .harness import MODES, emit_report, load_spec, run_experiment
from .wasserstein import d2_to_normal

EXIT_OK, EXIT_INVALID, EXIT_RUNTIME = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxeter-clt", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment spec and write a report")
    run.add_argument("--spec", required=True, help="JSON spec file")
    run.add_argument("--format", choices=("csv", "json"), default="csv")
    run.add_argument("--out", help="output path (default: stdout)")
    run.add_argument("--seed", type=int, help="override the spec seed")
    run.add_argument("--samples", type=int, help="override the Monte Carlo sample size")
    run.add_argument("--cap", type=int, help="override the enumeration cap")
    run.add_argument("--mode", choices=MODES, help="override the spec mode")
    run.add_argument("--threads", type=int, default=1)
    run.add_argument("--cache-dir", help="directory for exceptional-group tables")
    run.add_argument("--timing", action="store_true", help="include wall times (breaks byte stability)")

    dist = sub.add_parser("dist", help="print the exact t-law of a group")
    dist.add_argument("group", help='group string, e.g. "A4xI2(5)"')
    dist.add_argument("--cap", type=int, default=DEFAULT_CAP)
    dist.add_argument("--standardize", action="store_true")

    d2 = sub.add_parser("d2", help="Wasserstein-2 distance of a serialized law to N(0,1)")
    d2.add_argument("law", help="JSON file with a serialized law ('-' for stdin)")
    d2.add_argument("--standardize", action="store_true", help="standardize the law first")

    audit = sub.add_parser("audit", help="run the inequality audits")
    audit.add_argument("--trials", type=int, default=1000)
    audit.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_run(args) -> int:
    spec = load_spec(args.spec)
    overrides = {k: getattr(args, k) for k in ("seed", "samples", "cap", "mode") if getattr(args, k) is not None}
    spec = replace(spec, **overrides)
    report = run_experiment(spec, threads=args.threads, cache_dir=args.cache_dir)
    text = emit_report(report, args.format, args.out, include_timing=args.timing)
    if args.out is None:
        sys.stdout.write(text)
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return EXIT_OK


def _cmd_dist(args) -> int:
    law = product_t_distribution(parse_group(args.group), args.cap)
    if args.standardize:
        law = standardize(law)
    print(json.dumps(law.to_json(), indent=2))
    return EXIT_OK


def _cmd_d2(args) -> int:
    text = sys.stdin.read() if args.law == "-" else Path(args.law).read_text()
    try:
        law = DiscreteDistribution.from_json(text)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"cannot read law: {exc}") from exc
    if args.standardize:
        law = standardize(law)
    print(repr(d2_to_normal(law)))
    return EXIT_OK


def _cmd_audit(args) -> int:
    results = run_all(args.trials, args.seed)
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_RUNTIME


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    handler = {"run": _cmd_run, "dist": _cmd_dist, "d2": _cmd_d2, "audit": _cmd_audit}[args.command]
    try:
        return handler(args)
    except (ParseError, ParameterOutOfRange, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (CoxeterError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
