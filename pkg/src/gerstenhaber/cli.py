"""Command-line entry point: ``gerstenhaber verify ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import GerstenhaberError
from .report import DEFAULT_MAX_DEGREE, DEFAULT_ORDER, RunConfig, dumps, exit_code, render_text, run

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gerstenhaber",
                                     description="Exact verification of differential Gerstenhaber algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run verification suites and emit a report")
    src = v.add_mutually_exclusive_group(required=True)
    src.add_argument("--model", help="builtin model, kodaira:N or torus:N")
    src.add_argument("--spec", metavar="FILE", help="JSON algebra spec")
    v.add_argument("--seed", metavar="FILE", help="JSON Kodaira seed parameters")
    v.add_argument("--order", type=int, default=DEFAULT_ORDER)
    v.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    v.add_argument("--suites", default="all",
                   help="comma-separated: axioms,hodge,golden,table1,kuranishi,isomorphism,probe or all")
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(model=args.model, spec=args.spec, seed=args.seed, order=args.order,
                       max_degree=args.max_degree, suites=[args.suites], format=args.format, out=args.out)
    try:
        report = run(config)
    except GerstenhaberError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dumps(report) if config.format == "json" else render_text(report)
    if config.out:
        Path(config.out).write_text(text)
    else:
        sys.stdout.write(text)
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
