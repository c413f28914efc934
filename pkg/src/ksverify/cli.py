"""Command-line front end.

    ksverify verify --builtin mermin-peres --format json
    ksverify derive --file scenario.json
    ksverify export --builtin singlet > singlet.json

Exit status: 0 when every validation passes, 1 on a verification mismatch,
2 on bad input.
"""
from __future__ import annotations

import argparse
import sys

from .constraints import ScenarioError
from .report import Options, build_report, derive_report, dumps, render_derive_text, render_text
from .scenario_io import BUILTINS, ScenarioFileError, build_scenario, builtin_file, load_scenario_file
from .search import SearchLimitError

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", choices=sorted(BUILTINS), help="use a built-in scenario")
    src.add_argument("--file", metavar="PATH", help="read a JSON scenario file")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ksverify",
        description="Exact verification of parity-rule Kochen-Specker contradictions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="derive constraints and prove or refute satisfiability")
    _add_source(verify)
    verify.add_argument("--format", choices=["text", "json"], default="text")
    verify.add_argument("--skip-enumeration", action="store_true", help="rely on the parity argument only")
    verify.add_argument("--multiplicative", action="store_true", help="also search +-1 values on a declared magic square")
    verify.add_argument("--criticality", action="store_true", help="re-run the search with each constraint dropped")
    verify.add_argument("--expect", choices=["sat", "unsat"], help="exit 1 unless the verdict matches")

    derive = sub.add_parser("derive", help="print the derived constraints only")
    _add_source(derive)
    derive.add_argument("--format", choices=["text", "json"], default="json")

    export = sub.add_parser("export", help="write a scenario as a JSON scenario file")
    _add_source(export)
    return parser


def _load(args):
    if args.builtin:
        return builtin_file(args.builtin), args.builtin
    return load_scenario_file(args.file), args.file


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    source = args.builtin or args.file
    try:
        sf, source = _load(args)
        if args.command == "export":
            sys.stdout.write(sf.dumps())
            return EXIT_OK
        built = build_scenario(sf)
        if args.command == "derive":
            report = derive_report(built)
            sys.stdout.write(dumps(report) if args.format == "json" else render_derive_text(report))
            return EXIT_OK
        options = Options(
            enumerate=not args.skip_enumeration,
            multiplicative=args.multiplicative,
            criticality=args.criticality,
            expect=args.expect,
        )
        report = build_report(sf, built, options)
    except ScenarioFileError as exc:
        print(f"ksverify: error: {source}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ScenarioError, SearchLimitError) as exc:
        print(f"ksverify: error: {source}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(dumps(report) if args.format == "json" else render_text(report))
    if args.multiplicative and built.square is None:
        print(f"ksverify: note: {source} declares no magic square; multiplicative search skipped", file=sys.stderr)
    if report["status"] != "ok":
        for prob in report["problems"]:
            print(f"ksverify: {prob}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
