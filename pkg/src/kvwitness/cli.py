"""Command-line interface.

Exit codes: 0 success, 1 audit mismatch, 2 scenario or input error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .errors import InvariantViolation, KVError
from .report import build_report, check_expectations, jsonable, pencil_section, to_json, to_text
from .scenario import dump_scenario, load_embedded_scenario, load_scenario

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _scenario(args):
    return load_scenario(args.scenario) if args.scenario else load_embedded_scenario()


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _render(args, report: dict) -> str:
    return to_json(report) if args.format == "json" else to_text(report)


def cmd_verify(args) -> int:
    sc = _scenario(args)
    built = sc.build()
    report = build_report(built, ext_degree=args.ext_degree, explore=args.explore)
    code = EXIT_OK
    if args.mode == "audit":
        mismatches = check_expectations(sc, report)
        report["expectations"] = {
            "checked": len(sc.expectations),
            "mismatches": [
                {"path": m.path, "expected": m.expected, "computed": m.computed, "note": m.note}
                for m in mismatches
            ],
            "passed": not mismatches,
        }
        for m in mismatches:
            print(f"MISMATCH {m.path}: expected {m.expected!r}, computed {m.computed!r}", file=sys.stderr)
        if mismatches:
            code = EXIT_MISMATCH
    _emit(args, _render(args, report))
    return code


def cmd_audit(args) -> int:
    args.mode = "audit"
    return cmd_verify(args)


def cmd_pencil(args) -> int:
    report = {"pencil": pencil_section(args.prime, args.ext_degree)}
    _emit(args, _render(args, report))
    return EXIT_OK


def cmd_dump_lattice(args) -> int:
    built = _scenario(args).build()
    stages = dict(built.stages)
    if args.stage and args.stage not in stages:
        raise KVError(f"unknown stage {args.stage!r}; known: {list(stages)}")
    s = stages[args.stage] if args.stage else built.surface
    data = {
        "stage": args.stage or built.stages[-1][0],
        "basis": list(s.basis_names),
        "gram_diagonal": [s.gram[i, i] for i in range(s.rank)],
        "canonical": dict(zip(s.basis_names, s.canonical)),
        "curves": {
            c.name: {"class": dict(zip(s.basis_names, c.cls)), "prime": c.is_prime} for c in s.curves
        },
        "history": [
            {"class": r.new_class_name, "curve": r.curve_name, "center": dict(r.center_multiplicities)}
            for r in s.history
        ],
    }
    if args.format == "json":
        _emit(args, to_json(data))
    else:
        lines = [f"stage {data['stage']}  rank {s.rank}  basis {' '.join(s.basis_names)}"]
        lines.append("K = " + " ".join(str(x) for x in s.canonical))
        for c in s.curves:
            lines.append(f"{c.name:>6} = " + " ".join(f"{x:>3}" for x in jsonable(list(c.cls))))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_export_scenario(args) -> int:
    _emit(args, dump_scenario(_scenario(args)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kvwitness", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario=True):
        if scenario:
            p.add_argument("--scenario", metavar="PATH", help="scenario JSON file (default: the embedded one)")
        p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
        p.add_argument("--format", choices=("json", "text"), default="json")

    v = sub.add_parser("verify", help="run the full verification and print a report")
    common(v)
    v.add_argument("--mode", choices=("report", "audit"), default="report")
    v.add_argument("--ext-degree", type=_positive, default=None, help="extension degree for the pencil scan")
    v.add_argument("--explore", action="store_true", help="add an exploratory sweep over candidate divisors")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("audit", help="verify and compare against the scenario's expectations")
    common(a)
    a.add_argument("--ext-degree", type=_positive, default=None)
    a.add_argument("--explore", action="store_true")
    a.set_defaults(func=cmd_audit, mode="audit")

    p = sub.add_parser("pencil", help="scan the standard cubic pencil over a prime field")
    common(p, scenario=False)
    p.add_argument("--prime", "-p", type=int, default=5)
    p.add_argument("--ext-degree", type=_positive, default=2)
    p.set_defaults(func=cmd_pencil)

    d = sub.add_parser("dump-lattice", help="print basis, canonical class and curve classes")
    common(d)
    d.add_argument("--stage", default=None, help="construction stage (default: final surface)")
    d.set_defaults(func=cmd_dump_lattice)

    e = sub.add_parser("export-scenario", help="print the (embedded) scenario in canonical form")
    common(e)
    e.set_defaults(func=cmd_export_scenario)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except KVError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
