"""Command line entry point.

``orthoinv verify --m 2 --q 4`` runs every suite for that configuration
and prints one line per check.  Exit status: 0 when everything passed,
1 when any check failed, 2 for a rejected configuration.
"""

from __future__ import annotations

import argparse
import sys

from .harness import SUITES, ConfigError, RunConfig, run


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orthoinv",
        description="exact verification of the odd orthogonal invariant tower",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    ver = sub.add_parser("verify", help="run check suites for one (m, q)")
    ver.add_argument("--m", type=int, required=True, help="number of hyperbolic pairs (1..3)")
    ver.add_argument("--q", type=int, required=True, help="field order (2, 4, 8 or 16)")
    ver.add_argument(
        "--suite",
        action="append",
        default=None,
        metavar="NAME",
        help=f"suite to run, repeatable; one of {', '.join(list(SUITES) + ['all'])}",
    )
    ver.add_argument("--degree-cap", type=int, default=None, help="cap for dimension-by-degree scans")
    ver.add_argument("--term-budget", type=int, default=2_000_000, help="polynomial size budget")
    ver.add_argument("--jobs", type=int, default=1, help="accepted for interface parity; runs use one worker")
    ver.add_argument("--cache-dir", default=None, help="directory for the text cache")
    ver.add_argument("--report", default=None, help="write a JSON report here, with CSV and figures beside it")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            m=args.m,
            q=args.q,
            suites=args.suite or ["all"],
            degree_cap=args.degree_cap,
            term_budget=args.term_budget,
            jobs=args.jobs,
            cache_dir=args.cache_dir,
            report=args.report,
        )
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    report = run(config)
    width = max((len(c["name"]) for c in report["checks"]), default=0)
    for row in report["checks"]:
        mark = {"pass": "PASS", "fail": "FAIL", "skipped": "skip"}[row["status"]]
        line = f"{mark}  {row['name']:<{width}}  {row['millis']:>7}ms"
        if row["detail"] and row["status"] != "pass":
            line += f"  {row['detail']}"
        print(line)
    s = report["summary"]
    print(
        f"{s['total']} checks: {s['passed']} passed, {s['failed']} failed, "
        f"{s['skipped']} skipped in {s['seconds']}s"
    )
    return 0 if s["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
