"""Command-line interface.

Subcommands::

    pacestat analyze   --input bowlers.csv [--variable av|...|all]
    pacestat replicate [--format json]
    pacestat simulate  --groups 3 --n 20 --reps 10000 --seed 42
    pacestat validate  --input bowlers.csv

Exit status: 0 success, 1 usage error, 2 data error, 3 degenerate data.
The default alpha can be set with the ``PACESTAT_ALPHA`` environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter

from pacestat.cricket_metrics import (
    CATEGORY_ORDER,
    VARIABLES,
    build_groups,
    filter_eligible,
    parse_records,
)
from pacestat.errors import DegenerateError, InsufficientDataError, StatsError
from pacestat.montecarlo import SimulationConfig, simulate_type1_error
from pacestat.pipeline import render_report, render_reports, report_to_dict, run_pipeline
from pacestat.replication import replicate

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_DEGENERATE = 0, 1, 2, 3
ALPHA_ENV = "PACESTAT_ALPHA"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _alpha(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"alpha must be a number, got {text!r}") from None
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"alpha must lie in (0, 1), got {value}")
    return value


def _default_alpha() -> float:
    text = os.environ.get(ALPHA_ENV)
    if text is None:
        return 0.05
    try:
        return _alpha(text)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{ALPHA_ENV}: {exc}") from None


def build_parser(default_alpha: float = 0.05) -> argparse.ArgumentParser:
    parser = _Parser(prog="pacestat", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, formats=True):
        p.add_argument("--alpha", type=_alpha, default=default_alpha)
        if formats:
            p.add_argument("--format", choices=("markdown", "json", "csv"), default="markdown")
        p.add_argument("--output", help="write to this file instead of stdout")

    p = sub.add_parser("analyze", help="run the adaptive analysis on a bowler CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--variable", choices=VARIABLES + ("all",), default="all")
    p.add_argument("--center", choices=("mean", "median"), default="mean")
    p.add_argument("--force-posthoc", action="store_true")
    common(p)

    p = sub.add_parser("replicate", help="recompute the published tables from published summaries")
    common(p)

    p = sub.add_parser("simulate", help="Monte Carlo Type I error rates")
    p.add_argument("--groups", type=int, default=3)
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--reps", type=int, default=10_000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    common(p, formats=False)

    p = sub.add_parser("validate", help="schema and invariant audit of a bowler CSV")
    p.add_argument("--input", required=True)
    common(p, formats=False)
    return parser


def _read(path: str):
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_records(fh)


def _cmd_analyze(args) -> str:
    parsed = _read(args.input)
    for rej in parsed.rejections:
        print(f"warning: row {rej.row} rejected ({rej.column}): {rej.reason}", file=sys.stderr)
    eligible = filter_eligible(parsed.records)
    variables = VARIABLES if args.variable == "all" else (args.variable,)
    reports = []
    for var in variables:
        groups = build_groups(eligible, var)
        reports.append(run_pipeline(groups, args.alpha, args.force_posthoc,
                                    variable=var, center=args.center))
    if len(reports) == 1:
        return render_report(reports[0], args.format)
    return render_reports(reports, args.format)


def _cmd_replicate(args) -> str:
    results = replicate(args.alpha)
    if args.format == "json":
        doc = {
            "alpha": args.alpha,
            "variables": [
                {
                    "variable": r.variable,
                    "note": r.note or None,
                    "report": report_to_dict(r.report) if r.report else None,
                    "deltas": [d.as_dict() for d in r.deltas],
                }
                for r in results
            ],
        }
        return json.dumps(doc, indent=2) + "\n"
    if args.format == "csv":
        lines = ["variable,table,cell,published,computed,delta"]
        for r in results:
            for d in r.deltas:
                lines.append(f"{r.variable},{d.table},{d.cell},{d.published!r},"
                             f"{d.computed:.7f},{d.delta:.7f}")
        return "\n".join(lines) + "\n"
    chunks = []
    for r in results:
        if r.report is None:
            chunks.append(f"## {r.variable}\n\n{r.note}\n")
            continue
        table = ["| Table | Cell | Published | Computed | Delta |", "|---:|---|---:|---:|---:|"]
        table += [f"| {d.table} | {d.cell} | {d.published:g} | {d.computed:.5f} | {d.delta:+.5f} |"
                  for d in r.deltas]
        chunks.append(render_report(r.report, "markdown") + "\n" + "\n".join(table) + "\n")
    return "\n".join(chunks)


def _cmd_simulate(args) -> str:
    if args.groups < 2 or args.n < 2 or args.reps < 1 or args.workers < 1:
        raise UsageError("--groups >= 2, --n >= 2, --reps >= 1 and --workers >= 1 are required")
    config = SimulationConfig.null(args.groups, args.n, args.reps, args.alpha, args.seed)
    outcome = simulate_type1_error(config, workers=args.workers)
    return json.dumps(outcome.as_dict(), indent=2) + "\n"


def _cmd_validate(args) -> tuple[str, int]:
    parsed = _read(args.input)
    eligible = filter_eligible(parsed.records)
    doc = {
        "input": args.input,
        "records": len(parsed.records),
        "rejections": [{"row": r.row, "column": r.column, "reason": r.reason}
                       for r in parsed.rejections],
        "eligible": len(eligible),
        "categories": {c.value: n for c, n in
                       sorted(Counter(r.category for r in eligible).items(),
                              key=lambda kv: CATEGORY_ORDER.index(kv[0]))},
        "undefined_indicators": {},
    }
    for var in VARIABLES:
        try:
            doc["undefined_indicators"][var] = build_groups(eligible, var).excluded
        except StatsError as exc:
            doc["undefined_indicators"][var] = f"error: {exc}"
    status = EXIT_DATA if parsed.rejections else EXIT_OK
    return json.dumps(doc, indent=2) + "\n", status


def run_cli(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser(_default_alpha())
    except UsageError as exc:
        print(f"pacestat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    status = EXIT_OK
    try:
        if args.command == "analyze":
            text = _cmd_analyze(args)
        elif args.command == "replicate":
            text = _cmd_replicate(args)
        elif args.command == "simulate":
            text = _cmd_simulate(args)
        else:
            text, status = _cmd_validate(args)
    except UsageError as exc:
        print(f"pacestat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"pacestat: cannot read input: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (DegenerateError, InsufficientDataError) as exc:
        print(f"pacestat: degenerate data: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except StatsError as exc:
        print(f"pacestat: data error: {exc}", file=sys.stderr)
        return EXIT_DATA

    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run_cli())
