"""Command-line entry points: analyze, eval, checkers, serve.

Exit codes are contractual for CI use: 0 = ran with no findings,
1 = ran and findings exist, 2 = usage or input error (diagnostic on
standard error). `eval` exits 0 on success regardless of metrics.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal
from pathlib import Path

from .decimals import canonical_decimal
from .engine import list_checkers, run_scenario, scenario_from_json
from .errors import InvalidScenario, SheetlintError
from .evaluation import (
    EvaluationResult,
    evaluate_rules,
    evaluation_to_json,
    parse_ratings,
)
from .ingest import load_workbook
from .report import (
    build_report,
    deserialize_report,
    parse_filter_args,
    parse_group_key,
    serialize_report,
)

__all__ = ["main"]


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except InvalidScenario as exc:
        print("error: invalid scenario", file=sys.stderr)
        for issue in exc.issues:
            print(f"  - {issue}", file=sys.stderr)
        return 2
    except (SheetlintError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sheetlint",
        description="Check spreadsheets against a configured scenario of "
        "practice rules, and score those rules against expert ratings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser(
        "analyze", help="run a scenario over workbooks and print a report"
    )
    analyze.add_argument("scenario", help="path to a .scenario.json file")
    analyze.add_argument(
        "workbooks", nargs="+", help="workbook files (.xlsx or fixture .json)"
    )
    analyze.add_argument(
        "--format", choices=("json", "text"), default="text", dest="format_"
    )
    analyze.add_argument("--out", help="write the report here instead of stdout")
    analyze.add_argument(
        "--group",
        choices=("by_cell", "by_checker", "by_workbook"),
        default="by_checker",
    )
    analyze.add_argument(
        "--filter",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="workbook=, checker=, severity=, sheet=, range= (repeatable)",
    )
    analyze.set_defaults(handler=_cmd_analyze)

    evaluate = sub.add_parser(
        "eval", help="score rules in saved runs against an expert ratings file"
    )
    evaluate.add_argument(
        "paths",
        nargs="+",
        metavar="PATH",
        help="one or more .report.json files followed by a .ratings.json file",
    )
    evaluate.add_argument(
        "--format", choices=("json", "text"), default="text", dest="format_"
    )
    evaluate.set_defaults(handler=_cmd_eval)

    checkers = sub.add_parser("checkers", help="list available rule checkers")
    checkers.set_defaults(handler=_cmd_checkers)

    serve = sub.add_parser("serve", help="start the workbench HTTP service")
    serve.add_argument(
        "--workspace",
        default=None,
        help="workspace directory (default: $WORKBENCH_WORKSPACE or ./workspace)",
    )
    serve.add_argument(
        "--port",
        type=int,
        default=None,
        help="listen port (default: $WORKBENCH_PORT or 8765)",
    )
    serve.add_argument("--host", default="127.0.0.1")
    serve.set_defaults(handler=_cmd_serve)

    return parser


def _cmd_analyze(args: argparse.Namespace) -> int:
    scenario_text = Path(args.scenario).read_text()
    try:
        scenario_doc = json.loads(scenario_text)
    except json.JSONDecodeError as exc:
        raise SheetlintError(f"{args.scenario}: not valid JSON: {exc}") from exc
    scenario = scenario_from_json(scenario_doc)
    workbooks = [load_workbook(path) for path in args.workbooks]
    spec = parse_filter_args(args.filter)
    run = run_scenario(scenario, workbooks)
    report = build_report(run, spec, parse_group_key(args.group))
    payload = serialize_report(report, format=args.format_)
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode())
    return 1 if report.findings else 0


def _cmd_eval(args: argparse.Namespace) -> int:
    if len(args.paths) < 2:
        print(
            "error: eval needs at least one run report and a ratings file",
            file=sys.stderr,
        )
        return 2
    *run_paths, ratings_path = args.paths
    runs = [deserialize_report(Path(path).read_bytes()).run for path in run_paths]
    ratings = parse_ratings(Path(ratings_path).read_text())
    result = evaluate_rules(runs, ratings)
    if args.format_ == "json":
        print(json.dumps(evaluation_to_json(result), indent=2))
    else:
        print(render_evaluation_text(result))
    return 0


def _cmd_checkers(args: argparse.Namespace) -> int:
    for descriptor in list_checkers():
        print(f"{descriptor.id}: {descriptor.summary}")
        for spec in descriptor.param_schema:
            default = spec.default
            if isinstance(default, tuple):
                default = list(default)
            print(f"    {spec.name} ({spec.type.value}, default {default!r})")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    workspace = (
        args.workspace
        or os.environ.get("WORKBENCH_WORKSPACE")
        or "./workspace"
    )
    port = args.port or int(os.environ.get("WORKBENCH_PORT", "8765"))
    app = create_app(workspace)
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return 0


def render_evaluation_text(result: EvaluationResult) -> str:
    """Plain-text table of per-rule metrics in ranking order."""
    decided = sum(1 for c in result.consensus if c.rating is not None)
    undecided = len(result.consensus) - decided
    lines = [
        f"Rule evaluation over {decided} workbooks"
        + (f" ({undecided} undecided, excluded)" if undecided else "")
    ]
    by_id = {m.checker_id: m for m in result.rules}
    header = (
        f"{'rank':>4}  {'checker':<28} {'tp':>3} {'fp':>3} {'fn':>3} {'tn':>3}  "
        f"{'precision':>9} {'recall':>9} {'accuracy':>9} {'mcc':>9}  perfect"
    )
    lines.append(header)
    any_undefined = False
    for rank, checker_id in enumerate(result.ranking, start=1):
        m = by_id[checker_id]
        cells = " ".join(
            _metric_text(getattr(m, name), name in m.undefined)
            for name in ("precision", "recall", "accuracy", "mcc")
        )
        any_undefined = any_undefined or bool(m.undefined)
        lines.append(
            f"{rank:>4}  {m.checker_id:<28} {m.tp:>3} {m.fp:>3} {m.fn:>3} {m.tn:>3}  "
            f"{cells}  {'yes' if m.perfect else 'no'}"
        )
    if any_undefined:
        lines.append("  * undefined (zero denominator), reported as 0")
    if result.cell_matching:
        lines.append("Error-cell matching:")
        for stats in result.cell_matching:
            lines.append(
                f"  {stats.checker_id:<28} hits={stats.hits} "
                f"misses={stats.misses} spurious={stats.spurious}"
            )
    return "\n".join(lines)


def _metric_text(value: Decimal, undefined: bool) -> str:
    text = canonical_decimal(value) + ("*" if undefined else "")
    return f"{text:>9}"
