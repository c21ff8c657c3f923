"""Checker: formula running off pattern inside a row or column run.

Contiguous formula cells along a row or column usually share one
formula, copied across. A cell whose position-independent form differs
from its neighbors is either a typo or an undocumented exception.
"""

from __future__ import annotations

from collections.abc import Mapping
from collections import Counter

from ..findings import Finding, Location
from ..formula import normalize_r1c1
from ..model import CellAddress, Sheet, Workbook, format_a1
from .base import CheckerDescriptor, CheckerPlugin, ParamSpec, ParamType
from .common import merge_params, parse_result

__all__ = ["DESCRIPTOR", "PLUGIN", "check_formula_consistency"]

DESCRIPTOR = CheckerDescriptor(
    id="formula-consistency",
    display_name="Formula consistency",
    summary=(
        "Finds formulas that break the pattern of their row or column run."
    ),
    param_schema=(
        ParamSpec(
            name="min_run",
            type=ParamType.INT,
            default=3,
            description="Shortest run of adjacent formula cells that is "
            "checked for a common pattern (at least 2).",
        ),
    ),
)


def check_formula_consistency(
    workbook: Workbook, config: Mapping[str, object] | None = None
) -> list[Finding]:
    params = merge_params(DESCRIPTOR.defaults(), config)
    min_run = int(params["min_run"])  # type: ignore[arg-type]
    if min_run < 2:
        raise ValueError("min_run must be at least 2")

    findings: list[Finding] = []
    for sheet_index, sheet in enumerate(workbook.sheets):
        normalized = _normalized_formulas(sheet)
        for run in _runs(normalized, axis="row", min_run=min_run):
            findings.extend(_judge_run(workbook, sheet_index, run, "row"))
        for run in _runs(normalized, axis="column", min_run=min_run):
            findings.extend(_judge_run(workbook, sheet_index, run, "column"))
    return findings


def _normalized_formulas(sheet: Sheet) -> dict[tuple[int, int], str]:
    """(column, row) -> position-independent formula string.

    Cells that are not formulas, or whose formula the parser skips, are
    absent and therefore break runs.
    """
    normalized: dict[tuple[int, int], str] = {}
    for cell in sheet.formula_cells():
        assert cell.formula is not None
        ast, _ = parse_result(cell.formula)
        if ast is None:
            continue
        key = (cell.address.column, cell.address.row)
        normalized[key] = normalize_r1c1(ast, cell.address)
    return normalized


def _runs(
    normalized: dict[tuple[int, int], str], axis: str, min_run: int
) -> list[list[tuple[tuple[int, int], str]]]:
    """Maximal contiguous runs of normalized cells along one axis."""
    lines: dict[int, list[tuple[int, tuple[int, int]]]] = {}
    for key in normalized:
        column, row = key
        if axis == "row":
            lines.setdefault(row, []).append((column, key))
        else:
            lines.setdefault(column, []).append((row, key))

    runs = []
    for _, members in sorted(lines.items()):
        members.sort()
        current: list[tuple[tuple[int, int], str]] = []
        previous = None
        for position, key in members:
            if previous is not None and position != previous + 1:
                if len(current) >= min_run:
                    runs.append(current)
                current = []
            current.append((key, normalized[key]))
            previous = position
        if len(current) >= min_run:
            runs.append(current)
    return runs


def _judge_run(
    workbook: Workbook,
    sheet_index: int,
    run: list[tuple[tuple[int, int], str]],
    axis: str,
) -> list[Finding]:
    strings = [text for _, text in run]
    if len(set(strings)) <= 1:
        return []
    counts = Counter(strings)
    top, top_count = counts.most_common(1)[0]
    baseline = top if top_count * 2 > len(strings) else strings[0]

    extent = tuple(
        CellAddress(sheet_index=sheet_index, column=c, row=r) for (c, r), _ in run
    )
    sheet_name = workbook.sheets[sheet_index].name
    first_a1 = format_a1(*run[0][0])
    last_a1 = format_a1(*run[-1][0])

    findings = []
    for address, text in zip(extent, strings):
        if text == baseline:
            continue
        findings.append(
            Finding(
                checker_id=DESCRIPTOR.id,
                workbook_id=workbook.id,
                location=Location.cell(address),
                message=(
                    f"Formula in {sheet_name}!{address.a1} breaks the pattern "
                    f"of its {axis} run {first_a1}:{last_a1}"
                ),
                explanation=(
                    "Adjacent formulas in the same row or column normally "
                    "follow one copied pattern; a deviation is often a typo "
                    "or a forgotten update rather than an intended exception."
                ),
                suggestion=(
                    "Align the formula with its neighbors, or document why "
                    "this cell must differ."
                ),
                related_cells=extent,
            )
        )
    return findings


PLUGIN = CheckerPlugin(descriptor=DESCRIPTOR, check=check_formula_consistency)
