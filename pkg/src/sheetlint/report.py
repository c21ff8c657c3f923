"""Filterable, groupable report views over an analysis run.

A report is a filtered selection of a run's findings partitioned into
groups (by affected cell, by checker or by workbook) plus totals. The
JSON form is schema-versioned and stable: findings appear once in a
flat list, groups reference them by finding id.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .engine import (
    AnalysisRun,
    CheckerPanic,
    SkippedFormula,
    scenario_from_json,
    scenario_to_json,
)
from .errors import IoFailure, MalformedWorkbook
from .findings import Finding, Location, LocationKind, Severity
from .model import CellAddress, parse_a1_address

__all__ = [
    "SCHEMA_VERSION",
    "FilterSpec",
    "GroupKey",
    "Report",
    "filter_findings",
    "group_findings",
    "build_report",
    "serialize_report",
    "deserialize_report",
    "parse_filter_args",
    "parse_group_key",
]

SCHEMA_VERSION = 1


class GroupKey(Enum):
    BY_CELL = "cell"
    BY_CHECKER = "checker"
    BY_WORKBOOK = "workbook"


@dataclass(frozen=True)
class FilterSpec:
    """Conjunction of optional dimensions; an empty spec selects all."""

    workbook_ids: frozenset[str] | None = None
    checker_ids: frozenset[str] | None = None
    severities: frozenset[Severity] | None = None
    sheet_indices: frozenset[int] | None = None
    cell_range: tuple[CellAddress, CellAddress] | None = None

    def matches(self, finding: Finding) -> bool:
        if self.workbook_ids is not None and finding.workbook_id not in self.workbook_ids:
            return False
        if self.checker_ids is not None and finding.checker_id not in self.checker_ids:
            return False
        if self.severities is not None and finding.severity not in self.severities:
            return False
        if self.sheet_indices is not None:
            sheet = _location_sheet(finding.location)
            if sheet is None or sheet not in self.sheet_indices:
                return False
        if self.cell_range is not None and not _intersects(
            finding.location, self.cell_range
        ):
            return False
        return True


def _location_sheet(location: Location) -> int | None:
    if location.kind is LocationKind.SHEET:
        return location.sheet_index
    if location.address is not None:
        return location.address.sheet_index
    return None


def _intersects(
    location: Location, cell_range: tuple[CellAddress, CellAddress]
) -> bool:
    if location.address is None:
        return False  # sheet- and workbook-level findings have no cells
    start, end = cell_range
    loc_start = location.address
    loc_end = location.end if location.end is not None else location.address
    if loc_start.sheet_index != start.sheet_index:
        return False
    return not (
        loc_end.column < start.column
        or loc_start.column > end.column
        or loc_end.row < start.row
        or loc_start.row > end.row
    )


def parse_group_key(text: str) -> GroupKey:
    """Map the public "by_cell"/"by_checker"/"by_workbook" names."""
    try:
        return GroupKey(text.removeprefix("by_"))
    except ValueError:
        raise ValueError(
            f"unknown group key {text!r}; expected by_cell, by_checker or by_workbook"
        ) from None


def parse_filter_args(pairs: list[str]) -> FilterSpec | None:
    """Build a FilterSpec from "key=value" pairs (CLI flags, query params).

    Keys: workbook, checker, severity, sheet (0-based index) and range
    ("A1:B9", optionally "<sheet index>!A1:B9"; bare "A1" is a one-cell
    range). Repeated keys union; raises ValueError on anything else.
    """
    if not pairs:
        return None
    workbooks: set[str] = set()
    checkers: set[str] = set()
    severities: set[Severity] = set()
    sheets: set[int] = set()
    cell_range: tuple[CellAddress, CellAddress] | None = None
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not value:
            raise ValueError(f"filter {pair!r} is not of the form key=value")
        if key == "workbook":
            workbooks.add(value)
        elif key == "checker":
            checkers.add(value)
        elif key == "severity":
            try:
                severities.add(Severity(value))
            except ValueError:
                raise ValueError(f"unknown severity {value!r}") from None
        elif key == "sheet":
            try:
                sheets.add(int(value))
            except ValueError:
                raise ValueError(f"sheet filter {value!r} is not an integer") from None
        elif key == "range":
            if cell_range is not None:
                raise ValueError("only one range filter is supported")
            cell_range = _parse_range(value)
        else:
            raise ValueError(
                f"unknown filter key {key!r}; expected workbook, checker, "
                "severity, sheet or range"
            )
    return FilterSpec(
        workbook_ids=frozenset(workbooks) or None,
        checker_ids=frozenset(checkers) or None,
        severities=frozenset(severities) or None,
        sheet_indices=frozenset(sheets) or None,
        cell_range=cell_range,
    )


def _parse_range(text: str) -> tuple[CellAddress, CellAddress]:
    sheet_index = 0
    body = text
    if "!" in text:
        prefix, body = text.split("!", 1)
        try:
            sheet_index = int(prefix)
        except ValueError:
            raise ValueError(
                f"range filter sheet prefix {prefix!r} must be a 0-based index"
            ) from None
        if sheet_index < 0:
            raise ValueError("range filter sheet index must be >= 0")
    first, _, second = body.partition(":")
    try:
        start_col, start_row, _, _ = parse_a1_address(first)
        end_col, end_row, _, _ = parse_a1_address(second) if second else (
            start_col,
            start_row,
            False,
            False,
        )
    except ValueError:
        raise ValueError(f"range filter {text!r} is not a cell range") from None
    return (
        CellAddress(sheet_index, min(start_col, end_col), min(start_row, end_row)),
        CellAddress(sheet_index, max(start_col, end_col), max(start_row, end_row)),
    )


@dataclass(frozen=True)
class Report:
    run: AnalysisRun
    group_key: GroupKey
    findings: tuple[Finding, ...]
    groups: tuple[tuple[str, tuple[Finding, ...]], ...]
    totals_by_checker: dict[str, int] = field(default_factory=dict)
    totals_by_workbook: dict[str, int] = field(default_factory=dict)


def filter_findings(run: AnalysisRun, spec: FilterSpec | None = None) -> list[Finding]:
    """The run's findings passing every present filter dimension, in order."""
    if spec is None:
        return list(run.findings)
    return [f for f in run.findings if spec.matches(f)]


def group_findings(
    findings: list[Finding],
    key: GroupKey,
    workbook_sheets: dict[str, tuple[str, ...]] | None = None,
) -> tuple[tuple[str, tuple[Finding, ...]], ...]:
    """Partition findings into label-sorted groups."""
    buckets: dict[str, list[Finding]] = {}
    for finding in findings:
        label = _group_label(finding, key, workbook_sheets or {})
        buckets.setdefault(label, []).append(finding)
    return tuple(
        (label, tuple(buckets[label])) for label in sorted(buckets)
    )


def _group_label(
    finding: Finding, key: GroupKey, workbook_sheets: dict[str, tuple[str, ...]]
) -> str:
    if key is GroupKey.BY_CHECKER:
        return finding.checker_id
    if key is GroupKey.BY_WORKBOOK:
        return finding.workbook_id
    return location_text(
        finding.location, workbook_sheets.get(finding.workbook_id, ())
    )


def location_text(location: Location, sheet_names: tuple[str, ...]) -> str:
    """Human-readable place, e.g. ``Sheet1!B4`` or ``(workbook)``."""
    if location.kind is LocationKind.WORKBOOK:
        return "(workbook)"
    if location.kind is LocationKind.SHEET:
        assert location.sheet_index is not None
        return _sheet_name(location.sheet_index, sheet_names)
    assert location.address is not None
    name = _sheet_name(location.address.sheet_index, sheet_names)
    text = f"{name}!{location.address.a1}"
    if location.kind is LocationKind.RANGE and location.end is not None:
        text += f":{location.end.a1}"
    return text


def _sheet_name(index: int, sheet_names: tuple[str, ...]) -> str:
    if 0 <= index < len(sheet_names):
        return sheet_names[index]
    return f"sheet{index}"


def build_report(
    run: AnalysisRun,
    spec: FilterSpec | None = None,
    group_key: GroupKey = GroupKey.BY_CHECKER,
) -> Report:
    findings = filter_findings(run, spec)
    groups = group_findings(findings, group_key, run.workbook_sheets)
    by_checker: dict[str, int] = {}
    by_workbook: dict[str, int] = {}
    for finding in findings:
        by_checker[finding.checker_id] = by_checker.get(finding.checker_id, 0) + 1
        by_workbook[finding.workbook_id] = by_workbook.get(finding.workbook_id, 0) + 1
    return Report(
        run=run,
        group_key=group_key,
        findings=tuple(findings),
        groups=groups,
        totals_by_checker=dict(sorted(by_checker.items())),
        totals_by_workbook=dict(sorted(by_workbook.items())),
    )


# --- JSON form --------------------------------------------------------------

def serialize_report(report: Report, format: str = "json") -> bytes:
    """Render a report as canonical JSON or as readable text."""
    if format == "json":
        return (
            json.dumps(report_to_json(report), indent=2, sort_keys=False) + "\n"
        ).encode("utf-8")
    if format == "text":
        return render_text(report).encode("utf-8")
    raise ValueError(f"unknown report format {format!r} (use 'json' or 'text')")


def report_to_json(report: Report) -> dict[str, Any]:
    run = report.run
    return {
        "schema_version": SCHEMA_VERSION,
        "run": {
            "run_id": run.run_id,
            "started_at": run.started_at,
            "finished_at": run.finished_at,
            "scenario": scenario_to_json(run.scenario),
            "workbooks": [
                {"id": wb_id, "sheets": list(run.workbook_sheets.get(wb_id, ()))}
                for wb_id in run.workbook_ids
            ],
            "skipped_formulas": [
                {
                    "workbook_id": s.workbook_id,
                    "cell": _address_to_json(s.address),
                    "reason": s.reason,
                }
                for s in run.skipped_formulas
            ],
            "checker_errors": [
                {
                    "checker_id": p.checker_id,
                    "workbook_id": p.workbook_id,
                    "detail": p.detail,
                }
                for p in run.panics
            ],
        },
        "group_by": report.group_key.value,
        "findings": [
            _finding_to_json(f, report.run.workbook_sheets) for f in report.findings
        ],
        "groups": [
            {"label": label, "finding_ids": [f.finding_id for f in members]}
            for label, members in report.groups
        ],
        "totals": {
            "count": len(report.findings),
            "by_checker": report.totals_by_checker,
            "by_workbook": report.totals_by_workbook,
        },
    }


def _address_to_json(address: CellAddress) -> dict[str, int]:
    return {
        "sheet": address.sheet_index,
        "column": address.column,
        "row": address.row,
    }


def _address_from_json(doc: Any, where: str) -> CellAddress:
    if not isinstance(doc, dict):
        raise MalformedWorkbook(f"{where}: address must be an object")
    try:
        return CellAddress(
            sheet_index=int(doc["sheet"]), column=int(doc["column"]), row=int(doc["row"])
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedWorkbook(f"{where}: bad address {doc!r}") from exc


def _finding_to_json(
    finding: Finding, workbook_sheets: dict[str, tuple[str, ...]]
) -> dict[str, Any]:
    sheets = workbook_sheets.get(finding.workbook_id, ())
    return {
        "finding_id": finding.finding_id,
        "checker_id": finding.checker_id,
        "workbook_id": finding.workbook_id,
        "severity": finding.severity.value,
        "location": _location_to_json(finding.location, sheets),
        "message": finding.message,
        "explanation": finding.explanation,
        "suggestion": finding.suggestion,
        "related_cells": [_address_to_json(a) for a in finding.related_cells],
    }


def _location_to_json(location: Location, sheets: tuple[str, ...]) -> dict[str, Any]:
    doc: dict[str, Any] = {"kind": location.kind.value}
    if location.kind in (LocationKind.CELL, LocationKind.RANGE):
        assert location.address is not None
        doc["cell"] = _address_to_json(location.address)
        if location.kind is LocationKind.RANGE:
            assert location.end is not None
            doc["end"] = _address_to_json(location.end)
    elif location.kind is LocationKind.SHEET:
        doc["sheet"] = location.sheet_index
    doc["text"] = location_text(location, sheets)
    return doc


def _location_from_json(doc: Any, where: str) -> Location:
    if not isinstance(doc, dict):
        raise MalformedWorkbook(f"{where}: location must be an object")
    kind_text = doc.get("kind")
    try:
        kind = LocationKind(kind_text)
    except ValueError:
        raise MalformedWorkbook(f"{where}: bad location kind {kind_text!r}") from None
    if kind is LocationKind.CELL:
        return Location.cell(_address_from_json(doc.get("cell"), where))
    if kind is LocationKind.RANGE:
        return Location.cell_range(
            _address_from_json(doc.get("cell"), where),
            _address_from_json(doc.get("end"), where),
        )
    if kind is LocationKind.SHEET:
        sheet = doc.get("sheet")
        if not isinstance(sheet, int):
            raise MalformedWorkbook(f"{where}: bad sheet index {sheet!r}")
        return Location.sheet(sheet)
    return Location.workbook()


def deserialize_report(data: bytes | str) -> Report:
    """Parse the JSON form back into a structurally equal Report."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IoFailure(f"report is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise IoFailure("report must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise IoFailure(f"unsupported report schema_version: {version!r}")

    run_doc = doc.get("run")
    if not isinstance(run_doc, dict):
        raise IoFailure('report requires a "run" object')
    workbooks = run_doc.get("workbooks", [])
    workbook_ids = tuple(entry["id"] for entry in workbooks)
    workbook_sheets = {
        entry["id"]: tuple(entry.get("sheets", ())) for entry in workbooks
    }
    scenario = scenario_from_json(run_doc.get("scenario"))
    skipped = tuple(
        SkippedFormula(
            workbook_id=entry["workbook_id"],
            address=_address_from_json(entry.get("cell"), "skipped_formulas"),
            reason=entry.get("reason", ""),
        )
        for entry in run_doc.get("skipped_formulas", [])
    )
    panics = tuple(
        CheckerPanic(
            checker_id=entry.get("checker_id", ""),
            workbook_id=entry.get("workbook_id", ""),
            detail=entry.get("detail", ""),
        )
        for entry in run_doc.get("checker_errors", [])
    )

    findings = tuple(
        _finding_from_json(entry, i) for i, entry in enumerate(doc.get("findings", []))
    )
    by_id = {f.finding_id: f for f in findings}
    groups = []
    for entry in doc.get("groups", []):
        members = tuple(
            by_id[fid] for fid in entry.get("finding_ids", []) if fid in by_id
        )
        groups.append((entry.get("label", ""), members))

    run = AnalysisRun(
        run_id=run_doc.get("run_id", ""),
        scenario=scenario,
        workbook_ids=workbook_ids,
        workbook_sheets=workbook_sheets,
        findings=findings,
        skipped_formulas=skipped,
        panics=panics,
        started_at=run_doc.get("started_at", ""),
        finished_at=run_doc.get("finished_at", ""),
    )
    totals = doc.get("totals", {})
    try:
        group_key = GroupKey(doc.get("group_by"))
    except ValueError:
        raise IoFailure(f"bad group_by value: {doc.get('group_by')!r}") from None
    return Report(
        run=run,
        group_key=group_key,
        findings=findings,
        groups=tuple(groups),
        totals_by_checker=dict(totals.get("by_checker", {})),
        totals_by_workbook=dict(totals.get("by_workbook", {})),
    )


def _finding_from_json(doc: Any, index: int) -> Finding:
    where = f"findings[{index}]"
    if not isinstance(doc, dict):
        raise IoFailure(f"{where} must be an object")
    try:
        severity = Severity(doc.get("severity"))
    except ValueError:
        raise IoFailure(f"{where}: bad severity {doc.get('severity')!r}") from None
    return Finding(
        checker_id=doc.get("checker_id", ""),
        workbook_id=doc.get("workbook_id", ""),
        location=_location_from_json(doc.get("location"), where),
        message=doc.get("message", ""),
        explanation=doc.get("explanation", ""),
        suggestion=doc.get("suggestion", ""),
        related_cells=tuple(
            _address_from_json(entry, where) for entry in doc.get("related_cells", [])
        ),
        severity=severity,
        finding_id=doc.get("finding_id", ""),
    )


# --- text form ---------------------------------------------------------------

def render_text(report: Report) -> str:
    run = report.run
    lines: list[str] = []
    lines.append(f"Run {run.run_id}  scenario: {run.scenario.name}")
    lines.append(f"Workbooks: {', '.join(run.workbook_ids) or '(none)'}")
    lines.append(
        f"Findings: {len(report.findings)}  grouped by {report.group_key.value}"
    )
    for label, members in report.groups:
        lines.append("")
        lines.append(f"== {label} ({len(members)}) ==")
        for finding in members:
            sheets = run.workbook_sheets.get(finding.workbook_id, ())
            place = location_text(finding.location, sheets)
            lines.append(
                f"[{finding.severity.value}] {finding.workbook_id} {place}: "
                f"{finding.message}"
            )
            lines.append(f"    why: {finding.explanation}")
            lines.append(f"    fix: {finding.suggestion}")
    if report.totals_by_checker:
        lines.append("")
        lines.append("Totals by checker:")
        for checker_id, count in report.totals_by_checker.items():
            lines.append(f"    {checker_id}: {count}")
    if report.totals_by_workbook:
        lines.append("Totals by workbook:")
        for workbook_id, count in report.totals_by_workbook.items():
            lines.append(f"    {workbook_id}: {count}")
    if run.skipped_formulas:
        lines.append("")
        lines.append(f"Skipped formulas: {len(run.skipped_formulas)}")
        for skip in run.skipped_formulas:
            sheets = run.workbook_sheets.get(skip.workbook_id, ())
            place = location_text(Location.cell(skip.address), sheets)
            lines.append(f"    {skip.workbook_id} {place}: {skip.reason}")
    if run.panics:
        lines.append("")
        lines.append(f"Checker errors: {len(run.panics)}")
        for panic in run.panics:
            lines.append(
                f"    {panic.checker_id} on {panic.workbook_id}: {panic.detail}"
            )
    return "\n".join(lines) + "\n"
