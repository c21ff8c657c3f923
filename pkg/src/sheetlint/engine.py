"""Scenario representation, validation and execution.

A scenario is a named bundle of configured rule checkers. Running one
over a set of workbooks produces an AnalysisRun: the frozen scenario,
deterministically ordered findings, the formulas every checker had to
skip, and any checker crashes (isolated, never fatal).

Run ids are content hashes of the scenario and the workbook contents,
so re-running identical inputs reproduces the identical run id and the
identical findings; only the timestamps differ.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from typing import Any

from .checkers import CheckerRegistry, builtin_registry
from .errors import DuplicateWorkbookId, InvalidScenario
from .findings import Finding, Location, LocationKind, Severity
from .fixture import workbook_digest
from .model import CellAddress, Workbook
from .checkers.common import parse_result

__all__ = [
    "CheckerConfig",
    "Scenario",
    "ValidationIssue",
    "CheckerPanic",
    "SkippedFormula",
    "AnalysisRun",
    "list_checkers",
    "validate_scenario",
    "run_scenario",
    "scenario_to_json",
    "scenario_from_json",
]


@dataclass(frozen=True)
class CheckerConfig:
    checker_id: str
    enabled: bool = True
    severity: Severity = Severity.WARNING
    params: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Scenario:
    name: str
    description: str = ""
    checkers: tuple[CheckerConfig, ...] = ()


@dataclass(frozen=True)
class ValidationIssue:
    """One reason a scenario is not runnable."""

    code: str  # unknown-checker | duplicate-checker | unknown-param | ...
    checker_id: str
    detail: str
    param: str | None = None

    def __str__(self) -> str:
        where = f"{self.checker_id}.{self.param}" if self.param else self.checker_id
        return f"{self.code} at {where}: {self.detail}"


@dataclass(frozen=True)
class SkippedFormula:
    workbook_id: str
    address: CellAddress
    reason: str


@dataclass(frozen=True)
class CheckerPanic:
    """A checker crashed on one workbook; other work was unaffected."""

    checker_id: str
    workbook_id: str
    detail: str


@dataclass(frozen=True)
class AnalysisRun:
    run_id: str
    scenario: Scenario
    workbook_ids: tuple[str, ...]
    # sheet names per workbook, for rendering addresses like "Sheet1!B4"
    workbook_sheets: dict[str, tuple[str, ...]]
    findings: tuple[Finding, ...]
    skipped_formulas: tuple[SkippedFormula, ...]
    panics: tuple[CheckerPanic, ...]
    started_at: str
    finished_at: str


def list_checkers(registry: CheckerRegistry | None = None):
    """Descriptors of all registered checkers, ordered by id."""
    return (registry or builtin_registry()).descriptors()


def validate_scenario(
    scenario: Scenario, registry: CheckerRegistry | None = None
) -> list[ValidationIssue]:
    """All configuration problems; an empty list means runnable."""
    registry = registry or builtin_registry()
    issues: list[ValidationIssue] = []
    if not scenario.name:
        issues.append(
            ValidationIssue("empty-name", "", "scenario name must be non-empty")
        )
    seen: set[str] = set()
    for config in scenario.checkers:
        checker_id = config.checker_id
        if checker_id in seen:
            issues.append(
                ValidationIssue(
                    "duplicate-checker", checker_id, "listed more than once"
                )
            )
            continue
        seen.add(checker_id)
        plugin = registry.get(checker_id)
        if plugin is None:
            issues.append(
                ValidationIssue("unknown-checker", checker_id, "no such checker")
            )
            continue
        for name, value in config.params.items():
            spec = plugin.descriptor.param(name)
            if spec is None:
                issues.append(
                    ValidationIssue(
                        "unknown-param", checker_id, "no such parameter", param=name
                    )
                )
            elif not spec.type.accepts(value):
                issues.append(
                    ValidationIssue(
                        "param-type-mismatch",
                        checker_id,
                        f"expected {spec.type.value}, got {type(value).__name__}",
                        param=name,
                    )
                )
    return issues


def run_scenario(
    scenario: Scenario,
    workbooks: list[Workbook],
    registry: CheckerRegistry | None = None,
) -> AnalysisRun:
    """Execute every enabled checker on every workbook."""
    registry = registry or builtin_registry()
    issues = validate_scenario(scenario, registry)
    if issues:
        raise InvalidScenario(issues)
    ids = [wb.id for wb in workbooks]
    if len(set(ids)) != len(ids):
        raise DuplicateWorkbookId(f"workbook ids not unique: {sorted(ids)}")

    started_at = _utc_now()
    frozen = _freeze_scenario(scenario)
    digests = [workbook_digest(wb) for wb in workbooks]
    run_id = _run_id(frozen, digests)

    skipped: list[SkippedFormula] = []
    for workbook in workbooks:
        for cell in workbook.formula_cells():
            assert cell.formula is not None
            ast, reason = parse_result(cell.formula)
            if ast is None:
                skipped.append(SkippedFormula(workbook.id, cell.address, reason))

    findings: list[Finding] = []
    panics: list[CheckerPanic] = []
    for workbook in workbooks:
        for config in frozen.checkers:
            if not config.enabled:
                continue
            plugin = registry.get(config.checker_id)
            assert plugin is not None  # validated above
            params = {**plugin.descriptor.defaults(), **config.params}
            try:
                raw = plugin.check(workbook, params)
            except Exception as exc:  # noqa: BLE001 - isolation is the contract
                panics.append(
                    CheckerPanic(config.checker_id, workbook.id, repr(exc))
                )
                continue
            for finding in raw:
                findings.append(_stamp(finding, config.severity))

    findings.sort(key=Finding.sort_key)
    return AnalysisRun(
        run_id=run_id,
        scenario=frozen,
        workbook_ids=tuple(ids),
        workbook_sheets={
            wb.id: tuple(s.name for s in wb.sheets) for wb in workbooks
        },
        findings=tuple(findings),
        skipped_formulas=tuple(skipped),
        panics=tuple(panics),
        started_at=started_at,
        finished_at=_utc_now(),
    )


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


def _freeze_scenario(scenario: Scenario) -> Scenario:
    """Deep-copy so later mutation of params dicts cannot reach the run."""
    return Scenario(
        name=scenario.name,
        description=scenario.description,
        checkers=tuple(
            replace(c, params={k: _copy_value(v) for k, v in c.params.items()})
            for c in scenario.checkers
        ),
    )


def _copy_value(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_copy_value(v) for v in value]
    return value


def _stamp(finding: Finding, severity: Severity) -> Finding:
    stamped = replace(finding, severity=severity)
    return replace(stamped, finding_id=_finding_id(stamped))


def _finding_id(finding: Finding) -> str:
    payload = json.dumps(
        [
            finding.checker_id,
            finding.workbook_id,
            _location_key(finding.location),
            finding.message,
        ],
        separators=(",", ":"),
    )
    return hashlib.sha1(payload.encode("utf-8")).hexdigest()[:12]


def _location_key(location: Location) -> list:
    key: list = [location.kind.value]
    if location.kind in (LocationKind.CELL, LocationKind.RANGE):
        assert location.address is not None
        key.extend(
            [location.address.sheet_index, location.address.column, location.address.row]
        )
        if location.kind is LocationKind.RANGE and location.end is not None:
            key.extend([location.end.column, location.end.row])
    elif location.kind is LocationKind.SHEET:
        key.append(location.sheet_index)
    return key


def _run_id(scenario: Scenario, digests: list[str]) -> str:
    payload = json.dumps(
        {"scenario": scenario_to_json(scenario), "workbooks": digests},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha1(payload.encode("utf-8")).hexdigest()[:16]


# --- scenario JSON form ----------------------------------------------------

def scenario_to_json(scenario: Scenario) -> dict[str, Any]:
    """The scenario file shape: {name, description, checkers:[...]}."""
    return {
        "name": scenario.name,
        "description": scenario.description,
        "checkers": [
            {
                "id": c.checker_id,
                "enabled": c.enabled,
                "severity": c.severity.value,
                "params": {k: _copy_value(v) for k, v in sorted(c.params.items())},
            }
            for c in scenario.checkers
        ],
    }


def scenario_from_json(doc: Any) -> Scenario:
    """Parse the scenario file shape, rejecting unknown keys."""
    issues: list[ValidationIssue] = []
    if not isinstance(doc, dict):
        raise InvalidScenario(
            [ValidationIssue("bad-document", "", "scenario must be a JSON object")]
        )
    unknown = set(doc) - {"name", "description", "checkers"}
    if unknown:
        issues.append(
            ValidationIssue(
                "unknown-key", "", f"unknown scenario keys: {sorted(unknown)}"
            )
        )
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        issues.append(
            ValidationIssue("empty-name", "", "scenario name must be a non-empty string")
        )
        name = ""
    description = doc.get("description", "")
    if not isinstance(description, str):
        issues.append(
            ValidationIssue("bad-description", "", "description must be a string")
        )
        description = ""
    raw_checkers = doc.get("checkers", [])
    if not isinstance(raw_checkers, list):
        issues.append(
            ValidationIssue("bad-checkers", "", '"checkers" must be an array')
        )
        raw_checkers = []

    configs: list[CheckerConfig] = []
    for i, entry in enumerate(raw_checkers):
        config, entry_issues = _checker_config_from_json(entry, i)
        issues.extend(entry_issues)
        if config is not None:
            configs.append(config)
    if issues:
        raise InvalidScenario(issues)
    return Scenario(name=name, description=description, checkers=tuple(configs))


def _checker_config_from_json(
    entry: Any, index: int
) -> tuple[CheckerConfig | None, list[ValidationIssue]]:
    where = f"checkers[{index}]"
    if not isinstance(entry, dict):
        return None, [ValidationIssue("bad-checker-entry", where, "must be an object")]
    issues: list[ValidationIssue] = []
    unknown = set(entry) - {"id", "enabled", "severity", "params"}
    if unknown:
        issues.append(
            ValidationIssue(
                "unknown-key", where, f"unknown checker keys: {sorted(unknown)}"
            )
        )
    checker_id = entry.get("id")
    if not isinstance(checker_id, str) or not checker_id:
        issues.append(
            ValidationIssue("bad-checker-entry", where, '"id" must be a non-empty string')
        )
        return None, issues
    enabled = entry.get("enabled", True)
    if not isinstance(enabled, bool):
        issues.append(
            ValidationIssue("bad-checker-entry", checker_id, '"enabled" must be boolean')
        )
        enabled = True
    severity_text = entry.get("severity", Severity.WARNING.value)
    try:
        severity = Severity(severity_text)
    except ValueError:
        issues.append(
            ValidationIssue(
                "bad-severity",
                checker_id,
                f"severity must be one of info/warning/error, got {severity_text!r}",
            )
        )
        severity = Severity.WARNING
    params = entry.get("params", {})
    if not isinstance(params, dict):
        issues.append(
            ValidationIssue("bad-checker-entry", checker_id, '"params" must be an object')
        )
        params = {}
    config = CheckerConfig(
        checker_id=checker_id, enabled=enabled, severity=severity, params=dict(params)
    )
    return config, issues
