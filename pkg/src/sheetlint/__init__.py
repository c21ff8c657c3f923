"""Spreadsheet quality workbench.

Checks workbooks against configurable scenarios of practice rules,
reports grouped/filtered findings, and scores the rules against expert
good/poor ratings to find the practices worth enforcing.
"""

from .engine import (
    AnalysisRun,
    CheckerConfig,
    Scenario,
    list_checkers,
    run_scenario,
    scenario_from_json,
    scenario_to_json,
    validate_scenario,
)
from .errors import SheetlintError
from .evaluation import (
    ExpertRating,
    Rating,
    aggregate_experts,
    evaluate_rules,
    match_error_cells,
)
from .findings import Finding, Location, Severity
from .ingest import load_workbook
from .model import Cell, CellAddress, Sheet, Workbook
from .report import (
    FilterSpec,
    GroupKey,
    Report,
    build_report,
    deserialize_report,
    serialize_report,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AnalysisRun",
    "Cell",
    "CellAddress",
    "CheckerConfig",
    "ExpertRating",
    "Finding",
    "FilterSpec",
    "GroupKey",
    "Location",
    "Rating",
    "Report",
    "Scenario",
    "Severity",
    "Sheet",
    "SheetlintError",
    "Workbook",
    "aggregate_experts",
    "build_report",
    "deserialize_report",
    "evaluate_rules",
    "list_checkers",
    "load_workbook",
    "match_error_cells",
    "run_scenario",
    "scenario_from_json",
    "scenario_to_json",
    "serialize_report",
    "validate_scenario",
]
