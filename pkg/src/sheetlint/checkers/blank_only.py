"""Checker: cells whose text content is nothing but blanks.

A cell holding " " looks exactly like an empty cell but behaves
differently in counts, lookups and emptiness tests, so it is a classic
source of silent spreadsheet faults.
"""

from __future__ import annotations

from collections.abc import Mapping

from ..findings import Finding, Location
from ..model import ValueKind, Workbook
from .base import CheckerDescriptor, CheckerPlugin, ParamSpec, ParamType
from .common import merge_params

__all__ = ["DESCRIPTOR", "PLUGIN", "check_blank_only_cells"]

DESCRIPTOR = CheckerDescriptor(
    id="blank-only-cells",
    display_name="Blank-only cells",
    summary="Finds cells whose content consists only of blank characters.",
    param_schema=(
        ParamSpec(
            name="include_all_whitespace",
            type=ParamType.BOOL,
            default=False,
            description=(
                "Also report tabs, non-breaking spaces and other Unicode "
                "whitespace, not just plain spaces."
            ),
        ),
    ),
)


def check_blank_only_cells(
    workbook: Workbook, config: Mapping[str, object] | None = None
) -> list[Finding]:
    params = merge_params(DESCRIPTOR.defaults(), config)
    all_whitespace = bool(params["include_all_whitespace"])

    findings: list[Finding] = []
    for cell in workbook.iter_cells():
        if cell.value.kind is not ValueKind.TEXT:
            continue
        text = cell.value.value
        assert isinstance(text, str)
        if not text:
            continue
        blank = text.isspace() if all_whitespace else set(text) == {" "}
        if not blank:
            continue
        kind = "whitespace" if all_whitespace else "space"
        findings.append(
            Finding(
                checker_id=DESCRIPTOR.id,
                workbook_id=workbook.id,
                location=Location.cell(cell.address),
                message=(
                    f"Cell {workbook.address_text(cell.address)} contains "
                    f"only {kind} characters ({len(text)})"
                ),
                explanation=(
                    "A cell filled with blanks is indistinguishable from an "
                    "empty cell on screen but counts as non-empty in "
                    "formulas, lookups and emptiness checks."
                ),
                suggestion="Clear the cell so it is genuinely empty.",
            )
        )
    return findings


PLUGIN = CheckerPlugin(descriptor=DESCRIPTOR, check=check_blank_only_cells)
