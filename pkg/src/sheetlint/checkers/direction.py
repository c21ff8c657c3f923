"""Checker: formulas referring to cells right of or below themselves.

Reading order for audited spreadsheets is left-to-right, top-to-bottom;
data flows the same way. A formula that pulls from the right or from
below inverts that flow and makes the sheet hard to follow.
"""

from __future__ import annotations

from collections.abc import Mapping

from ..findings import Finding, Location
from ..formula import CellRef, RangeRef, extract_references
from ..model import Cell, CellAddress, Workbook
from .base import CheckerDescriptor, CheckerPlugin, ParamSpec, ParamType
from .common import merge_params, parse_result

__all__ = ["DESCRIPTOR", "PLUGIN", "check_reference_direction"]

DESCRIPTOR = CheckerDescriptor(
    id="reference-direction",
    display_name="Reference direction",
    summary="Finds formulas that reference cells to the right or below.",
    param_schema=(
        ParamSpec(
            name="check_cross_sheet",
            type=ParamType.BOOL,
            default=False,
            description="Judge references into other sheets by their "
            "coordinates too (default: same-sheet references only).",
        ),
    ),
)


def check_reference_direction(
    workbook: Workbook, config: Mapping[str, object] | None = None
) -> list[Finding]:
    params = merge_params(DESCRIPTOR.defaults(), config)
    cross_sheet = bool(params["check_cross_sheet"])

    findings: list[Finding] = []
    for cell in workbook.formula_cells():
        assert cell.formula is not None
        ast, _ = parse_result(cell.formula)
        if ast is None:
            continue
        offenders = _offending_targets(workbook, cell, ast, cross_sheet)
        if not offenders:
            continue
        names = ", ".join(workbook.address_text(a) for a in offenders)
        findings.append(
            Finding(
                checker_id=DESCRIPTOR.id,
                workbook_id=workbook.id,
                location=Location.cell(cell.address),
                message=(
                    f"Formula in {workbook.address_text(cell.address)} "
                    f"references cells right of or below it: {names}"
                ),
                explanation=(
                    "Spreadsheets are read left-to-right and top-to-bottom; "
                    "a formula that depends on cells to the right or below "
                    "reverses the visible data flow and invites circular or "
                    "overlooked dependencies."
                ),
                suggestion=(
                    "Rearrange the sheet so inputs sit left of or above the "
                    "formulas that use them."
                ),
                related_cells=offenders,
            )
        )
    return findings


def _offending_targets(
    workbook: Workbook, cell: Cell, ast, cross_sheet: bool
) -> tuple[CellAddress, ...]:
    host = cell.address
    offenders: list[CellAddress] = []
    seen: set[CellAddress] = set()
    for target in extract_references(ast):
        ref = target.end if isinstance(target, RangeRef) else target
        assert isinstance(ref, CellRef)
        if ref.sheet is None:
            sheet_index = host.sheet_index
        else:
            if not cross_sheet:
                continue
            resolved = workbook.sheet_index(ref.sheet)
            if resolved is None:
                # reference into a sheet this workbook does not contain
                continue
            sheet_index = resolved
        if ref.column > host.column or ref.row > host.row:
            address = CellAddress(
                sheet_index=sheet_index, column=ref.column, row=ref.row
            )
            if address not in seen:
                seen.add(address)
                offenders.append(address)
    return tuple(offenders)


PLUGIN = CheckerPlugin(descriptor=DESCRIPTOR, check=check_reference_direction)
