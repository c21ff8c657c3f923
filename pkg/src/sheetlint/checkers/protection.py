"""Checker: formula cells a user can overwrite.

Formulas carry the logic of a spreadsheet. Leaving them editable invites
the classic failure where a computed cell is overwritten with a literal
and the sheet keeps showing stale results.
"""

from __future__ import annotations

from collections.abc import Mapping

from ..findings import Finding, Location
from ..model import Workbook
from .base import CheckerDescriptor, CheckerPlugin, ParamSpec, ParamType
from .common import merge_params

__all__ = ["DESCRIPTOR", "PLUGIN", "check_unprotected_formula_cells"]

DESCRIPTOR = CheckerDescriptor(
    id="unprotected-formula-cells",
    display_name="Unprotected formula cells",
    summary="Finds formula cells that are not protected against edits.",
    param_schema=(
        ParamSpec(
            name="require_sheet_protection",
            type=ParamType.BOOL,
            default=True,
            description=(
                "Count a cell as protected only when its sheet's protection "
                "is switched on; the locked flag alone is inert otherwise."
            ),
        ),
    ),
)


def check_unprotected_formula_cells(
    workbook: Workbook, config: Mapping[str, object] | None = None
) -> list[Finding]:
    params = merge_params(DESCRIPTOR.defaults(), config)
    require_sheet = bool(params["require_sheet_protection"])

    findings: list[Finding] = []
    for sheet in workbook.sheets:
        for cell in sheet.formula_cells():
            protected = cell.locked and (sheet.protection_enabled or not require_sheet)
            if protected:
                continue
            if not cell.locked:
                cause = "its locked flag is off"
            else:
                cause = "sheet protection is not enabled"
            findings.append(
                Finding(
                    checker_id=DESCRIPTOR.id,
                    workbook_id=workbook.id,
                    location=Location.cell(cell.address),
                    message=(
                        f"Formula cell {workbook.address_text(cell.address)} "
                        f"is not protected: {cause}"
                    ),
                    explanation=(
                        "An editable formula cell can be overwritten with a "
                        "plain value by accident, silently freezing the "
                        "result it used to compute."
                    ),
                    suggestion=(
                        "Lock the cell and enable protection on its sheet."
                    ),
                )
            )
    return findings


PLUGIN = CheckerPlugin(descriptor=DESCRIPTOR, check=check_unprotected_formula_cells)
