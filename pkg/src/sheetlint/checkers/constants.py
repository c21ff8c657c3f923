"""Checker: the same hardcoded constant reused across formulas.

A value like a tax rate typed into many formulas must be edited in all
of them when it changes; one stale copy goes unnoticed. The remedy is a
dedicated input cell that every formula references.
"""

from __future__ import annotations

from collections.abc import Mapping
from decimal import Decimal, InvalidOperation

from ..decimals import canonical_decimal
from ..findings import Finding, Location
from ..formula import extract_constants, extract_text_literals
from ..model import CellAddress, Workbook
from .base import CheckerDescriptor, CheckerPlugin, ParamSpec, ParamType
from .common import merge_params, parse_result

__all__ = ["DESCRIPTOR", "PLUGIN", "check_constants_in_formulae"]

DESCRIPTOR = CheckerDescriptor(
    id="constants-in-formulae",
    display_name="Constants in formulae",
    summary=(
        "Finds constant values hardcoded into several formulas instead of "
        "kept in one input cell."
    ),
    param_schema=(
        ParamSpec(
            name="min_uses",
            type=ParamType.INT,
            default=2,
            description="Report a constant only when it appears in at least "
            "this many distinct formula cells.",
        ),
        ParamSpec(
            name="ignore_values",
            type=ParamType.STRING_LIST,
            default=(),
            description="Constants to skip, e.g. the 1 in percentage "
            "formulas like =A1*(1+B1).",
        ),
        ParamSpec(
            name="include_text_literals",
            type=ParamType.BOOL,
            default=False,
            description="Also track repeated text literals, not only numbers.",
        ),
    ),
)


def check_constants_in_formulae(
    workbook: Workbook, config: Mapping[str, object] | None = None
) -> list[Finding]:
    params = merge_params(DESCRIPTOR.defaults(), config)
    min_uses = int(params["min_uses"])  # type: ignore[arg-type]
    ignore_raw = params["ignore_values"]
    assert isinstance(ignore_raw, (list, tuple))
    include_text = bool(params["include_text_literals"])

    ignored_numbers: set[str] = set()
    ignored_text: set[str] = set(ignore_raw)
    for entry in ignore_raw:
        try:
            ignored_numbers.add(canonical_decimal(Decimal(entry)))
        except InvalidOperation:
            pass

    # (kind, canonical text) -> ordered distinct cells using it
    uses: dict[tuple[str, str], list[CellAddress]] = {}
    for cell in workbook.formula_cells():
        assert cell.formula is not None
        ast, _ = parse_result(cell.formula)
        if ast is None:
            continue
        keys: set[tuple[str, str]] = {
            ("number", canonical_decimal(value)) for value in extract_constants(ast)
        }
        if include_text:
            keys.update(("text", text) for text in extract_text_literals(ast))
        for key in keys:
            uses.setdefault(key, []).append(cell.address)

    findings: list[Finding] = []
    for (kind, canonical), cells in sorted(uses.items()):
        if len(cells) < min_uses:
            continue
        if kind == "number" and canonical in ignored_numbers:
            continue
        if kind == "text" and canonical in ignored_text:
            continue
        display = canonical if kind == "number" else f'"{canonical}"'
        first = cells[0]
        findings.append(
            Finding(
                checker_id=DESCRIPTOR.id,
                workbook_id=workbook.id,
                location=Location.cell(first),
                message=(
                    f"Constant {display} is hardcoded in {len(cells)} formulas"
                ),
                explanation=(
                    "When the same constant is typed into several formulas, "
                    "changing the value means editing every copy; a missed "
                    "copy silently yields inconsistent results."
                ),
                suggestion=(
                    f"Move {display} to a dedicated input cell and reference "
                    "that cell from the formulas."
                ),
                related_cells=tuple(cells),
            )
        )
    return findings


PLUGIN = CheckerPlugin(descriptor=DESCRIPTOR, check=check_constants_in_formulae)
