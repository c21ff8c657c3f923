"""Plain-text workbook fixtures (.sheet.json).

A fixture is a JSON document describing a workbook:

.. code-block:: json

    {
      "id": "example",
      "sheets": [
        {
          "name": "Sheet1",
          "protection_enabled": false,
          "cells": {
            "A1": {"value": 5},
            "A2": {"value": "note"},
            "A3": {"value": {"error": "#REF!"}},
            "B1": {"formula": "=A1+1", "cached": 6},
            "C1": {"value": "", "locked": false}
          }
        }
      ]
    }

Key order is irrelevant; "id" is optional (the file name is the default
workbook id). Numbers are IEEE doubles. Serializing and reloading a
workbook yields a structurally equal workbook.
"""

from __future__ import annotations

import hashlib
import json
from decimal import Decimal
from typing import Any

from .decimals import decimal_to_json
from .errors import MalformedAddress, MalformedWorkbook
from .model import (
    ERROR_CODES,
    Cell,
    CellAddress,
    CellValue,
    Sheet,
    ValueKind,
    Workbook,
    format_a1,
    parse_a1_address,
)

__all__ = ["loads_fixture", "dumps_fixture", "workbook_digest"]

_SHEET_KEYS = {"name", "protection_enabled", "cells"}
_CELL_KEYS = {"value", "formula", "cached", "locked"}


def loads_fixture(text: str, workbook_id: str, origin: str = "") -> Workbook:
    """Parse fixture JSON into a Workbook."""
    try:
        doc = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise MalformedWorkbook(f"fixture is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedWorkbook("fixture root must be a JSON object")
    unknown = set(doc) - {"id", "sheets"}
    if unknown:
        raise MalformedWorkbook(f"unknown fixture keys: {sorted(unknown)}")
    sheets_doc = doc.get("sheets")
    if not isinstance(sheets_doc, list):
        raise MalformedWorkbook('fixture requires a "sheets" array')

    sheets = []
    for i, sheet_doc in enumerate(sheets_doc):
        sheets.append(_load_sheet(sheet_doc, sheet_index=i))

    wb_id = doc.get("id", workbook_id)
    if not isinstance(wb_id, str):
        raise MalformedWorkbook('fixture "id" must be a string')
    return Workbook(id=wb_id, sheets=tuple(sheets), origin=origin)


def _load_sheet(doc: Any, sheet_index: int) -> Sheet:
    if not isinstance(doc, dict):
        raise MalformedWorkbook(f"sheet {sheet_index} must be an object")
    unknown = set(doc) - _SHEET_KEYS
    if unknown:
        raise MalformedWorkbook(
            f"unknown keys on sheet {sheet_index}: {sorted(unknown)}"
        )
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        raise MalformedWorkbook(f"sheet {sheet_index} needs a non-empty name")
    protection = doc.get("protection_enabled", False)
    if not isinstance(protection, bool):
        raise MalformedWorkbook(f"sheet {name!r}: protection_enabled must be boolean")
    cells_doc = doc.get("cells", {})
    if not isinstance(cells_doc, dict):
        raise MalformedWorkbook(f'sheet {name!r}: "cells" must be an object')

    cells = []
    for a1, cell_doc in cells_doc.items():
        try:
            column, row, _, _ = parse_a1_address(a1)
        except MalformedAddress as exc:
            raise MalformedWorkbook(f"sheet {name!r}: bad cell key {a1!r}") from exc
        address = CellAddress(sheet_index=sheet_index, column=column, row=row)
        cells.append(_load_cell(cell_doc, address, a1, name))
    return Sheet.from_cells(name, cells, protection_enabled=protection)


def _load_cell(doc: Any, address: CellAddress, a1: str, sheet_name: str) -> Cell:
    where = f"cell {a1} on sheet {sheet_name!r}"
    if not isinstance(doc, dict):
        raise MalformedWorkbook(f"{where} must be an object")
    unknown = set(doc) - _CELL_KEYS
    if unknown:
        raise MalformedWorkbook(f"unknown keys on {where}: {sorted(unknown)}")
    if "value" in doc and "formula" in doc:
        raise MalformedWorkbook(f'{where} has both "value" and "formula"')
    if "cached" in doc and "formula" not in doc:
        raise MalformedWorkbook(f'{where} has "cached" without "formula"')
    locked = doc.get("locked", True)
    if not isinstance(locked, bool):
        raise MalformedWorkbook(f"{where}: locked must be boolean")

    if "formula" in doc:
        formula = doc["formula"]
        if not isinstance(formula, str) or not formula.strip().startswith("="):
            raise MalformedWorkbook(f'{where}: formula must be a string starting "="')
        cached = _load_value(doc.get("cached"), where) if "cached" in doc else None
        return Cell(
            address=address,
            value=cached if cached is not None else CellValue(ValueKind.EMPTY),
            formula=formula,
            locked=locked,
        )
    value = _load_value(doc.get("value"), where) if "value" in doc else None
    return Cell(
        address=address,
        value=value if value is not None else CellValue(ValueKind.EMPTY),
        locked=locked,
    )


def _load_value(raw: Any, where: str) -> CellValue:
    if isinstance(raw, bool):
        return CellValue.boolean(raw)
    if isinstance(raw, int):
        return CellValue.number(Decimal(raw))
    if isinstance(raw, Decimal):
        return CellValue.number(raw)
    if isinstance(raw, str):
        return CellValue.text(raw)
    if isinstance(raw, dict):
        if set(raw) != {"error"} or raw["error"] not in ERROR_CODES:
            raise MalformedWorkbook(f"{where}: bad error value {raw!r}")
        return CellValue.error(raw["error"])
    raise MalformedWorkbook(f"{where}: unsupported value {raw!r}")


def dumps_fixture(workbook: Workbook, include_id: bool = True) -> str:
    """Serialize a workbook to canonical fixture JSON."""
    doc: dict[str, Any] = {}
    if include_id:
        doc["id"] = workbook.id
    doc["sheets"] = [_dump_sheet(sheet) for sheet in workbook.sheets]
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _dump_sheet(sheet: Sheet) -> dict[str, Any]:
    cells: dict[str, Any] = {}
    for cell in sheet.iter_cells():
        cells[format_a1(cell.address.column, cell.address.row)] = _dump_cell(cell)
    return {
        "name": sheet.name,
        "protection_enabled": sheet.protection_enabled,
        "cells": cells,
    }


def _dump_cell(cell: Cell) -> dict[str, Any]:
    doc: dict[str, Any] = {}
    if cell.formula is not None:
        doc["formula"] = cell.formula
        if cell.value.kind is not ValueKind.EMPTY:
            doc["cached"] = _dump_value(cell.value)
    elif cell.value.kind is not ValueKind.EMPTY:
        doc["value"] = _dump_value(cell.value)
    if not cell.locked:
        doc["locked"] = False
    return doc


def _dump_value(value: CellValue) -> Any:
    if value.kind is ValueKind.NUMBER:
        return decimal_to_json(value.value)  # type: ignore[arg-type]
    if value.kind is ValueKind.ERROR:
        return {"error": value.value}
    return value.value


def workbook_digest(workbook: Workbook) -> str:
    """Stable content digest of a workbook (id excluded)."""
    canonical = dumps_fixture(workbook, include_id=False)
    return hashlib.sha1(canonical.encode("utf-8")).hexdigest()
