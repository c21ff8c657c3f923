"""Bounded Office Open XML (.xlsx) reader.

Reads exactly what the checkers need: sheet names and order, cell
values, stored formula text, the per-cell "locked" style flag and the
per-sheet protection element. Everything else in the archive (styling,
charts, pivot caches, print setup) is ignored. Values are taken verbatim
from the file; dates stay the serial numbers the file stores and cached
formula results are never recomputed.

Shared formulas are stored once in the file; follower cells are
reconstructed here by translating the master formula's relative
references, which is how host applications materialize them.
"""

from __future__ import annotations

import posixpath
import zipfile
from dataclasses import dataclass
from xml.etree import ElementTree

from .decimals import decimal_from_token
from .errors import FormulaError, MalformedWorkbook
from .formula import parse_formula, print_formula, shift_references
from .model import (
    ERROR_CODES,
    Cell,
    CellAddress,
    CellValue,
    EMPTY_VALUE,
    Sheet,
    Workbook,
    parse_a1_address,
)

__all__ = ["read_xlsx"]


def read_xlsx(path: str, workbook_id: str, origin: str = "") -> Workbook:
    """Parse an .xlsx archive into a Workbook."""
    try:
        archive = zipfile.ZipFile(path)
    except zipfile.BadZipFile as exc:
        raise MalformedWorkbook(f"not a valid OOXML archive: {exc}") from exc
    with archive:
        reader = _Reader(archive)
        sheets = reader.read_sheets()
    if not sheets:
        raise MalformedWorkbook("workbook declares no sheets")
    return Workbook(id=workbook_id, sheets=tuple(sheets), origin=origin)


@dataclass
class _RawCell:
    a1: str
    cell_type: str
    style_index: int | None
    value_text: str | None
    inline_text: str | None
    formula_text: str | None
    shared_index: str | None


class _Reader:
    def __init__(self, archive: zipfile.ZipFile) -> None:
        self.archive = archive
        self.shared_strings = self._read_shared_strings()
        self.locked_by_style = self._read_locked_styles()

    # --- archive plumbing ---

    def _xml(self, name: str) -> ElementTree.Element:
        try:
            data = self.archive.read(name)
        except KeyError:
            raise MalformedWorkbook(f"archive member missing: {name}") from None
        try:
            return ElementTree.fromstring(data)
        except ElementTree.ParseError as exc:
            raise MalformedWorkbook(f"bad XML in {name}: {exc}") from exc

    def _has(self, name: str) -> bool:
        try:
            self.archive.getinfo(name)
            return True
        except KeyError:
            return False

    # --- workbook-level parts ---

    def read_sheets(self) -> list[Sheet]:
        workbook = self._xml("xl/workbook.xml")
        rels = self._read_rels()
        sheets: list[Sheet] = []
        for index, el in enumerate(workbook.findall(".//{*}sheet")):
            name = el.get("name")
            if not name:
                raise MalformedWorkbook(f"sheet {index} has no name")
            rel_id = _attr(el, "id")
            if rel_id is None or rel_id not in rels:
                raise MalformedWorkbook(f"sheet {name!r} has no worksheet part")
            sheets.append(self._read_worksheet(rels[rel_id], name, index))
        return sheets

    def _read_rels(self) -> dict[str, str]:
        rels = self._xml("xl/_rels/workbook.xml.rels")
        targets: dict[str, str] = {}
        for rel in rels.findall(".//{*}Relationship"):
            rel_id, target = rel.get("Id"), rel.get("Target")
            if not rel_id or not target:
                continue
            if target.startswith("/"):
                resolved = target.lstrip("/")
            else:
                resolved = posixpath.normpath(posixpath.join("xl", target))
            targets[rel_id] = resolved
        return targets

    def _read_shared_strings(self) -> list[str]:
        if not self._has("xl/sharedStrings.xml"):
            return []
        root = self._xml("xl/sharedStrings.xml")
        strings: list[str] = []
        for si in root.findall("{*}si"):
            strings.append(_rich_text(si))
        return strings

    def _read_locked_styles(self) -> list[bool]:
        # cellXfs index -> effective locked flag; absent protection
        # element inherits the host-application default (locked)
        if not self._has("xl/styles.xml"):
            return []
        root = self._xml("xl/styles.xml")
        cell_xfs = root.find("{*}cellXfs")
        if cell_xfs is None:
            return []
        locked: list[bool] = []
        for xf in cell_xfs.findall("{*}xf"):
            protection = xf.find("{*}protection")
            if protection is None:
                locked.append(True)
            else:
                locked.append(_xml_bool(protection.get("locked", "1")))
        return locked

    # --- worksheets ---

    def _read_worksheet(self, member: str, name: str, sheet_index: int) -> Sheet:
        root = self._xml(member)
        protection_el = root.find("{*}sheetProtection")
        protection_enabled = protection_el is not None and _xml_bool(
            protection_el.get("sheet", "0")
        )

        raw_cells: list[_RawCell] = []
        for c in root.findall(".//{*}c"):
            a1 = c.get("r")
            if a1 is None:
                raise MalformedWorkbook(
                    f"sheet {name!r}: cell without an address attribute"
                )
            style = c.get("s")
            f_el = c.find("{*}f")
            v_el = c.find("{*}v")
            is_el = c.find("{*}is")
            raw_cells.append(
                _RawCell(
                    a1=a1,
                    cell_type=c.get("t", "n"),
                    style_index=int(style) if style is not None else None,
                    value_text=v_el.text if v_el is not None else None,
                    inline_text=_rich_text(is_el) if is_el is not None else None,
                    formula_text=f_el.text if f_el is not None else None,
                    shared_index=(
                        f_el.get("si") if f_el is not None and f_el.get("t") == "shared" else None
                    ),
                )
            )

        shared_masters = self._collect_shared_masters(raw_cells, name)
        cells = [
            self._build_cell(raw, sheet_index, name, shared_masters)
            for raw in raw_cells
        ]
        return Sheet.from_cells(name, cells, protection_enabled=protection_enabled)

    def _collect_shared_masters(
        self, raw_cells: list[_RawCell], sheet_name: str
    ) -> dict[str, tuple[str, int, int]]:
        masters: dict[str, tuple[str, int, int]] = {}
        for raw in raw_cells:
            if raw.shared_index is not None and raw.formula_text:
                column, row, _, _ = _parse_address(raw.a1, sheet_name)
                masters.setdefault(raw.shared_index, (raw.formula_text, column, row))
        return masters

    def _build_cell(
        self,
        raw: _RawCell,
        sheet_index: int,
        sheet_name: str,
        shared_masters: dict[str, tuple[str, int, int]],
    ) -> Cell:
        column, row, _, _ = _parse_address(raw.a1, sheet_name)
        address = CellAddress(sheet_index=sheet_index, column=column, row=row)
        locked = True
        if raw.style_index is not None and 0 <= raw.style_index < len(
            self.locked_by_style
        ):
            locked = self.locked_by_style[raw.style_index]

        formula = self._resolve_formula(raw, column, row, shared_masters)
        value = self._resolve_value(raw, sheet_name)
        return Cell(address=address, value=value, formula=formula, locked=locked)

    def _resolve_formula(
        self,
        raw: _RawCell,
        column: int,
        row: int,
        shared_masters: dict[str, tuple[str, int, int]],
    ) -> str | None:
        if raw.formula_text:
            return "=" + raw.formula_text
        if raw.shared_index is not None:
            master = shared_masters.get(raw.shared_index)
            if master is None:
                raise MalformedWorkbook(
                    f"shared formula group {raw.shared_index} has no master"
                )
            text, master_col, master_row = master
            try:
                ast = parse_formula("=" + text)
                shifted = shift_references(ast, column - master_col, row - master_row)
                return print_formula(shifted)
            except (FormulaError, ValueError):
                # untranslatable master: keep its text so the cell still
                # reads as a formula cell
                return "=" + text
        return None

    def _resolve_value(self, raw: _RawCell, sheet_name: str) -> CellValue:
        where = f"cell {raw.a1} on sheet {sheet_name!r}"
        kind = raw.cell_type
        if kind == "inlineStr":
            return CellValue.text(raw.inline_text or "")
        text = raw.value_text
        if text is None:
            return EMPTY_VALUE
        if kind == "s":
            try:
                return CellValue.text(self.shared_strings[int(text)])
            except (ValueError, IndexError):
                raise MalformedWorkbook(f"{where}: bad shared string index {text!r}") from None
        if kind in ("str", "d"):
            return CellValue.text(text)
        if kind == "b":
            return CellValue.boolean(text.strip() not in ("0", "false", ""))
        if kind == "e":
            if text not in ERROR_CODES:
                raise MalformedWorkbook(f"{where}: unknown error code {text!r}")
            return CellValue.error(text)
        if kind == "n":
            try:
                return CellValue.number(decimal_from_token(text))
            except ValueError:
                raise MalformedWorkbook(f"{where}: bad number {text!r}") from None
        raise MalformedWorkbook(f"{where}: unsupported cell type {kind!r}")


def _attr(el: ElementTree.Element, local_name: str) -> str | None:
    """Attribute lookup ignoring namespace (e.g. r:id on a sheet entry)."""
    for key, value in el.attrib.items():
        if key == local_name or key.endswith("}" + local_name):
            return value
    return None


def _parse_address(a1: str, sheet_name: str) -> tuple[int, int, bool, bool]:
    try:
        return parse_a1_address(a1)
    except ValueError:
        raise MalformedWorkbook(
            f"bad cell address {a1!r} on sheet {sheet_name!r}"
        ) from None


def _rich_text(el: ElementTree.Element) -> str:
    # plain <t>, or rich runs <r><t>; phonetic annotations are skipped
    parts: list[str] = []
    for child in el:
        tag = child.tag.rsplit("}", 1)[-1]
        if tag == "t":
            parts.append(child.text or "")
        elif tag == "r":
            t = child.find("{*}t")
            if t is not None:
                parts.append(t.text or "")
    return "".join(parts)


def _xml_bool(text: str) -> bool:
    return text.strip().lower() in ("1", "true", "on")
