"""Shared test helpers: quick workbook builders and a raw xlsx writer.

The xlsx writer below builds archives straight from string templates,
independent of the reader under test, so reader tests compare against
files whose bytes the test fully controls.
"""

from __future__ import annotations

import json
import zipfile
from pathlib import Path
from typing import Any
from xml.sax.saxutils import escape, quoteattr

from sheetlint.fixture import loads_fixture
from sheetlint.model import Workbook


def build_workbook(
    cells: dict[str, Any],
    *,
    workbook_id: str = "wb",
    sheet: str = "Calc",
    protection: bool = True,
    extra_sheets: dict[str, dict[str, Any]] | None = None,
) -> Workbook:
    """Workbook from {"A1": spec} where spec is a value, a formula string
    starting with "=", or a full cell dict."""
    sheets = [{"name": sheet, "protection_enabled": protection, "cells": cells}]
    for name, extra in (extra_sheets or {}).items():
        sheets.append({"name": name, "protection_enabled": protection, "cells": extra})
    doc = {"sheets": [_expand_sheet(s) for s in sheets]}
    return loads_fixture(json.dumps(doc), workbook_id)


def _expand_sheet(sheet: dict[str, Any]) -> dict[str, Any]:
    cells = {}
    for a1, spec in sheet["cells"].items():
        if isinstance(spec, dict):
            cells[a1] = spec
        elif isinstance(spec, str) and spec.startswith("="):
            cells[a1] = {"formula": spec}
        else:
            cells[a1] = {"value": spec}
    return {**sheet, "cells": cells}


# --- raw xlsx construction ---------------------------------------------------

_CONTENT_TYPES = """<?xml version="1.0" encoding="UTF-8" standalone="yes"?>
<Types xmlns="http://schemas.openxmlformats.org/package/2006/content-types">
  <Default Extension="rels" ContentType="application/vnd.openxmlformats-package.relationships+xml"/>
  <Default Extension="xml" ContentType="application/xml"/>
  <Override PartName="/xl/workbook.xml" ContentType="application/vnd.openxmlformats-officedocument.spreadsheetml.sheet.main+xml"/>
</Types>
"""

_ROOT_RELS = """<?xml version="1.0" encoding="UTF-8" standalone="yes"?>
<Relationships xmlns="http://schemas.openxmlformats.org/package/2006/relationships">
  <Relationship Id="rId1" Type="http://schemas.openxmlformats.org/officeDocument/2006/relationships/officeDocument" Target="xl/workbook.xml"/>
</Relationships>
"""


class XlsxBuilder:
    """Assembles a minimal spreadsheet archive sheet by sheet."""

    def __init__(self) -> None:
        self.sheets: list[tuple[str, str]] = []  # (name, sheet xml)
        self.shared_strings: list[str] = []  # raw <si> inner xml
        self.styles_locked: list[bool] | None = None

    def shared(self, text: str) -> int:
        self.shared_strings.append(f"<t>{escape(text)}</t>")
        return len(self.shared_strings) - 1

    def shared_raw(self, inner_xml: str) -> int:
        self.shared_strings.append(inner_xml)
        return len(self.shared_strings) - 1

    def add_sheet(
        self,
        name: str,
        cells: dict[str, dict[str, Any]],
        *,
        protected: bool | None = None,
    ) -> None:
        rows: dict[int, list[str]] = {}
        for a1, spec in cells.items():
            row_no = int("".join(ch for ch in a1 if ch.isdigit()))
            rows.setdefault(row_no, []).append(_cell_xml(a1, spec))
        body = "".join(
            f"<row r=\"{r}\">{''.join(cs)}</row>" for r, cs in sorted(rows.items())
        )
        protection = ""
        if protected is not None:
            flag = "1" if protected else "0"
            protection = f'<sheetProtection sheet="{flag}"/>'
        xml = (
            '<?xml version="1.0" encoding="UTF-8" standalone="yes"?>'
            '<worksheet xmlns="http://schemas.openxmlformats.org/spreadsheetml/2006/main">'
            f"{protection}<sheetData>{body}</sheetData></worksheet>"
        )
        self.sheets.append((name, xml))

    def write(self, path: Path) -> Path:
        sheet_entries = []
        rel_entries = []
        for i, (name, _) in enumerate(self.sheets, start=1):
            sheet_entries.append(
                f'<sheet name={quoteattr(name)} sheetId="{i}" r:id="rId{i}"/>'
            )
            rel_entries.append(
                f'<Relationship Id="rId{i}" '
                'Type="http://schemas.openxmlformats.org/officeDocument/2006/relationships/worksheet" '
                f'Target="worksheets/sheet{i}.xml"/>'
            )
        workbook_xml = (
            '<?xml version="1.0" encoding="UTF-8" standalone="yes"?>'
            '<workbook xmlns="http://schemas.openxmlformats.org/spreadsheetml/2006/main" '
            'xmlns:r="http://schemas.openxmlformats.org/officeDocument/2006/relationships">'
            f"<sheets>{''.join(sheet_entries)}</sheets></workbook>"
        )
        rels_xml = (
            '<?xml version="1.0" encoding="UTF-8" standalone="yes"?>'
            '<Relationships xmlns="http://schemas.openxmlformats.org/package/2006/relationships">'
            f"{''.join(rel_entries)}</Relationships>"
        )
        with zipfile.ZipFile(path, "w") as archive:
            archive.writestr("[Content_Types].xml", _CONTENT_TYPES)
            archive.writestr("_rels/.rels", _ROOT_RELS)
            archive.writestr("xl/workbook.xml", workbook_xml)
            archive.writestr("xl/_rels/workbook.xml.rels", rels_xml)
            if self.shared_strings:
                items = "".join(f"<si>{inner}</si>" for inner in self.shared_strings)
                archive.writestr(
                    "xl/sharedStrings.xml",
                    '<?xml version="1.0" encoding="UTF-8" standalone="yes"?>'
                    '<sst xmlns="http://schemas.openxmlformats.org/spreadsheetml/2006/main" '
                    f'count="{len(self.shared_strings)}" uniqueCount="{len(self.shared_strings)}">'
                    f"{items}</sst>",
                )
            if self.styles_locked is not None:
                xfs = []
                for locked in self.styles_locked:
                    if locked:
                        xfs.append('<xf numFmtId="0" fontId="0"/>')
                    else:
                        xfs.append(
                            '<xf numFmtId="0" fontId="0" applyProtection="1">'
                            '<protection locked="0"/></xf>'
                        )
                archive.writestr(
                    "xl/styles.xml",
                    '<?xml version="1.0" encoding="UTF-8" standalone="yes"?>'
                    '<styleSheet xmlns="http://schemas.openxmlformats.org/spreadsheetml/2006/main">'
                    f'<cellXfs count="{len(xfs)}">{"".join(xfs)}</cellXfs></styleSheet>',
                )
            for i, (_, xml) in enumerate(self.sheets, start=1):
                archive.writestr(f"xl/worksheets/sheet{i}.xml", xml)
        return path


def _cell_xml(a1: str, spec: dict[str, Any]) -> str:
    attrs = [f'r="{a1}"']
    if "t" in spec:
        attrs.append(f't="{spec["t"]}"')
    if "s" in spec:
        attrs.append(f's="{spec["s"]}"')
    parts = []
    if "f" in spec:
        f_attrs = ""
        if "f_si" in spec:
            shared_ref = f' ref="{spec["f_ref"]}"' if "f_ref" in spec else ""
            f_attrs = f' t="shared" si="{spec["f_si"]}"{shared_ref}'
        parts.append(f"<f{f_attrs}>{escape(str(spec['f']))}</f>")
    if "is" in spec:
        parts.append(f"<is><t>{escape(str(spec['is']))}</t></is>")
    if "v" in spec:
        parts.append(f"<v>{escape(str(spec['v']))}</v>")
    return f"<c {' '.join(attrs)}>{''.join(parts)}</c>"
