import zipfile
from decimal import Decimal

import pytest

from sheetlint.errors import MalformedWorkbook, UnreadableFile
from sheetlint.model import ValueKind
from sheetlint.xlsx import read_xlsx

from util import XlsxBuilder


def build_basic(path):
    b = XlsxBuilder()
    hello = b.shared("hello")
    rich = b.shared_raw("<r><t>ri</t></r><r><t>ch</t></r>")
    b.styles_locked = [True, False]
    b.add_sheet(
        "Calc",
        {
            "A1": {"v": "1.19"},
            "B1": {"t": "s", "v": str(hello)},
            "C1": {"t": "s", "v": str(rich)},
            "D1": {"t": "b", "v": "1"},
            "E1": {"t": "e", "v": "#DIV/0!"},
            "F1": {"t": "inlineStr", "is": "inline text"},
            "G1": {"t": "str", "f": "A1&B1", "v": "cached"},
            "A2": {"f": "SUM(A1:F1)", "v": "42"},
            "B2": {"v": "7", "s": "1"},
            "C2": {"v": "1E+30"},
        },
    )
    b.add_sheet("Data", {"A1": {"v": "5"}}, protected=True)
    return b.write(path)


def test_reads_values_formulas_and_types(tmp_path):
    workbook = read_xlsx(build_basic(tmp_path / "wb.xlsx"), "wb")
    assert [s.name for s in workbook.sheets] == ["Calc", "Data"]
    calc = workbook.sheets[0]

    assert calc.cells[(0, 0)].value.value == Decimal("1.19")
    assert calc.cells[(1, 0)].value.value == "hello"
    assert calc.cells[(2, 0)].value.value == "rich"
    assert calc.cells[(3, 0)].value.value is True
    assert calc.cells[(4, 0)].value.kind is ValueKind.ERROR
    assert calc.cells[(4, 0)].value.value == "#DIV/0!"
    assert calc.cells[(5, 0)].value.value == "inline text"

    g1 = calc.cells[(6, 0)]
    assert g1.formula == "=A1&B1"  # stored formulas gain the leading "="
    assert g1.value.value == "cached"

    a2 = calc.cells[(0, 1)]
    assert a2.formula == "=SUM(A1:F1)"
    assert a2.value.value == Decimal("42")

    assert calc.cells[(2, 1)].value.value == Decimal("1E+30")


def test_locked_flag_comes_from_cell_style(tmp_path):
    workbook = read_xlsx(build_basic(tmp_path / "wb.xlsx"), "wb")
    calc = workbook.sheets[0]
    assert calc.cells[(0, 0)].locked  # style 0: protection element absent
    assert not calc.cells[(1, 1)].locked  # style 1: locked="0"


def test_sheet_protection_flag(tmp_path):
    workbook = read_xlsx(build_basic(tmp_path / "wb.xlsx"), "wb")
    assert not workbook.sheets[0].protection_enabled
    assert workbook.sheets[1].protection_enabled


def test_shared_formulas_are_translated_per_cell(tmp_path):
    b = XlsxBuilder()
    b.add_sheet(
        "S",
        {
            "B2": {"f": "A2*$C$1", "f_si": "0", "f_ref": "B2:B4", "v": "1"},
            "B3": {"f": "", "f_si": "0", "v": "2"},
            "B4": {"f": "", "f_si": "0", "v": "3"},
            "C2": {"f": "SUM(B2:B4)", "v": "6"},
        },
    )
    workbook = read_xlsx(b.write(tmp_path / "shared.xlsx"), "wb")
    sheet = workbook.sheets[0]
    assert sheet.cells[(1, 1)].formula == "=A2*$C$1"
    assert sheet.cells[(1, 2)].formula == "=A3*$C$1"  # relative row shifted
    assert sheet.cells[(1, 3)].formula == "=A4*$C$1"
    assert sheet.cells[(2, 1)].formula == "=SUM(B2:B4)"


def test_workbook_id_is_supplied_name(tmp_path):
    workbook = read_xlsx(build_basic(tmp_path / "report.xlsx"), "report.xlsx")
    assert workbook.id == "report.xlsx"


def test_not_a_zip_raises_unreadable(tmp_path):
    path = tmp_path / "fake.xlsx"
    path.write_bytes(b"PK\x03\x04 but not really a zip")
    with pytest.raises((UnreadableFile, MalformedWorkbook)):
        read_xlsx(path, "fake")


def test_zip_without_workbook_part_is_malformed(tmp_path):
    path = tmp_path / "empty.xlsx"
    with zipfile.ZipFile(path, "w") as z:
        z.writestr("hello.txt", "nope")
    with pytest.raises(MalformedWorkbook):
        read_xlsx(path, "empty")


def test_sheet_with_unparseable_cell_reference_is_malformed(tmp_path):
    b = XlsxBuilder()
    b.add_sheet("S", {"A1": {"v": "1"}})
    path = b.write(tmp_path / "bad.xlsx")
    # rewrite the sheet with a cell that has no r= attribute
    with zipfile.ZipFile(path) as z:
        names = {n: z.read(n) for n in z.namelist()}
    names["xl/worksheets/sheet1.xml"] = (
        b'<?xml version="1.0"?>'
        b'<worksheet xmlns="http://schemas.openxmlformats.org/spreadsheetml/2006/main">'
        b"<sheetData><row><c><v>1</v></c></row></sheetData></worksheet>"
    )
    with zipfile.ZipFile(path, "w") as z:
        for name, data in names.items():
            z.writestr(name, data)
    with pytest.raises(MalformedWorkbook):
        read_xlsx(path, "bad")


def test_bad_error_code_is_malformed(tmp_path):
    b = XlsxBuilder()
    b.add_sheet("S", {"A1": {"t": "e", "v": "#WAT!"}})
    with pytest.raises(MalformedWorkbook):
        read_xlsx(b.write(tmp_path / "err.xlsx"), "err")


def test_empty_cells_are_pruned(tmp_path):
    b = XlsxBuilder()
    b.add_sheet("S", {"A1": {}, "B1": {"v": "3"}})
    workbook = read_xlsx(b.write(tmp_path / "sparse.xlsx"), "sparse")
    assert set(workbook.sheets[0].cells) == {(1, 0)}
