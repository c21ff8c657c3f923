"""Workbook loading with format auto-detection.

Two formats are supported: OOXML spreadsheets (.xlsx) and the JSON
fixture format (.sheet.json). Detection prefers the caller's hint, then
the file extension, then content sniffing (zip magic vs. JSON).
"""

from __future__ import annotations

from pathlib import Path

from .errors import UnreadableFile, UnsupportedFormat
from .fixture import loads_fixture
from .model import Workbook
from .xlsx import read_xlsx

__all__ = ["load_workbook", "detect_format"]

_ZIP_MAGIC = b"PK\x03\x04"


def load_workbook(path: str | Path, format_hint: str | None = None) -> Workbook:
    """Load a workbook file; the file name becomes the workbook id."""
    file_path = Path(path)
    fmt = format_hint or detect_format(file_path)
    if fmt not in ("ooxml", "fixture"):
        raise UnsupportedFormat(f"unknown format {fmt!r} (use 'ooxml' or 'fixture')")
    workbook_id = file_path.name
    origin = str(file_path)
    if fmt == "ooxml":
        try:
            return read_xlsx(str(file_path), workbook_id, origin)
        except OSError as exc:
            raise UnreadableFile(f"cannot read {file_path}: {exc}") from exc
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UnreadableFile(f"cannot read {file_path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise UnreadableFile(f"{file_path} is not UTF-8: {exc}") from exc
    return loads_fixture(text, workbook_id, origin)


def detect_format(path: Path) -> str:
    """Decide between "ooxml" and "fixture" by extension, then content."""
    name = path.name.lower()
    if name.endswith(".xlsx"):
        return "ooxml"
    if name.endswith(".sheet.json") or name.endswith(".json"):
        return "fixture"
    try:
        with open(path, "rb") as handle:
            head = handle.read(64)
    except OSError as exc:
        raise UnreadableFile(f"cannot read {path}: {exc}") from exc
    if head.startswith(_ZIP_MAGIC):
        return "ooxml"
    if head.lstrip()[:1] == b"{":
        return "fixture"
    raise UnsupportedFormat(
        f"{path.name}: neither an OOXML spreadsheet nor a workbook fixture"
    )
