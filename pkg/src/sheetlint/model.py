"""Abstract spreadsheet model.

A workbook is an ordered list of sheets; a sheet is a sparse grid of
cells. The model is deliberately narrow: values, stored formula text,
and the protection flags the checkers need. It never evaluates formulas.

Workbooks are immutable after loading and safe to share between
concurrent analysis tasks.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum
from typing import Iterable, Iterator

from .errors import MalformedAddress, MalformedWorkbook, SheetOutOfRange

__all__ = [
    "ERROR_CODES",
    "Cell",
    "CellAddress",
    "CellValue",
    "Sheet",
    "ValueKind",
    "Workbook",
    "cell_at",
    "column_index",
    "column_label",
    "format_a1",
    "parse_a1_address",
]

#: The standard spreadsheet error set.
ERROR_CODES = frozenset(
    {"#DIV/0!", "#N/A", "#NAME?", "#NULL!", "#NUM!", "#REF!", "#VALUE!"}
)


@dataclass(frozen=True, order=True)
class CellAddress:
    """Position of a cell: 0-based sheet, column and row indices."""

    sheet_index: int
    column: int
    row: int

    def __post_init__(self) -> None:
        if self.sheet_index < 0 or self.column < 0 or self.row < 0:
            raise MalformedAddress(f"negative address component: {self}")

    @property
    def a1(self) -> str:
        """The address in A1 notation, without the sheet."""
        return format_a1(self.column, self.row)

    def sort_key(self) -> tuple[int, int, int]:
        """Document order: sheet, then row, then column."""
        return (self.sheet_index, self.row, self.column)


class ValueKind(Enum):
    NUMBER = "number"
    TEXT = "text"
    BOOLEAN = "boolean"
    ERROR = "error"
    EMPTY = "empty"


@dataclass(frozen=True)
class CellValue:
    """A cell's stored value: one of number, text, boolean, error, empty."""

    kind: ValueKind
    value: Decimal | str | bool | None = None

    def __post_init__(self) -> None:
        if self.kind is ValueKind.ERROR and self.value not in ERROR_CODES:
            raise ValueError(f"unknown spreadsheet error code: {self.value!r}")

    @staticmethod
    def number(value: Decimal | int | str) -> "CellValue":
        if not isinstance(value, Decimal):
            value = Decimal(str(value))
        return CellValue(ValueKind.NUMBER, value)

    @staticmethod
    def text(value: str) -> "CellValue":
        return CellValue(ValueKind.TEXT, value)

    @staticmethod
    def boolean(value: bool) -> "CellValue":
        return CellValue(ValueKind.BOOLEAN, value)

    @staticmethod
    def error(code: str) -> "CellValue":
        return CellValue(ValueKind.ERROR, code)


EMPTY_VALUE = CellValue(ValueKind.EMPTY)


@dataclass(frozen=True)
class Cell:
    """One cell: its value, optional stored formula text, protection flag.

    For a formula cell, ``value`` holds the cached result read from the
    source file (never recomputed); ``formula`` holds the source text
    verbatim, beginning with "=". ``locked`` defaults to true, matching
    the host-application default.
    """

    address: CellAddress
    value: CellValue = EMPTY_VALUE
    formula: str | None = None
    locked: bool = True

    def __post_init__(self) -> None:
        if self.formula is not None and not self.formula.strip().startswith("="):
            raise ValueError(f"formula text must start with '=': {self.formula!r}")

    @property
    def is_formula(self) -> bool:
        return self.formula is not None

    @property
    def is_prunable(self) -> bool:
        """True when the sparse grid need not store this cell."""
        return (
            self.value.kind is ValueKind.EMPTY
            and self.formula is None
            and self.locked
        )


@dataclass(frozen=True)
class Sheet:
    """A named, sparse grid of cells keyed by (column, row)."""

    name: str
    cells: dict[tuple[int, int], Cell] = field(default_factory=dict)
    protection_enabled: bool = False

    @classmethod
    def from_cells(
        cls,
        name: str,
        cells: Iterable[Cell],
        protection_enabled: bool = False,
    ) -> "Sheet":
        """Build a sheet, dropping prunable cells and rejecting duplicates."""
        grid: dict[tuple[int, int], Cell] = {}
        for cell in cells:
            if cell.is_prunable:
                continue
            key = (cell.address.column, cell.address.row)
            if key in grid:
                raise MalformedWorkbook(
                    f"duplicate cell {cell.address.a1} on sheet {name!r}"
                )
            grid[key] = cell
        return cls(name=name, cells=grid, protection_enabled=protection_enabled)

    def iter_cells(self) -> Iterator[Cell]:
        """Cells in document order (row-major)."""
        for key in sorted(self.cells, key=lambda k: (k[1], k[0])):
            yield self.cells[key]

    def formula_cells(self) -> Iterator[Cell]:
        for cell in self.iter_cells():
            if cell.is_formula:
                yield cell


@dataclass(frozen=True)
class Workbook:
    """An ordered collection of sheets with a stable identifier."""

    id: str
    sheets: tuple[Sheet, ...]
    origin: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise MalformedWorkbook("workbook id must be non-empty")
        if not self.sheets:
            raise MalformedWorkbook(f"workbook {self.id!r} has no sheets")
        names = [s.name for s in self.sheets]
        if len(set(names)) != len(names):
            raise MalformedWorkbook(f"duplicate sheet names in workbook {self.id!r}")

    def sheet(self, index: int) -> Sheet:
        if not 0 <= index < len(self.sheets):
            raise SheetOutOfRange(
                f"sheet index {index} out of range for workbook {self.id!r} "
                f"({len(self.sheets)} sheets)"
            )
        return self.sheets[index]

    def sheet_index(self, name: str) -> int | None:
        """Index of the sheet with the given name, or None."""
        for i, sheet in enumerate(self.sheets):
            if sheet.name == name:
                return i
        return None

    def iter_cells(self) -> Iterator[Cell]:
        for sheet in self.sheets:
            yield from sheet.iter_cells()

    def formula_cells(self) -> Iterator[Cell]:
        for sheet in self.sheets:
            yield from sheet.formula_cells()

    def address_text(self, address: CellAddress) -> str:
        """Human-readable address, e.g. ``Sheet1!B4``."""
        return f"{self.sheet(address.sheet_index).name}!{address.a1}"


def cell_at(workbook: Workbook, address: CellAddress) -> Cell:
    """The cell stored at ``address``, or a synthetic empty, locked cell.

    Never mutates the workbook; repeated calls return equal cells.
    """
    sheet = workbook.sheet(address.sheet_index)
    stored = sheet.cells.get((address.column, address.row))
    if stored is not None:
        return stored
    return Cell(address=address)


_A1_RE = re.compile(r"^(\$?)([A-Za-z]+)(\$?)([0-9]+)$")


def parse_a1_address(text: str) -> tuple[int, int, bool, bool]:
    """Parse A1 notation into (column, row, column_absolute, row_absolute).

    Rows are 1-based in text and 0-based in the result; columns use
    bijective base-26 ("A" -> 0, "Z" -> 25, "AA" -> 26).
    """
    match = _A1_RE.match(text)
    if not match:
        raise MalformedAddress(f"not an A1 cell address: {text!r}")
    col_abs, letters, row_abs, digits = match.groups()
    row = int(digits) - 1
    if row < 0:
        raise MalformedAddress(f"row must be >= 1 in address {text!r}")
    return column_index(letters), row, bool(col_abs), bool(row_abs)


def format_a1(
    column: int, row: int, column_absolute: bool = False, row_absolute: bool = False
) -> str:
    """Inverse of :func:`parse_a1_address`."""
    return (
        f"{'$' if column_absolute else ''}{column_label(column)}"
        f"{'$' if row_absolute else ''}{row + 1}"
    )


def column_index(letters: str) -> int:
    """Column letters to 0-based index (bijective base-26)."""
    index = 0
    for ch in letters.upper():
        if not "A" <= ch <= "Z":
            raise MalformedAddress(f"bad column letters: {letters!r}")
        index = index * 26 + (ord(ch) - ord("A") + 1)
    return index - 1


def column_label(index: int) -> str:
    """0-based column index to letters ("A", "Z", "AA", ...)."""
    if index < 0:
        raise MalformedAddress(f"negative column index: {index}")
    label = ""
    n = index + 1
    while n > 0:
        n, rem = divmod(n - 1, 26)
        label = chr(ord("A") + rem) + label
    return label
