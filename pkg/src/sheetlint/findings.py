"""Finding and location types shared by checkers, engine and reports."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .model import CellAddress

__all__ = ["Severity", "LocationKind", "Location", "Finding"]


class Severity(Enum):
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"


class LocationKind(Enum):
    CELL = "cell"
    RANGE = "range"
    SHEET = "sheet"
    WORKBOOK = "workbook"


@dataclass(frozen=True)
class Location:
    """Where a finding points: a cell, a range, a sheet or the whole book."""

    kind: LocationKind
    address: CellAddress | None = None
    end: CellAddress | None = None
    sheet_index: int | None = None

    @staticmethod
    def cell(address: CellAddress) -> Location:
        return Location(LocationKind.CELL, address=address)

    @staticmethod
    def cell_range(start: CellAddress, end: CellAddress) -> Location:
        return Location(LocationKind.RANGE, address=start, end=end)

    @staticmethod
    def sheet(sheet_index: int) -> Location:
        return Location(LocationKind.SHEET, sheet_index=sheet_index)

    @staticmethod
    def workbook() -> Location:
        return Location(LocationKind.WORKBOOK)

    def sort_key(self) -> tuple:
        # whole-book first, then sheets, then cells/ranges in document order
        if self.kind is LocationKind.WORKBOOK:
            return (0,)
        if self.kind is LocationKind.SHEET:
            return (1, self.sheet_index)
        assert self.address is not None
        end = self.end if self.end is not None else self.address
        return (2, self.address.sort_key(), end.sort_key())


@dataclass(frozen=True)
class Finding:
    """One rule violation with the texts a report shows for it.

    Checkers leave finding_id empty and severity at the default; the
    engine stamps both after applying the scenario configuration.
    """

    checker_id: str
    workbook_id: str
    location: Location
    message: str
    explanation: str
    suggestion: str
    related_cells: tuple[CellAddress, ...] = ()
    severity: Severity = Severity.WARNING
    finding_id: str = ""

    def __post_init__(self) -> None:
        if not (self.message and self.explanation and self.suggestion):
            raise ValueError("finding texts must all be non-empty")

    def sort_key(self) -> tuple:
        return (self.workbook_id, self.checker_id, self.location.sort_key())
