"""Exception hierarchy shared across the workbench."""

from __future__ import annotations


class SheetlintError(Exception):
    """Base class for all workbench errors."""


# --- workbook ingestion ---------------------------------------------------

class UnreadableFile(SheetlintError):
    """The source file is missing or cannot be read."""


class UnsupportedFormat(SheetlintError):
    """The source file is not in a supported workbook format."""


class MalformedWorkbook(SheetlintError):
    """The source file is structurally broken (archive, markup or schema)."""


class SheetOutOfRange(SheetlintError, IndexError):
    """A cell address names a sheet index outside the workbook."""


class MalformedAddress(SheetlintError, ValueError):
    """A textual cell address does not parse."""


# --- formula parsing ------------------------------------------------------

class FormulaError(SheetlintError):
    """Base class for formula parse failures."""


class FormulaSyntaxError(FormulaError):
    """The formula text violates the grammar.

    Carries the 0-based offset into the formula text (including the
    leading "=") and a short description of what was expected.
    """

    def __init__(self, position: int, expected: str) -> None:
        super().__init__(f"syntax error at offset {position}: expected {expected}")
        self.position = position
        self.expected = expected


class UnsupportedConstruct(FormulaError):
    """The formula uses a construct outside the supported dialect."""

    def __init__(self, kind: str, position: int = 0) -> None:
        super().__init__(f"unsupported construct: {kind}")
        self.kind = kind
        self.position = position


# --- reporting ------------------------------------------------------------

class IoFailure(SheetlintError):
    """Reading or writing a report/scenario/ratings file failed."""


# --- policy engine --------------------------------------------------------

class InvalidScenario(SheetlintError, ValueError):
    """A scenario failed validation; ``issues`` holds the details."""

    def __init__(self, issues) -> None:
        super().__init__("; ".join(str(i) for i in issues) or "invalid scenario")
        self.issues = list(issues)


class DuplicateWorkbookId(SheetlintError, ValueError):
    """Two workbooks in one analysis run share an id."""


# --- evaluation -----------------------------------------------------------

class EvaluationInputError(SheetlintError, ValueError):
    """Base class for bad evaluate/match inputs."""


class UnratedWorkbook(EvaluationInputError):
    """A workbook in the runs has no expert rating."""


class RatingWithoutRun(EvaluationInputError):
    """A rating references a workbook absent from every run."""


class ScenarioMismatch(EvaluationInputError):
    """The runs under evaluation were produced by different scenarios."""


class MalformedErrorCell(EvaluationInputError):
    """An expert error-cell reference does not resolve in its workbook."""


class MissingErrorCells(EvaluationInputError):
    """No rating carries an error log, so cell matching has no input."""
