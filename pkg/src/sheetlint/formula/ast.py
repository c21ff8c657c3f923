"""Formula AST node types.

Nodes are frozen dataclasses; structural equality is dataclass equality.
``Paren`` is an explicit node so a parsed formula reprints faithfully.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from typing import Union

__all__ = [
    "Binary",
    "BoolLit",
    "CellRef",
    "FormulaAst",
    "FunctionCall",
    "NumberLit",
    "Paren",
    "RangeRef",
    "Ref",
    "RefTarget",
    "TextLit",
    "Unary",
    "normalized_range",
]

BINARY_OPS = ("+", "-", "*", "/", "^", "&", "=", "<>", "<", "<=", ">", ">=")
UNARY_OPS = ("-", "+", "%")  # % is postfix, the rest prefix


@dataclass(frozen=True)
class CellRef:
    """A single-cell reference, optionally sheet-qualified and absolute."""

    column: int
    row: int
    column_absolute: bool = False
    row_absolute: bool = False
    sheet: str | None = None


@dataclass(frozen=True)
class RangeRef:
    """A rectangular range; start is always the top-left corner."""

    start: CellRef
    end: CellRef


RefTarget = Union[CellRef, RangeRef]


def normalized_range(a: CellRef, b: CellRef) -> RangeRef:
    """Order two corners so start.column <= end.column and start.row <= end.row.

    Absoluteness flags travel with their coordinate; both corners keep
    the (shared) sheet qualifier.
    """
    (c1, ca1), (c2, ca2) = sorted(
        [(a.column, a.column_absolute), (b.column, b.column_absolute)]
    )
    (r1, ra1), (r2, ra2) = sorted(
        [(a.row, a.row_absolute), (b.row, b.row_absolute)]
    )
    return RangeRef(
        start=CellRef(c1, r1, ca1, ra1, a.sheet),
        end=CellRef(c2, r2, ca2, ra2, b.sheet),
    )


@dataclass(frozen=True)
class NumberLit:
    value: Decimal


@dataclass(frozen=True)
class TextLit:
    value: str


@dataclass(frozen=True)
class BoolLit:
    value: bool


@dataclass(frozen=True)
class Ref:
    target: RefTarget


@dataclass(frozen=True)
class FunctionCall:
    name: str  # uppercase
    args: tuple["FormulaAst", ...]


@dataclass(frozen=True)
class Binary:
    op: str
    left: "FormulaAst"
    right: "FormulaAst"


@dataclass(frozen=True)
class Unary:
    op: str  # "-" or "+" prefix, "%" postfix
    operand: "FormulaAst"


@dataclass(frozen=True)
class Paren:
    inner: "FormulaAst"


FormulaAst = Union[
    NumberLit, TextLit, BoolLit, Ref, FunctionCall, Binary, Unary, Paren
]
