"""AST walks used by the checkers and the workbook readers."""

from __future__ import annotations

from dataclasses import replace
from decimal import Decimal

from .ast import (
    Binary,
    CellRef,
    FormulaAst,
    FunctionCall,
    NumberLit,
    Paren,
    RangeRef,
    Ref,
    RefTarget,
    TextLit,
    Unary,
)

__all__ = [
    "extract_references",
    "extract_constants",
    "extract_text_literals",
    "shift_references",
]


def extract_references(ast: FormulaAst) -> list[RefTarget]:
    """Every cell/range reference in depth-first, left-to-right order.

    Duplicates are preserved: "=A1+A1" yields A1 twice.
    """
    found: list[RefTarget] = []

    def walk(node: FormulaAst) -> None:
        if isinstance(node, Ref):
            found.append(node.target)
        elif isinstance(node, FunctionCall):
            for arg in node.args:
                walk(arg)
        elif isinstance(node, Binary):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, (Unary, Paren)):
            walk(node.operand if isinstance(node, Unary) else node.inner)

    walk(ast)
    return found


def extract_constants(ast: FormulaAst) -> list[Decimal]:
    """Numeric literals in depth-first order.

    A minus sign directly on a literal folds into it, so "=-5" yields
    the single constant -5 rather than a positive 5 under negation.
    Function names and text literals never contribute.
    """
    found: list[Decimal] = []

    def walk(node: FormulaAst) -> None:
        if isinstance(node, NumberLit):
            found.append(node.value)
        elif isinstance(node, Unary):
            if node.op == "-" and isinstance(node.operand, NumberLit):
                found.append(-node.operand.value)
            else:
                walk(node.operand)
        elif isinstance(node, FunctionCall):
            for arg in node.args:
                walk(arg)
        elif isinstance(node, Binary):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Paren):
            walk(node.inner)

    walk(ast)
    return found


def extract_text_literals(ast: FormulaAst) -> list[str]:
    """String literals in depth-first order (duplicates preserved)."""
    found: list[str] = []

    def walk(node: FormulaAst) -> None:
        if isinstance(node, TextLit):
            found.append(node.value)
        elif isinstance(node, FunctionCall):
            for arg in node.args:
                walk(arg)
        elif isinstance(node, Binary):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Unary):
            walk(node.operand)
        elif isinstance(node, Paren):
            walk(node.inner)

    walk(ast)
    return found


def shift_references(ast: FormulaAst, column_delta: int, row_delta: int) -> FormulaAst:
    """Translate every relative reference component by the given deltas.

    Absolute components stay put, matching how a shared formula is
    replicated across its range. Shifts that would move a relative
    component before column/row 0 raise ValueError.
    """

    def shift_cell(ref: CellRef) -> CellRef:
        column = ref.column if ref.column_absolute else ref.column + column_delta
        row = ref.row if ref.row_absolute else ref.row + row_delta
        if column < 0 or row < 0:
            raise ValueError(f"shift moves reference out of the sheet: {ref}")
        return replace(ref, column=column, row=row)

    def walk(node: FormulaAst) -> FormulaAst:
        if isinstance(node, Ref):
            target = node.target
            if isinstance(target, CellRef):
                return Ref(shift_cell(target))
            if isinstance(target, RangeRef):
                return Ref(RangeRef(shift_cell(target.start), shift_cell(target.end)))
            raise TypeError(f"not a reference target: {target!r}")
        if isinstance(node, FunctionCall):
            return FunctionCall(node.name, tuple(walk(arg) for arg in node.args))
        if isinstance(node, Binary):
            return Binary(node.op, walk(node.left), walk(node.right))
        if isinstance(node, Unary):
            return Unary(node.op, walk(node.operand))
        if isinstance(node, Paren):
            return Paren(walk(node.inner))
        return node

    return walk(ast)
