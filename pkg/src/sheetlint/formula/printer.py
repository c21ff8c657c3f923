"""AST printers: canonical A1 text and position-independent R1C1 text.

Both printers share one emitter and differ only in how a cell reference
is rendered. Canonical text has no whitespace and uppercase function
names, so parse -> print -> parse is the identity on ASTs.
"""

from __future__ import annotations

import re
from collections.abc import Callable

from ..decimals import canonical_decimal
from ..model import CellAddress, format_a1
from .ast import (
    Binary,
    BoolLit,
    CellRef,
    FormulaAst,
    FunctionCall,
    NumberLit,
    Paren,
    RangeRef,
    Ref,
    TextLit,
    Unary,
)

__all__ = ["print_formula", "normalize_r1c1"]


def print_formula(ast: FormulaAst) -> str:
    """Render an AST as canonical formula text, leading "=" included."""
    return "=" + _emit(ast, _a1_ref)


def normalize_r1c1(ast: FormulaAst, origin: CellAddress) -> str:
    """Render an AST with each reference as an offset from ``origin``.

    Relative components become R[dr]/C[dc] (bare R/C when the offset is
    zero, as the host application displays them); absolute components
    become R<row+1>/C<col+1>. Formulas that differ only by a translation
    of their relative references produce identical strings, which is the
    equality the consistency check relies on.
    """
    return _emit(ast, lambda ref: _r1c1_ref(ref, origin))


_RefRenderer = Callable[[CellRef], str]

_PLAIN_SHEET_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.]*$")
_CELL_LIKE_RE = re.compile(r"^[A-Za-z]{1,3}[0-9]+$")


def _emit(node: FormulaAst, render_ref: _RefRenderer) -> str:
    if isinstance(node, NumberLit):
        return canonical_decimal(node.value)
    if isinstance(node, TextLit):
        return '"' + node.value.replace('"', '""') + '"'
    if isinstance(node, BoolLit):
        return "TRUE" if node.value else "FALSE"
    if isinstance(node, Ref):
        return _emit_ref(node, render_ref)
    if isinstance(node, FunctionCall):
        args = ",".join(_emit(arg, render_ref) for arg in node.args)
        return f"{node.name}({args})"
    if isinstance(node, Binary):
        left = _emit(node.left, render_ref)
        right = _emit(node.right, render_ref)
        return f"{left}{node.op}{right}"
    if isinstance(node, Unary):
        inner = _emit(node.operand, render_ref)
        return inner + "%" if node.op == "%" else node.op + inner
    if isinstance(node, Paren):
        return "(" + _emit(node.inner, render_ref) + ")"
    raise TypeError(f"not a formula node: {node!r}")


def _emit_ref(node: Ref, render_ref: _RefRenderer) -> str:
    target = node.target
    if isinstance(target, CellRef):
        return _sheet_prefix(target.sheet) + render_ref(target)
    if isinstance(target, RangeRef):
        prefix = _sheet_prefix(target.start.sheet)
        return prefix + render_ref(target.start) + ":" + render_ref(target.end)
    raise TypeError(f"not a reference target: {target!r}")


def _sheet_prefix(sheet: str | None) -> str:
    if sheet is None:
        return ""
    if _needs_quotes(sheet):
        return "'" + sheet.replace("'", "''") + "'!"
    return sheet + "!"


def _needs_quotes(sheet: str) -> bool:
    # quoting is required whenever the bare name would not re-lex as a
    # plain identifier: punctuation/spaces, cell-shaped names, booleans
    if not _PLAIN_SHEET_RE.match(sheet):
        return True
    if _CELL_LIKE_RE.match(sheet):
        return True
    return sheet.upper() in ("TRUE", "FALSE")


def _a1_ref(ref: CellRef) -> str:
    return format_a1(ref.column, ref.row, ref.column_absolute, ref.row_absolute)


def _r1c1_ref(ref: CellRef, origin: CellAddress) -> str:
    return _r1c1_axis("R", ref.row, ref.row_absolute, origin.row) + _r1c1_axis(
        "C", ref.column, ref.column_absolute, origin.column
    )


def _r1c1_axis(letter: str, index: int, absolute: bool, origin_index: int) -> str:
    if absolute:
        return f"{letter}{index + 1}"
    delta = index - origin_index
    return letter if delta == 0 else f"{letter}[{delta}]"
