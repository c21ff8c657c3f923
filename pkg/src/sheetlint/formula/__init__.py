"""Formula parsing, printing and analysis."""

from .analysis import (
    extract_constants,
    extract_references,
    extract_text_literals,
    shift_references,
)
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
    RefTarget,
    TextLit,
    Unary,
)
from .parser import MAX_NESTING, parse_formula
from .printer import normalize_r1c1, print_formula

__all__ = [
    "MAX_NESTING",
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
    "extract_constants",
    "extract_references",
    "extract_text_literals",
    "normalize_r1c1",
    "parse_formula",
    "print_formula",
    "shift_references",
]
