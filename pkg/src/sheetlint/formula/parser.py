"""Recursive-descent formula parser.

Grammar (tightest binding last, matching host-application behavior):

    formula    := "=" compare EOF
    compare    := concat (("=" | "<>" | "<" | "<=" | ">" | ">=") concat)*
    concat     := additive ("&" additive)*
    additive   := multiplic (("+" | "-") multiplic)*
    multiplic  := power (("*" | "/") power)*
    power      := unary ("^" unary)*          # left-associative
    unary      := ("-" | "+") unary | postfix
    postfix    := primary "%"*                # percent binds tighter than unary
    primary    := NUMBER | STRING | BOOL | reference | call | "(" compare ")"
    reference  := [sheet "!"] REF [":" [sheet "!"] REF]

All binary operators associate left. Argument separator is the comma;
locale semicolons are a syntax error. Array literals, error literals,
structured references, external-workbook references, 3-D references and
defined names raise :class:`UnsupportedConstruct`.
"""

from __future__ import annotations

from .ast import (
    Binary,
    BoolLit,
    CellRef,
    FormulaAst,
    FunctionCall,
    NumberLit,
    Paren,
    Ref,
    TextLit,
    Unary,
    normalized_range,
)
from ..errors import FormulaSyntaxError, UnsupportedConstruct
from .lexer import Token, TokenKind, tokenize

__all__ = ["parse_formula", "MAX_NESTING"]

#: Nesting bound for parentheses/calls; deeper input is a syntax error
#: rather than a crash.
MAX_NESTING = 64

_COMPARE_OPS = ("=", "<>", "<", "<=", ">", ">=")


def parse_formula(text: str) -> FormulaAst:
    """Parse formula text (beginning with "=") into an AST."""
    stripped = text.strip()
    if not stripped.startswith("="):
        raise FormulaSyntaxError(0, '"=" at the start of a formula')
    tokens = tokenize(stripped[1:])
    parser = _Parser(tokens)
    ast = parser.parse_compare()
    parser.expect_eof()
    return ast


class _Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.pos = 0
        self.nesting = 0

    # --- token helpers ---

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind is not TokenKind.EOF:
            self.pos += 1
        return token

    def at_op(self, *ops: str) -> bool:
        token = self.peek()
        return token.kind is TokenKind.OP and token.text in ops

    def expect_op(self, op: str, expected: str) -> Token:
        if not self.at_op(op):
            raise FormulaSyntaxError(self.peek().pos + 1, expected)
        return self.advance()

    def expect_eof(self) -> None:
        token = self.peek()
        if token.kind is not TokenKind.EOF:
            raise FormulaSyntaxError(token.pos + 1, "end of formula")

    def fail(self, expected: str) -> FormulaSyntaxError:
        # +1 converts the lexer offset (post-"=") to a text offset
        return FormulaSyntaxError(self.peek().pos + 1, expected)

    # --- grammar ---

    def parse_compare(self) -> FormulaAst:
        node = self.parse_concat()
        while self.at_op(*_COMPARE_OPS):
            op = self.advance().text
            node = Binary(op, node, self.parse_concat())
        return node

    def parse_concat(self) -> FormulaAst:
        node = self.parse_additive()
        while self.at_op("&"):
            self.advance()
            node = Binary("&", node, self.parse_additive())
        return node

    def parse_additive(self) -> FormulaAst:
        node = self.parse_multiplicative()
        while self.at_op("+", "-"):
            op = self.advance().text
            node = Binary(op, node, self.parse_multiplicative())
        return node

    def parse_multiplicative(self) -> FormulaAst:
        node = self.parse_power()
        while self.at_op("*", "/"):
            op = self.advance().text
            node = Binary(op, node, self.parse_power())
        return node

    def parse_power(self) -> FormulaAst:
        node = self.parse_unary()
        while self.at_op("^"):
            self.advance()
            node = Binary("^", node, self.parse_unary())
        return node

    def parse_unary(self) -> FormulaAst:
        if self.at_op("-", "+"):
            op = self.advance().text
            return Unary(op, self.parse_unary())
        return self.parse_postfix()

    def parse_postfix(self) -> FormulaAst:
        node = self.parse_primary()
        while self.at_op("%"):
            self.advance()
            node = Unary("%", node)
        return node

    def parse_primary(self) -> FormulaAst:
        token = self.peek()
        if token.kind is TokenKind.NUMBER:
            self.advance()
            if self.at_op(":"):
                raise UnsupportedConstruct("whole-row-range", token.pos + 1)
            assert token.number is not None
            return NumberLit(token.number)
        if token.kind is TokenKind.STRING:
            self.advance()
            return TextLit(token.text)
        if token.kind is TokenKind.BOOL:
            self.advance()
            return BoolLit(token.text == "TRUE")
        if token.kind is TokenKind.REF:
            return self.parse_reference(sheet=None)
        if token.kind is TokenKind.QUOTED_SHEET:
            self.advance()
            self.expect_op("!", '"!" after a sheet name')
            return self.parse_reference(sheet=token.text)
        if token.kind is TokenKind.IDENT:
            return self.parse_ident(token)
        if token.kind is TokenKind.LBRACKET:
            raise UnsupportedConstruct("external-workbook-reference", token.pos + 1)
        if self.at_op("("):
            self.enter_nesting()
            self.advance()
            inner = self.parse_compare()
            self.expect_op(")", '")"')
            self.nesting -= 1
            return Paren(inner)
        raise self.fail("a value, reference, function call or \"(\"")

    def parse_ident(self, token: Token) -> FormulaAst:
        self.advance()
        nxt = self.peek()
        if nxt.kind is TokenKind.OP and nxt.text == "(":
            return self.parse_call(token.text)
        if nxt.kind is TokenKind.LBRACKET:
            raise UnsupportedConstruct("structured-reference", nxt.pos + 1)
        if nxt.kind is TokenKind.OP and nxt.text == "!":
            self.advance()
            return self.parse_reference(sheet=token.text)
        if nxt.kind is TokenKind.OP and nxt.text == ":":
            if len(token.text) <= 3 and token.text.isalpha():
                raise UnsupportedConstruct("whole-column-range", token.pos + 1)
            raise UnsupportedConstruct("3d-reference", nxt.pos + 1)
        raise UnsupportedConstruct("defined-name", token.pos + 1)

    def parse_call(self, name: str) -> FormulaAst:
        self.enter_nesting()
        self.expect_op("(", '"("')
        args: list[FormulaAst] = []
        if self.at_op(")"):
            self.advance()
        else:
            while True:
                args.append(self.parse_compare())
                if self.at_op(","):
                    self.advance()
                    continue
                self.expect_op(")", '"," or ")"')
                break
        self.nesting -= 1
        return FunctionCall(name.upper(), tuple(args))

    def parse_reference(self, sheet: str | None) -> FormulaAst:
        start = self.expect_ref(sheet)
        if not self.at_op(":"):
            return Ref(start)
        self.advance()
        end_sheet = sheet
        token = self.peek()
        if token.kind is TokenKind.QUOTED_SHEET or (
            token.kind is TokenKind.IDENT
        ):
            self.advance()
            self.expect_op("!", '"!" after a sheet name')
            end_sheet = token.text
        end = self.expect_ref(end_sheet)
        if start.sheet != end.sheet:
            raise UnsupportedConstruct("3d-reference", token.pos + 1)
        if self.at_op(":"):
            raise self.fail("a single-rectangle range")
        return Ref(normalized_range(start, end))

    def expect_ref(self, sheet: str | None) -> CellRef:
        token = self.peek()
        if token.kind is not TokenKind.REF:
            raise self.fail("a cell reference")
        self.advance()
        assert token.ref is not None
        column, row, col_abs, row_abs = token.ref
        return CellRef(column, row, col_abs, row_abs, sheet)

    def enter_nesting(self) -> None:
        self.nesting += 1
        if self.nesting > MAX_NESTING:
            raise FormulaSyntaxError(
                self.peek().pos + 1, f"nesting no deeper than {MAX_NESTING}"
            )
