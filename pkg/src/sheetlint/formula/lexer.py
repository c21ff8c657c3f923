"""Formula tokenizer.

Produces a flat token stream for the parser. The lexer already decides
whether a letters+digits chunk is a cell reference, a boolean literal or
an identifier (function or defined name), using one character of
lookahead: anything directly followed by "(" is an identifier.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from typing import Optional

from ..decimals import decimal_from_token
from ..errors import FormulaSyntaxError, UnsupportedConstruct
from ..model import column_index

__all__ = ["Token", "TokenKind", "tokenize"]


class TokenKind(Enum):
    NUMBER = "number"
    STRING = "string"
    BOOL = "bool"
    IDENT = "ident"
    REF = "ref"
    QUOTED_SHEET = "quoted_sheet"
    OP = "op"  # ( ) , : ! % and binary operators
    LBRACKET = "lbracket"
    RBRACKET = "rbracket"
    EOF = "eof"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    pos: int
    # REF payload: (column, row, column_absolute, row_absolute)
    ref: Optional[tuple[int, int, bool, bool]] = None
    number: Optional[Decimal] = None


_NUMBER_RE = re.compile(r"(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?")
_WORD_RE = re.compile(r"\$?[A-Za-z_][A-Za-z0-9_.$]*")
_CELL_RE = re.compile(r"^(\$?)([A-Za-z]{1,3})(\$?)([0-9]+)$")
_MULTI_OPS = ("<>", "<=", ">=")
_SINGLE_OPS = "+-*/^&=<>(),:%!"


def tokenize(text: str) -> list[Token]:
    """Tokenize formula text (with its leading "=" already stripped)."""
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == '"':
            token, i = _lex_string(text, i)
            tokens.append(token)
            continue
        if ch == "'":
            token, i = _lex_quoted_sheet(text, i)
            tokens.append(token)
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            match = _NUMBER_RE.match(text, i)
            assert match is not None
            try:
                value = decimal_from_token(match.group())
            except ValueError:
                raise FormulaSyntaxError(i, "a number") from None
            tokens.append(Token(TokenKind.NUMBER, match.group(), i, number=value))
            i = match.end()
            continue
        if ch.isalpha() or ch in "_$":
            match = _WORD_RE.match(text, i)
            if match is None:  # a lone "$"
                raise FormulaSyntaxError(i, "a cell reference")
            tokens.append(_classify_word(match.group(), i, text, match.end()))
            i = match.end()
            continue
        if ch == "{":
            raise UnsupportedConstruct("array-literal", i)
        if ch == "[":
            tokens.append(Token(TokenKind.LBRACKET, "[", i))
            i += 1
            continue
        if ch == "]":
            # only valid inside bracketed constructs, none of which are
            # supported; kept as a token so the parser names the construct
            tokens.append(Token(TokenKind.RBRACKET, "]", i))
            i += 1
            continue
        if ch == "#":
            raise UnsupportedConstruct("error-literal", i)
        two = text[i : i + 2]
        if two in _MULTI_OPS:
            tokens.append(Token(TokenKind.OP, two, i))
            i += 2
            continue
        if ch in _SINGLE_OPS:
            tokens.append(Token(TokenKind.OP, ch, i))
            i += 1
            continue
        raise FormulaSyntaxError(i, f"a token (found {ch!r})")
    tokens.append(Token(TokenKind.EOF, "", n))
    return tokens


def _lex_string(text: str, start: int) -> tuple[Token, int]:
    # "" inside a string is an escaped quote
    i = start + 1
    parts: list[str] = []
    while i < len(text):
        ch = text[i]
        if ch == '"':
            if text[i + 1 : i + 2] == '"':
                parts.append('"')
                i += 2
                continue
            return (
                Token(TokenKind.STRING, "".join(parts), start),
                i + 1,
            )
        parts.append(ch)
        i += 1
    raise FormulaSyntaxError(len(text), 'closing "')


def _lex_quoted_sheet(text: str, start: int) -> tuple[Token, int]:
    # '' inside a quoted sheet name is an escaped apostrophe
    i = start + 1
    parts: list[str] = []
    while i < len(text):
        ch = text[i]
        if ch == "'":
            if text[i + 1 : i + 2] == "'":
                parts.append("'")
                i += 2
                continue
            if not parts:
                raise FormulaSyntaxError(start, "a non-empty sheet name")
            return Token(TokenKind.QUOTED_SHEET, "".join(parts), start), i + 1
        parts.append(ch)
        i += 1
    raise FormulaSyntaxError(len(text), "closing '")


def _classify_word(word: str, pos: int, text: str, end: int) -> Token:
    next_ch = text[end : end + 1]
    if next_ch == "(" and "$" not in word:
        return Token(TokenKind.IDENT, word, pos)
    cell = _CELL_RE.match(word)
    if cell is not None:
        col_abs, letters, row_abs, digits = cell.groups()
        row = int(digits) - 1
        if row >= 0:
            ref = (column_index(letters), row, bool(col_abs), bool(row_abs))
            return Token(TokenKind.REF, word, pos, ref=ref)
    if "$" in word:
        raise FormulaSyntaxError(pos, f"a cell reference (found {word!r})")
    upper = word.upper()
    if upper in ("TRUE", "FALSE"):
        return Token(TokenKind.BOOL, upper, pos)
    return Token(TokenKind.IDENT, word, pos)
