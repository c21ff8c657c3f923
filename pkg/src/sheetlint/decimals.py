"""Canonical decimal handling.

Workbook numbers and formula literals are kept as ``decimal.Decimal`` so
that a constant reads back exactly as it was written ("1.19" never turns
into "1.1899999999999999"). The canonical rendering defined here is the
comparison key used by checker parameters such as ignored constants.
"""

from __future__ import annotations

from decimal import Decimal, InvalidOperation, localcontext

__all__ = ["canonical_decimal", "decimal_from_token", "decimal_to_json"]


def canonical_decimal(value: Decimal) -> str:
    """Render a decimal in its canonical form: no exponent, no trailing zeros.

    ``Decimal("1.190")`` -> ``"1.19"``, ``Decimal("1E+2")`` -> ``"100"``,
    ``Decimal("-5")`` -> ``"-5"``. Equal values always yield equal text,
    so negative zero collapses to "0".
    """
    if value == 0:
        return "0"
    with localcontext() as ctx:
        # normalize() rounds to context precision; make it wide enough
        # that it only ever strips trailing zeros
        ctx.prec = max(len(value.as_tuple().digits), 1)
        normalized = value.normalize()
    return format(normalized, "f")


def decimal_from_token(text: str) -> Decimal:
    """Parse a numeric token into a Decimal, rejecting NaN/Infinity."""
    try:
        value = Decimal(text)
    except InvalidOperation as exc:
        raise ValueError(f"not a decimal number: {text!r}") from exc
    if not value.is_finite():
        raise ValueError(f"not a finite number: {text!r}")
    return value


def decimal_to_json(value: Decimal) -> int | float:
    """Convert a Decimal to the JSON number that best preserves it.

    Integral values become ints (exact); everything else becomes a float.
    Fixture precision is therefore IEEE-double, which matches what host
    spreadsheet applications store.
    """
    if value == value.to_integral_value():
        return int(value)
    return float(value)
