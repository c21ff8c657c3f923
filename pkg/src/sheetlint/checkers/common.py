"""Helpers shared by the built-in checkers."""

from __future__ import annotations

from collections.abc import Mapping
from functools import lru_cache

from ..errors import FormulaSyntaxError, UnsupportedConstruct
from ..formula import FormulaAst, parse_formula

__all__ = ["parse_result", "merge_params"]


@lru_cache(maxsize=65536)
def parse_result(text: str) -> tuple[FormulaAst | None, str]:
    """Parse formula text, returning (ast, "") or (None, skip reason).

    Cached across checkers and workbooks: identical formula text is
    everywhere, and parsing dominates checker cost.
    """
    try:
        return parse_formula(text), ""
    except FormulaSyntaxError as exc:
        return None, f"syntax error at offset {exc.position}: expected {exc.expected}"
    except UnsupportedConstruct as exc:
        return None, f"unsupported construct: {exc.kind}"


def merge_params(
    defaults: Mapping[str, object], config: Mapping[str, object] | None
) -> dict[str, object]:
    merged = dict(defaults)
    if config:
        merged.update(config)
    return merged
