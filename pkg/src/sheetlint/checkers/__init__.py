"""Built-in rule checkers and the plugin interface."""

from .base import (
    CheckerDescriptor,
    CheckerPlugin,
    CheckerRegistry,
    CheckFunction,
    ParamSpec,
    ParamType,
)
from .blank_only import check_blank_only_cells
from .constants import check_constants_in_formulae
from .consistency import check_formula_consistency
from .direction import check_reference_direction
from .protection import check_unprotected_formula_cells
from . import blank_only, consistency, constants, direction, protection

__all__ = [
    "CheckerDescriptor",
    "CheckerPlugin",
    "CheckerRegistry",
    "CheckFunction",
    "ParamSpec",
    "ParamType",
    "builtin_registry",
    "check_blank_only_cells",
    "check_constants_in_formulae",
    "check_formula_consistency",
    "check_reference_direction",
    "check_unprotected_formula_cells",
]

_BUILTINS = (
    blank_only.PLUGIN,
    constants.PLUGIN,
    consistency.PLUGIN,
    direction.PLUGIN,
    protection.PLUGIN,
)


def builtin_registry() -> CheckerRegistry:
    """A fresh registry holding the five built-in checkers."""
    return CheckerRegistry(list(_BUILTINS))
