"""Checker plugin interface: descriptors, parameter schemas, registry.

Checkers are compiled-in plugins. Each one exposes a descriptor (id,
texts, parameter schema with defaults) and a pure check function taking
a workbook plus a fully merged parameter mapping.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum

from ..findings import Finding
from ..model import Workbook

__all__ = [
    "ParamType",
    "ParamSpec",
    "CheckerDescriptor",
    "CheckerPlugin",
    "CheckerRegistry",
    "CheckFunction",
]


class ParamType(Enum):
    INT = "int"
    DECIMAL = "decimal"
    BOOL = "bool"
    STRING = "string"
    STRING_LIST = "string-list"

    def accepts(self, value: object) -> bool:
        # bool is an int subclass; keep the two strictly apart
        if self is ParamType.INT:
            return isinstance(value, int) and not isinstance(value, bool)
        if self is ParamType.DECIMAL:
            return isinstance(value, (int, float, Decimal)) and not isinstance(
                value, bool
            )
        if self is ParamType.BOOL:
            return isinstance(value, bool)
        if self is ParamType.STRING:
            return isinstance(value, str)
        if self is ParamType.STRING_LIST:
            return isinstance(value, (list, tuple)) and all(
                isinstance(item, str) for item in value
            )
        raise AssertionError(self)


@dataclass(frozen=True)
class ParamSpec:
    name: str
    type: ParamType
    default: object
    description: str

    def __post_init__(self) -> None:
        if not self.type.accepts(self.default):
            raise ValueError(
                f"default for {self.name!r} does not match type {self.type.value}"
            )


@dataclass(frozen=True)
class CheckerDescriptor:
    id: str
    display_name: str
    summary: str
    param_schema: tuple[ParamSpec, ...]

    def defaults(self) -> dict[str, object]:
        return {spec.name: spec.default for spec in self.param_schema}

    def param(self, name: str) -> ParamSpec | None:
        for spec in self.param_schema:
            if spec.name == name:
                return spec
        return None


CheckFunction = Callable[[Workbook, Mapping[str, object]], list[Finding]]


@dataclass(frozen=True)
class CheckerPlugin:
    descriptor: CheckerDescriptor
    check: CheckFunction


class CheckerRegistry:
    """Id-keyed checker collection; immutable once the engine starts."""

    def __init__(self, plugins: list[CheckerPlugin] | None = None) -> None:
        self._plugins: dict[str, CheckerPlugin] = {}
        for plugin in plugins or []:
            self.register(plugin)

    def register(self, plugin: CheckerPlugin) -> None:
        checker_id = plugin.descriptor.id
        if checker_id in self._plugins:
            raise ValueError(f"checker id already registered: {checker_id}")
        self._plugins[checker_id] = plugin

    def get(self, checker_id: str) -> CheckerPlugin | None:
        return self._plugins.get(checker_id)

    def descriptors(self) -> list[CheckerDescriptor]:
        return [
            self._plugins[checker_id].descriptor
            for checker_id in sorted(self._plugins)
        ]

    def __contains__(self, checker_id: str) -> bool:
        return checker_id in self._plugins

    def __len__(self) -> int:
        return len(self._plugins)
