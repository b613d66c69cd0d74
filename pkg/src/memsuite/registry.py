"""Task registry: id resolution, parameter defaults, instance construction.

Tasks register as a family with a set of modes (difficulty/variant strings).
``make`` accepts either a family id plus a mode, or a fused id such as
``RememberColor9`` / ``ShellGameTouch``; a trailing ``-v0`` is tolerated.
Construction consumes no random draws — layouts are sampled at reset.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .env import Env
from .errors import BadParam, InvalidMode, UnknownTask
from .types import EnvConfig, TaskMeta


@dataclass(frozen=True)
class TaskEntry:
    family: str
    modes: tuple[str, ...]
    group: str  # "diagnostic" or "tabletop"
    defaults: dict
    build: Callable[[EnvConfig, str, dict], Env]
    describe: Callable[[str, dict], TaskMeta]


_REGISTRY: dict[str, TaskEntry] = {}


def register(entry: TaskEntry) -> None:
    if entry.family in _REGISTRY:
        raise ValueError(f"duplicate task family {entry.family!r}")
    _REGISTRY[entry.family] = entry


def families() -> list[TaskEntry]:
    return list(_REGISTRY.values())


def resolve(task_id: str, mode: str | None = None) -> tuple[TaskEntry, str]:
    """Map (task_id, mode) to a registry entry and a concrete mode string."""
    name = task_id[:-3] if task_id.endswith("-v0") else task_id
    entry = _REGISTRY.get(name)
    embedded = None
    if entry is None:
        # fused id: longest registered family that prefixes the name and
        # whose remainder is one of its modes
        for family in sorted(_REGISTRY, key=len, reverse=True):
            if name.startswith(family) and name[len(family):] in _REGISTRY[family].modes:
                entry = _REGISTRY[family]
                embedded = name[len(family):]
                break
        if entry is None:
            raise UnknownTask(f"no task matches id {task_id!r}")
    if embedded is not None:
        if mode is not None and mode != embedded:
            raise InvalidMode(f"id {task_id!r} embeds mode {embedded!r} but mode={mode!r} given")
        return entry, embedded
    if mode is None:
        if len(entry.modes) == 1:
            return entry, entry.modes[0]
        raise InvalidMode(f"{entry.family} requires a mode from {entry.modes}")
    if mode not in entry.modes:
        raise InvalidMode(f"{entry.family} has no mode {mode!r} (choose from {entry.modes})")
    return entry, mode


def resolve_params(entry: TaskEntry, overrides: dict) -> dict:
    params = dict(entry.defaults)
    for key, value in overrides.items():
        if key not in params:
            raise BadParam(f"{entry.family}: unknown task_params key {key!r}")
        params[key] = value
    return params


def make(config: EnvConfig) -> Env:
    """Build an un-reset environment instance from a validated config."""
    entry, mode = resolve(config.task_id, config.mode)
    params = resolve_params(entry, config.task_params)
    return entry.build(config, mode, params)


def task_meta(task_id: str, mode: str | None = None, task_params: dict | None = None) -> TaskMeta:
    entry, mode = resolve(task_id, mode)
    params = resolve_params(entry, task_params or {})
    return entry.describe(mode, params)


def all_task_metas() -> list[TaskMeta]:
    """Every registered (family, mode) combination, in registration order."""
    out = []
    for entry in _REGISTRY.values():
        for mode in entry.modes:
            out.append(entry.describe(mode, dict(entry.defaults)))
    return out
