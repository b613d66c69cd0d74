"""Shared record types: task metadata, env configuration, step results."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, NamedTuple

OBSERVATION_MODES = ("state", "masked", "rgb", "masked+rgb")
REWARD_MODES = ("sparse", "dense")

# Memory-demand categories a task may exercise (a task can carry several).
MEMORY_TYPES = ("Object", "Spatial", "Sequential", "Capacity")


class StepResult(NamedTuple):
    """One environment transition.

    ``terminated`` and ``truncated`` are mutually exclusive: if success
    lands exactly on the last permitted step, terminated wins and the
    truncation flag is cleared.  ``info`` always carries ``success``,
    ``phase``, ``elapsed_steps`` and the debug ``oracle`` vector, plus
    ``prompt`` for tasks that have one.
    """

    observation: Any
    reward: float
    terminated: bool
    truncated: bool
    info: dict


@dataclass(frozen=True)
class TaskMeta:
    """Registry row describing one task/mode combination.

    ``oracle_info_schema`` and ``prompt_schema`` are named vector layouts:
    tuples of (name, width) pairs in concatenation order.  ``discount`` is
    carried as metadata only; the engine never applies it.  ``notes`` flags
    defaults that are project choices rather than sourced values, so
    experiment reports can surface them.
    """

    task_id: str
    memory_types: tuple[str, ...]
    correlation_horizon: int
    timeout: int
    modes: tuple[str, ...]
    oracle_info_schema: tuple[tuple[str, int], ...]
    prompt_schema: tuple[tuple[str, int], ...] = ()
    reward_modes: tuple[str, ...] = ("sparse", "dense")
    discount: float = 0.99
    notes: str = ""

    def __post_init__(self):
        if self.correlation_horizon <= 1:
            raise ValueError(f"{self.task_id}: correlation horizon must exceed 1")
        if self.timeout < 1:
            raise ValueError(f"{self.task_id}: timeout must be positive")
        for m in self.memory_types:
            if m not in MEMORY_TYPES:
                raise ValueError(f"{self.task_id}: unknown memory type {m!r}")

    @property
    def oracle_dim(self) -> int:
        return sum(width for _, width in self.oracle_info_schema)

    @property
    def prompt_dim(self) -> int:
        return sum(width for _, width in self.prompt_schema)


@dataclass(frozen=True)
class EnvConfig:
    """Everything needed to build one env instance.

    ``task_id`` may be a family name (mode passed separately) or a fused
    id like ``RememberColor9``.  ``task_params`` override registered
    defaults; unknown keys are rejected at make() time.
    """

    task_id: str
    mode: str | None = None
    observation_mode: str = "masked"
    reward_mode: str = "sparse"
    seed: int = 0
    task_params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.observation_mode not in OBSERVATION_MODES:
            raise ValueError(f"unknown observation_mode {self.observation_mode!r}")
        if self.reward_mode not in REWARD_MODES:
            raise ValueError(f"unknown reward_mode {self.reward_mode!r}")
        if self.seed < 0:
            raise ValueError("seed must be >= 0")
