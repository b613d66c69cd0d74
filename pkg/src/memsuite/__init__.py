"""Deterministic memory-intensive environment suite.

A catalog of partially observable diagnostic tasks plus 2D tabletop
manipulation analogues, with per-episode counter-based seeding, a batch
stepping engine with auto-reset, scripted solvers, an offline trajectory
container, an evaluation harness, and a line-delimited JSON wire server.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .env import Env
from .errors import MemsuiteError
from .registry import all_task_metas, make, task_meta
from .spaces import Box, Discrete, SpaceSpec
from .types import EnvConfig, StepResult, TaskMeta
from .vector import VectorEngine, batch_make, batch_step

# importing the suites registers their tasks
from . import diagnostics  # noqa: E402,F401
from . import tabletop  # noqa: E402,F401
from . import datasets, harness, oracles, server  # noqa: E402,F401

__all__ = [
    "Env",
    "EnvConfig",
    "StepResult",
    "TaskMeta",
    "SpaceSpec",
    "Box",
    "Discrete",
    "MemsuiteError",
    "make",
    "task_meta",
    "all_task_metas",
    "VectorEngine",
    "batch_make",
    "batch_step",
    "diagnostics",
    "tabletop",
    "datasets",
    "harness",
    "oracles",
    "server",
]


def spec(env: Env):
    """(observation space, action space, metadata) of an instance."""
    return env.spec()
