"""Shared machinery for the diagnostic (vector/grid) task catalog.

Diagnostic tasks are pure state machines: every draw happens at reset
(either directly into the layout or into per-step tapes), so the step path
is deterministic arithmetic.  Observations are built from revealed state
only; the catalog-wide leak test mutates hidden fields and asserts the
current observation does not move.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..env import Env
from ..errors import BadParam
from ..types import EnvConfig, TaskMeta


@dataclass(frozen=True)
class CatalogRow:
    """Normative description of one diagnostic task.

    ``perfect_reward`` is the analytic per-episode total a perfect player
    attains under the default parameters, or None when the maximum depends
    on the sampled layout (e.g. card-counting tasks).
    """

    family: str
    memory_types: tuple[str, ...]
    obs_layout: str
    action_layout: str
    reward_rule: str
    termination_rule: str
    perfect_reward: float | None
    params: dict


class DiagnosticEnv(Env):
    """Base for catalog tasks: masked (canonical) or state observations."""

    group = "diagnostic"

    def __init__(self, config: EnvConfig, meta: TaskMeta):
        if config.observation_mode not in ("masked", "state"):
            raise BadParam(
                f"{meta.task_id}: diagnostic tasks support observation_mode "
                f"'masked' or 'state', not {config.observation_mode!r}")
        super().__init__(config, meta)

    # Most catalog tasks run a single undifferentiated phase; tasks with a
    # display/recall structure override this.
    def _phase_name(self) -> str:
        return "action"


def require(condition: bool, message: str):
    if not condition:
        raise BadParam(message)


def one_hot(index: int, width: int) -> np.ndarray:
    v = np.zeros(width, dtype=np.float32)
    v[index] = 1.0
    return v
