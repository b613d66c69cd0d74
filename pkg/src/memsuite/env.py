"""Environment base class: the single-instance step contract.

Subclasses implement episode initialisation, an observation function, and
a transition hook; this base owns the bookkeeping every task shares —
seeding, step counting, the timeout/truncation rule, the terminated-wins
tie break, and the info channel layout.
"""

from __future__ import annotations

from typing import Any

import numpy as np

from .errors import SteppedFinished
from .rng import episode_rng
from .spaces import SpaceSpec, validate_action
from .types import EnvConfig, StepResult, TaskMeta


class Env:
    """One task instance.  Not thread-safe; transferable between threads."""

    def __init__(self, config: EnvConfig, meta: TaskMeta):
        self.config = config
        self.meta = meta
        self._t = 0
        self._started = False
        self._finished = False
        self._episode_seed: int | None = None

    # -- subclass surface -------------------------------------------------

    observation_space: SpaceSpec
    action_space: SpaceSpec

    def _init_episode(self, rng: np.random.Generator) -> None:
        """Sample the episode layout.  All randomness is drawn here or from
        tapes prepared here; the step path must be deterministic."""
        raise NotImplementedError

    def _observe(self):
        """Observation for the current state, without oracle augmentation."""
        raise NotImplementedError

    def _apply(self, action) -> tuple[float, bool, bool, bool]:
        """Advance one transition.  Returns (reward, terminated,
        truncated_by_task, success)."""
        raise NotImplementedError

    def _oracle(self) -> np.ndarray:
        """Debug vector matching ``meta.oracle_info_schema``.  May be a
        cached array; callers must treat it as read-only."""
        raise NotImplementedError

    def _prompt(self) -> np.ndarray | None:
        return None

    def _phase_name(self) -> str:
        return "action"

    # -- public API --------------------------------------------------------

    def spec(self) -> tuple[Any, SpaceSpec, TaskMeta]:
        """(observation space, action space, task metadata); stable across
        episodes.  Callable before the first reset."""
        return self.observation_space, self.action_space, self.meta

    @property
    def elapsed_steps(self) -> int:
        return self._t

    @property
    def episode_seed(self) -> int | None:
        return self._episode_seed

    @property
    def finished(self) -> bool:
        return self._finished

    def reset(self, seed: int | None = None):
        """Start an episode.  ``seed=None`` reuses the configured seed, so a
        bare reset() replays the same episode layout."""
        if seed is None:
            seed = self.config.seed
        if seed < 0:
            raise ValueError("seed must be >= 0")
        self._episode_seed = int(seed)
        self._t = 0
        self._started = True
        self._finished = False
        self._init_episode(episode_rng(self._episode_seed))
        return self._compose_obs(), self._build_info(False)

    def step(self, action) -> StepResult:
        if not self._started:
            raise SteppedFinished("step() before reset()")
        if self._finished:
            raise SteppedFinished("episode finished; call reset()")
        action = validate_action(self.action_space, action)
        reward, terminated, truncated, success = self._apply(action)
        self._t += 1
        if not terminated and not truncated and self._t >= self.meta.timeout:
            truncated = True
        if terminated:
            truncated = False
        self._finished = terminated or truncated
        return StepResult(self._compose_obs(), reward, terminated, truncated,
                          self._build_info(success))

    # -- composition helpers -----------------------------------------------

    def _compose_obs(self):
        base = self._observe()
        if self.config.observation_mode == "state":
            return np.concatenate([
                np.asarray(base, dtype=np.float32).ravel(),
                np.asarray(self._oracle(), dtype=np.float32).ravel(),
            ])
        return base

    def _build_info(self, success: bool) -> dict:
        info = {
            "success": success,
            "phase": self._phase_name(),
            "elapsed_steps": self._t,
            "oracle": self._oracle(),
        }
        prompt = self._prompt()
        if prompt is not None:
            info["prompt"] = prompt
        return info
