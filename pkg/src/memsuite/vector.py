"""Data-parallel batch stepping over independent env lanes.

Lanes share no mutable state, so the engine may step them serially or on a
thread pool; results are identical either way.  A lane that finishes an
episode returns its final StepResult and delivers the reset observation of
a fresh episode on the *next* call (the action supplied to a resetting lane
is ignored for that call).  Lane seeds follow ``base + lane + n * episode``,
so any lane can be replayed standalone.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from .errors import ActionRange, ActionShape, LaneActionShape
from .registry import make
from .rng import lane_seed
from .spaces import validate_action
from .types import EnvConfig, StepResult


class VectorEngine:
    def __init__(
        self,
        config: EnvConfig,
        n: int,
        base_seed: int = 0,
        seed_fn: Callable[[int, int], int] | None = None,
        workers: int | None = None,
    ):
        if n < 1:
            raise ValueError("need at least one lane")
        self.n = n
        self.base_seed = base_seed
        self._seed_fn = seed_fn or (lambda lane, episode: lane_seed(base_seed, lane, n, episode))
        self.envs = [make(config) for _ in range(n)]
        self._episode_index = [0] * n
        self._pending_reset = [True] * n
        self._pool = ThreadPoolExecutor(max_workers=workers) if workers and workers > 1 else None

    def spec(self):
        return self.envs[0].spec()

    def seed_for(self, lane: int, episode: int) -> int:
        return self._seed_fn(lane, episode)

    def reset(self) -> list[tuple]:
        """Eagerly reset every lane to its next scheduled episode and return
        the (observation, info) pairs.  Optional: lanes left pending reset
        deliver their reset result on the next step() call instead."""
        out = []
        for lane in range(self.n):
            if not self._pending_reset[lane]:
                self._episode_index[lane] += 1
            obs, info = self.envs[lane].reset(self._seed_fn(lane, self._episode_index[lane]))
            self._pending_reset[lane] = False
            out.append((obs, info))
        return out

    def step(self, actions: Sequence) -> list[StepResult]:
        """Advance every lane by one call.  Raises LaneActionShape (with the
        offending lane index) before any lane moves, so a bad batch never
        leaves the engine partially stepped."""
        if len(actions) != self.n:
            raise LaneActionShape(len(actions) if len(actions) < self.n else self.n,
                                  f"batch carries {len(actions)} actions for {self.n} lanes")
        for lane in range(self.n):
            if self._pending_reset[lane]:
                continue
            try:
                validate_action(self.envs[lane].action_space, actions[lane])
            except (ActionShape, ActionRange) as err:
                raise LaneActionShape(lane, str(err)) from err
        if self._pool is None:
            return [self._advance(lane, actions[lane]) for lane in range(self.n)]
        return list(self._pool.map(self._advance, range(self.n), actions))

    def _advance(self, lane: int, action) -> StepResult:
        env = self.envs[lane]
        if self._pending_reset[lane]:
            obs, info = env.reset(self._seed_fn(lane, self._episode_index[lane]))
            self._pending_reset[lane] = False
            return StepResult(obs, 0.0, False, False, info)
        result = env.step(action)
        if result.terminated or result.truncated:
            self._episode_index[lane] += 1
            self._pending_reset[lane] = True
        return result

    def close(self):
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None


def batch_make(config: EnvConfig, n: int, base_seed: int = 0, **kwargs) -> VectorEngine:
    return VectorEngine(config, n, base_seed, **kwargs)


def batch_step(engine: VectorEngine, actions: Sequence) -> list[StepResult]:
    return engine.step(actions)
