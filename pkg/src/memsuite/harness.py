"""Evaluation protocol and the built-in reference agents.

``evaluate`` runs a fixed list of episode seeds (1..100 by default), counts
an episode as successful only when it terminates with the success flag set,
and reports mean +/- standard error of that Bernoulli outcome along with
timing.  Agents implement ``act(observation, info) -> action`` and
``reset_memory()``; agents that need privileged access additionally accept
``bind_env(env)``.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ActionRange, ActionShape, AgentProtocol, EpisodeTimeout
from .oracles import oracle_action
from .registry import make
from .spaces import sample
from .types import EnvConfig


@dataclass
class EvalReport:
    task_id: str
    mode: str
    observation_mode: str
    reward_mode: str
    agent: str
    episodes: int
    seeds: list[int]
    success_rate_mean: float
    success_rate_sem: float
    outcomes: list[bool]
    episode_steps: list[int]
    wall_clock_seconds: float
    steps_per_second: float

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(asdict(self), indent=indent, sort_keys=True)


def bernoulli_sem(outcomes) -> float:
    n = len(outcomes)
    p = float(np.mean(outcomes)) if n else 0.0
    return float(np.sqrt(p * (1.0 - p) / n)) if n else 0.0


class RandomAgent:
    """Uniform draws from the action space; seeded and deterministic."""

    name = "random"

    def __init__(self, seed: int = 0):
        self._rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))
        self._space = None

    def bind_env(self, env):
        self._space = env.action_space

    def reset_memory(self):
        pass

    def act(self, observation, info):
        if self._space is None:
            raise AgentProtocol("random agent used before bind_env")
        return sample(self._space, self._rng)


class OracleAgent:
    """Wraps the scripted full-state solver; needs the env instance."""

    name = "oracle"

    def __init__(self):
        self._env = None

    def bind_env(self, env):
        self._env = env

    def reset_memory(self):
        pass

    def act(self, observation, info):
        if self._env is None:
            raise AgentProtocol("oracle agent used before bind_env")
        return oracle_action(self._env)


class ReplayAgent:
    """Plays back a fixed action sequence, episode by episode."""

    name = "replay"

    def __init__(self, episodes_actions):
        self._episodes = [list(a) for a in episodes_actions]
        self._episode = -1
        self._cursor = 0

    def reset_memory(self):
        self._episode += 1
        self._cursor = 0

    def act(self, observation, info):
        actions = self._episodes[min(self._episode, len(self._episodes) - 1)]
        if self._cursor >= len(actions):
            raise AgentProtocol("replay exhausted")
        action = actions[self._cursor]
        self._cursor += 1
        return action


def evaluate(agent, config: EnvConfig, episodes: int = 100, seed_start: int = 1,
             episode_timeout_s: float | None = None) -> EvalReport:
    """Appendix-style protocol: fixed seeds, terminal-success scoring."""
    env = make(config)
    if hasattr(agent, "bind_env"):
        agent.bind_env(env)
    seeds = list(range(seed_start, seed_start + episodes))
    outcomes: list[bool] = []
    episode_steps: list[int] = []
    total_steps = 0
    t0 = time.perf_counter()
    for seed in seeds:
        agent.reset_memory()
        obs, info = env.reset(seed=seed)
        ep_start = time.perf_counter()
        success = False
        while not env.finished:
            try:
                action = agent.act(obs, info)
            except AgentProtocol:
                raise
            except Exception as err:
                raise AgentProtocol(f"agent raised {type(err).__name__}: {err}") from err
            try:
                result = env.step(action)
            except (ActionShape, ActionRange) as err:
                raise AgentProtocol(f"malformed action: {err}") from err
            obs, info = result.observation, result.info
            success = result.terminated and bool(result.info["success"])
            if episode_timeout_s is not None and time.perf_counter() - ep_start > episode_timeout_s:
                raise EpisodeTimeout(f"episode seed={seed} exceeded {episode_timeout_s}s")
        outcomes.append(success)
        episode_steps.append(env.elapsed_steps)
        total_steps += env.elapsed_steps
    wall = time.perf_counter() - t0
    _, _, meta = env.spec()
    return EvalReport(
        task_id=meta.task_id,
        mode=env.mode if hasattr(env, "mode") else (config.mode or "default"),
        observation_mode=config.observation_mode,
        reward_mode=config.reward_mode,
        agent=getattr(agent, "name", type(agent).__name__),
        episodes=episodes,
        seeds=seeds,
        success_rate_mean=float(np.mean(outcomes)) if outcomes else 0.0,
        success_rate_sem=bernoulli_sem(outcomes),
        outcomes=[bool(o) for o in outcomes],
        episode_steps=episode_steps,
        wall_clock_seconds=wall,
        steps_per_second=(total_steps / wall) if wall > 0 else 0.0,
    )
