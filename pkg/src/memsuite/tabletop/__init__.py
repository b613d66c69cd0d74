"""Tabletop suite: registration and functional entry points.

Besides the registry wiring, this module exposes the suite's operations as
plain functions over a scene, which tests and external tooling use without
running a full environment loop: ``phase_of``, ``observe``, ``dynamics``,
``success``, ``dense_reward``, ``oracle_info``, ``tabletop_init``, and
``render``.
"""

from __future__ import annotations

import copy

import numpy as np

from ..registry import TaskEntry, register
from ..types import EnvConfig
from . import tasks
from .base import TabletopEnv
from .render import render, render_pair
from .scene import TabletopScene, ball_position_closed_form, scene_step

__all__ = [
    "TabletopEnv", "TabletopScene", "render", "render_pair",
    "phase_of", "observe", "dynamics", "success", "dense_reward",
    "oracle_info", "tabletop_init", "scene_step", "ball_position_closed_form",
    "TABLETOP_FAMILIES",
]

_GROUPS = [
    ("ShellGame", ("Touch", "Push", "Pick"), tasks.ShellGameEnv, tasks.describe_shell_game),
    ("Intercept", ("Slow", "Medium", "Fast"), tasks.InterceptEnv, tasks.describe_intercept),
    ("InterceptGrab", ("Slow", "Medium", "Fast"), tasks.InterceptGrabEnv, tasks.describe_intercept_grab),
    ("RotateLenient", ("Pos", "PosNeg"), tasks.RotateEnv, tasks.describe_rotate_lenient),
    ("RotateStrict", ("Pos", "PosNeg"), tasks.RotateStrictEnv, tasks.describe_rotate_strict),
    ("TakeItBack", ("default",), tasks.TakeItBackEnv, tasks.describe_take_it_back),
    ("RememberColor", ("3", "5", "9"), tasks.RememberEnv, tasks.describe_remember_color),
    ("RememberShape", ("3", "5", "9"), tasks.RememberShapeEnv, tasks.describe_remember_shape),
    ("RememberShapeAndColor", ("3x2", "3x3", "5x3"), tasks.RememberShapeAndColorEnv,
     tasks.describe_remember_shape_and_color),
    ("SeqOfColors", ("3", "5", "7"), tasks.SeqOfColorsEnv, tasks.describe_seq_of_colors),
    ("BunchOfColors", ("3", "5", "7"), tasks.BunchOfColorsEnv, tasks.describe_bunch_of_colors),
    ("ChainOfColors", ("3", "5", "7"), tasks.ChainOfColorsEnv, tasks.describe_chain_of_colors),
]

TABLETOP_FAMILIES = tuple(name for name, *_ in _GROUPS)


def _register_all():
    for family, modes, cls, describe in _GROUPS:
        def build(config, mode, params, cls=cls, describe=describe):
            return cls(config, describe(mode, params), mode, params)

        register(TaskEntry(
            family=family,
            modes=modes,
            group="tabletop",
            defaults={},
            build=build,
            describe=lambda mode, params, describe=describe: describe(mode, params),
        ))


_register_all()


def _logic(task_id: str, mode: str | None = None,
           observation_mode: str = "masked") -> TabletopEnv:
    """A lightweight un-reset instance used as the task-logic carrier."""
    from ..registry import make

    env = make(EnvConfig(task_id=task_id, mode=mode, observation_mode=observation_mode))
    if not isinstance(env, TabletopEnv):
        raise ValueError(f"{task_id} is not a tabletop task")
    return env


def phase_of(task_id: str, mode: str | None, t: int) -> str:
    """Phase name at step ``t``; raises OutOfEpisode outside [0, timeout)."""
    return _logic(task_id, mode).schedule.phase_at(t)


def tabletop_init(task_id: str, mode: str | None, rng: np.random.Generator) -> TabletopScene:
    """Sample an initial scene exactly as reset() would."""
    env = _logic(task_id, mode)
    scene = env._build_scene(rng)
    scene.t = 0
    scene.latched.setdefault("touch_streak", np.zeros(env._n_objects, dtype=np.int64))
    env.scene = scene
    env._visibility(scene, env.schedule.phase_at(0))
    return scene


def observe(task_id: str, scene: TabletopScene, observation_mode: str = "masked",
            mode: str | None = None):
    """Observation for a scene under the given observation mode."""
    env = _logic(task_id, mode, observation_mode=observation_mode)
    env.scene = scene
    env._t = scene.t
    return env._compose_obs()


def dynamics(task_id: str, scene: TabletopScene, action) -> TabletopScene:
    """Pure transition: returns the successor of a copied scene."""
    nxt = copy.deepcopy(scene)
    scene_step(nxt, np.asarray(action, dtype=np.float64))
    return nxt


def success(task_id: str, mode: str | None, scene: TabletopScene) -> bool:
    env = _logic(task_id, mode)
    env.scene = scene
    return bool(env._success(scene))


def dense_reward(task_id: str, scene: TabletopScene, action, success_flag: bool,
                 mode: str | None = None) -> float:
    env = _logic(task_id, mode)
    env.scene = scene
    return env._dense_reward(scene, success_flag)


def oracle_info(task_id: str, scene: TabletopScene, mode: str | None = None) -> np.ndarray:
    env = _logic(task_id, mode)
    env.scene = scene
    return env._oracle()
