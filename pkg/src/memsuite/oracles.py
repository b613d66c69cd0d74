"""Scripted full-state solvers for every tabletop task.

Each controller is a proportional policy over the true scene: move-to-target
with gain 0.8 on clamped displacement, aware of the phase schedule (it idles
through observation and delay windows), the cue order for chain tasks, and
the remaining angular error for rotation tasks.  Solvers read whatever the
scene knows; they exist to generate the success-guaranteed demonstrations
the offline datasets are built from.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import OracleUnavailable
from .tabletop import TabletopEnv
from .tabletop.geometry import (GRIPPER_RADIUS, INTERCEPT_ZONE, MAX_STEP_ROT,
                                MAX_STEP_XY, MUG_RADIUS, OBJECT_RADIUS,
                                SELECTION_CENTER, SHELL_SLOTS)
from .tabletop.phases import SELECTION
from .tabletop.scene import TabletopScene, ball_position_closed_form

GAIN = 0.8
_NOOP = np.zeros(4, dtype=np.float32)


def _act(scene, tx, ty, rot=0.0, grip=0.0, gain=GAIN):
    dx = min(MAX_STEP_XY, max(-MAX_STEP_XY, gain * (tx - scene.gx)))
    dy = min(MAX_STEP_XY, max(-MAX_STEP_XY, gain * (ty - scene.gy)))
    rot = min(MAX_STEP_ROT, max(-MAX_STEP_ROT, rot))
    return np.float32([dx, dy, rot, grip])


def _hold(grip=0.0):
    return np.float32([0.0, 0.0, 0.0, grip])


def _shell_game(env: TabletopEnv) -> np.ndarray:
    scene = env.scene
    s = scene.latched["ball_slot"]
    mx, my = (scene.obj_x[s], scene.obj_y[s]) if scene.t >= 5 else SHELL_SLOTS[s]
    reach = GRIPPER_RADIUS + MUG_RADIUS
    if env.mode == "Touch":
        return _act(scene, mx, my)
    if env.mode == "Push":
        stand = (mx, my - (reach - 0.01))
        aligned = abs(scene.gx - mx) < 0.015 and scene.gy < my - reach + 0.02
        if not aligned:
            return _act(scene, *stand)
        return np.float32([min(MAX_STEP_XY, max(-MAX_STEP_XY, mx - scene.gx)),
                           MAX_STEP_XY, 0.0, 0.0])
    # Pick: grab on contact, then carry away from the rest position
    if scene.grabbed != s:
        grip = 1.0 if scene.in_contact(s) else 0.0
        return _act(scene, mx, my, grip=grip)
    rest = scene.latched["mug_rest"][s]
    away_x, away_y = scene.obj_x[s] - rest[0], scene.obj_y[s] - rest[1]
    norm = math.hypot(away_x, away_y)
    if norm < 1e-6:
        away_x, away_y = 0.0, -1.0
        norm = 1.0
    return np.float32([MAX_STEP_XY * away_x / norm, MAX_STEP_XY * away_y / norm, 0.0, 1.0])


def _intercept_point(scene: TabletopScene, ball: int) -> tuple[float, float]:
    origin = (scene.obj_x[ball], scene.obj_y[ball])
    velocity = (scene.obj_vx[ball], scene.obj_vy[ball])
    from .tabletop.geometry import DT

    for k in range(1, 240):
        bx, by = ball_position_closed_form(origin, velocity, k * DT)
        bx = min(0.5, max(-0.5, bx))
        by = min(0.5, max(-0.5, by))
        if math.hypot(bx - scene.gx, by - scene.gy) <= MAX_STEP_XY * k * 0.95:
            return bx, by
    return origin


def _intercept(env: TabletopEnv) -> np.ndarray:
    scene = env.scene
    b = env._ball
    ball = (scene.obj_x[b], scene.obj_y[b])
    moving = math.hypot(scene.obj_vx[b], scene.obj_vy[b]) > 0.0
    if scene.grabbed == b:
        if env.grab_variant:
            return _hold(grip=1.0)
        # carry the caught ball into the zone, settle, and release at rest
        d = math.hypot(ball[0] - INTERCEPT_ZONE[0], ball[1] - INTERCEPT_ZONE[1])
        if d > 0.02:
            ox, oy = scene.grab_offset
            return _act(scene, INTERCEPT_ZONE[0] - ox, INTERCEPT_ZONE[1] - oy, grip=1.0)
        if scene.gripper_speed > 0.0:
            return _hold(grip=1.0)  # one still step zeroes the carried velocity
        return _hold(grip=0.0)
    tx, ty = _intercept_point(scene, b) if moving else ball
    return _act(scene, tx, ty, grip=1.0, gain=1.0)


def _rotate(env: TabletopEnv) -> np.ndarray:
    scene = env.scene
    err = scene.latched["target_angle"] - scene.latched["rotation_accum"]
    if scene.in_contact(0):
        if abs(err) < 1e-12:
            return _hold()
        return np.float32([0.0, 0.0, min(MAX_STEP_ROT, max(-MAX_STEP_ROT, err)), 0.0])
    reach = GRIPPER_RADIUS + scene.obj_radius[0]
    stand = (scene.obj_x[0], scene.obj_y[0] - (reach - 0.01))
    return _act(scene, *stand)


def _take_it_back(env: TabletopEnv) -> np.ndarray:
    scene = env.scene
    cube = 2
    if scene.grabbed != cube:
        grip = 1.0 if scene.in_contact(cube) else 0.0
        return _act(scene, scene.obj_x[cube], scene.obj_y[cube], grip=grip)
    target = (scene.latched["cube_initial"] if scene.latched["goal_reached"]
              else scene.latched["goal_center"])
    ox, oy = scene.grab_offset
    return _act(scene, target[0] - ox, target[1] - oy, grip=1.0)


def _selection_started(env: TabletopEnv) -> bool:
    t = min(env.scene.t, env.meta.timeout - 1)
    return env.schedule.phase_at(t) == SELECTION


def _remember(env: TabletopEnv) -> np.ndarray:
    scene = env.scene
    if not _selection_started(env):
        # pre-position at the hub while the table is empty
        return _act(scene, *SELECTION_CENTER)
    slot = scene.latched["target_slot"]
    if scene.in_contact(slot):
        return _hold()
    return _act(scene, scene.obj_x[slot], scene.obj_y[slot])


def _cue_set(env: TabletopEnv) -> np.ndarray:
    scene = env.scene
    if not _selection_started(env):
        # pre-position at the hub while the table is empty
        return _act(scene, *SELECTION_CENTER)
    color = env._next_color(scene)
    if color is None:
        return _hold()
    slot = scene.latched["slot_of_color"][color]
    if scene.in_contact(slot):
        return _hold()
    hub = SELECTION_CENTER
    # leave a just-touched candidate by returning to the hub first; radial
    # paths never graze neighbouring slots
    near_hub = math.hypot(scene.gx - hub[0], scene.gy - hub[1]) < 0.03
    if near_hub:
        return _act(scene, scene.obj_x[slot], scene.obj_y[slot])
    on_radial = _path_clear(scene, slot)
    if on_radial:
        return _act(scene, scene.obj_x[slot], scene.obj_y[slot])
    return _act(scene, *hub)


def _path_clear(scene: TabletopScene, target_slot: int) -> bool:
    """No other candidate sits within grazing range of the straight path."""
    ax, ay = scene.gx, scene.gy
    bx, by = scene.obj_x[target_slot], scene.obj_y[target_slot]
    vx, vy = bx - ax, by - ay
    norm2 = vx * vx + vy * vy
    for i in range(9):
        if i == target_slot:
            continue
        px, py = scene.obj_x[i] - ax, scene.obj_y[i] - ay
        t = 0.0 if norm2 == 0 else max(0.0, min(1.0, (px * vx + py * vy) / norm2))
        d = math.hypot(px - t * vx, py - t * vy)
        if d < GRIPPER_RADIUS + OBJECT_RADIUS + 0.01:
            return False
    return True


_CONTROLLERS = {
    "ShellGame": _shell_game,
    "Intercept": _intercept,
    "InterceptGrab": _intercept,
    "RotateLenient": _rotate,
    "RotateStrict": _rotate,
    "TakeItBack": _take_it_back,
    "RememberColor": _remember,
    "RememberShape": _remember,
    "RememberShapeAndColor": _remember,
    "SeqOfColors": _cue_set,
    "BunchOfColors": _cue_set,
    "ChainOfColors": _cue_set,
}


def oracle_action(env) -> np.ndarray:
    """Full-state action for the env's current scene.

    Raises OracleUnavailable for tasks without a scripted solver (only the
    tabletop suite is guaranteed).
    """
    if not isinstance(env, TabletopEnv):
        raise OracleUnavailable(f"no scripted solver for {env.meta.task_id}")
    controller = _CONTROLLERS.get(env.meta.task_id)
    if controller is None:
        raise OracleUnavailable(f"no scripted solver for {env.meta.task_id}")
    return controller(env)


def has_oracle(task_id: str) -> bool:
    return task_id in _CONTROLLERS


def run_oracle_episode(env, seed: int, record=None) -> bool:
    """Roll one episode under the oracle; returns the terminal success flag.

    ``record``, when given, is called as record(env, action, result) after
    every step (the dataset collector hooks in here).
    """
    obs, info = env.reset(seed=seed)
    success = False
    while not env.finished:
        action = oracle_action(env)
        result = env.step(action)
        success = bool(result.info["success"])
        if record is not None:
            record(env, action, result)
    return success
