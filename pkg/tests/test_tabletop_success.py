"""Success predicates: thresholds, boundaries, ordering, and latches."""

import math

import numpy as np
import pytest

import memsuite as ms
from memsuite.tabletop import success, tabletop_init
from memsuite.tabletop.geometry import INTERCEPT_ZONE, TOUCH_STEPS, ZONE_RADIUS


def fresh(task_id, mode=None, seed=0, **kwargs):
    env = ms.make(ms.EnvConfig(task_id=task_id, mode=mode, **kwargs))
    env.reset(seed=seed)
    return env


def register_touch(env, slot):
    """Mark a sustained registered touch on one candidate and process it."""
    streak = env.scene.latched["touch_streak"]
    streak[:] = 0
    streak[slot] = TOUCH_STEPS
    env._update_progress(env.scene)
    streak[slot] = 0


# -- ShellGame ------------------------------------------------------------

def test_shell_game_touch_success_requires_action_phase_contact():
    env = fresh("ShellGame", "Touch", seed=2)
    s = env.scene.latched["ball_slot"]
    env.scene.t = 6
    env.scene.contacts[s] = True
    assert env._success(env.scene)
    env.scene.t = 5
    assert not env._success(env.scene)
    env.scene.t = 6
    env.scene.contacts[s] = False
    assert not env._success(env.scene)


def test_shell_game_push_success_at_strip():
    env = fresh("ShellGame", "Push", seed=2)
    s = env.scene.latched["ball_slot"]
    env.scene.obj_y[s] = 0.399
    assert not env._success(env.scene)
    env.scene.obj_y[s] = 0.4
    assert env._success(env.scene)


def test_shell_game_pick_requires_grab_and_displacement():
    env = fresh("ShellGame", "Pick", seed=2)
    s = env.scene.latched["ball_slot"]
    rest = env.scene.latched["mug_rest"][s]
    env.scene.grabbed = s
    env.scene.obj_x[s] = rest[0] + 0.12
    assert env._success(env.scene)
    env.scene.obj_x[s] = rest[0] + 0.08
    assert not env._success(env.scene)
    env.scene.obj_x[s] = rest[0] + 0.12
    env.scene.grabbed = -1
    assert not env._success(env.scene)


# -- Intercept ------------------------------------------------------------

def test_intercept_zone_boundary_exact():
    env = fresh("Intercept", "Slow", seed=1)
    b = env._ball
    env.scene.obj_vx[b] = env.scene.obj_vy[b] = 0.0
    env.scene.obj_y[b] = INTERCEPT_ZONE[1]
    env.scene.obj_x[b] = INTERCEPT_ZONE[0] + (ZONE_RADIUS - 1e-6)
    assert env._success(env.scene)
    env.scene.obj_x[b] = INTERCEPT_ZONE[0] + (ZONE_RADIUS + 1e-6)
    assert not env._success(env.scene)


def test_intercept_requires_rest():
    env = fresh("Intercept", "Slow", seed=1)
    b = env._ball
    env.scene.obj_x[b], env.scene.obj_y[b] = INTERCEPT_ZONE
    env.scene.obj_vy[b] = 0.0
    env.scene.obj_vx[b] = 0.01
    assert not env._success(env.scene)
    env.scene.obj_vx[b] = 0.0
    assert env._success(env.scene)


def test_intercept_grab_requires_still_gripper():
    env = fresh("InterceptGrab", "Slow", seed=1)
    env.scene.grabbed = 0
    env.scene.gvx, env.scene.gvy = 0.0, 0.0
    assert env._success(env.scene)
    env.scene.gvx = 0.01  # 0.01 m/s > 0.005 threshold
    assert not env._success(env.scene)


# -- Rotate ------------------------------------------------------------------

def test_rotate_lenient_boundary_at_threshold():
    env = fresh("RotateLenientPos", seed=3)
    target = env.scene.latched["target_angle"]
    env.scene.gvx = env.scene.gvy = 0.0
    env.scene.latched["rotation_accum"] = target + 0.1 - 1e-6
    assert env._success(env.scene)
    env.scene.latched["rotation_accum"] = target + 0.1 + 1e-6
    assert not env._success(env.scene)
    env.scene.latched["rotation_accum"] = target - 0.1 + 1e-6
    assert env._success(env.scene)
    env.scene.latched["rotation_accum"] = target - 0.1 - 1e-6
    assert not env._success(env.scene)


def test_rotate_strict_checks_peg_translation():
    env = fresh("RotateStrictPos", seed=3)
    target = env.scene.latched["target_angle"]
    env.scene.latched["rotation_accum"] = target
    env.scene.gvx = env.scene.gvy = 0.0
    x0, y0 = env.scene.latched["peg_initial"]
    env.scene.obj_x[0] = x0 + 0.049
    assert env._success(env.scene)
    env.scene.obj_x[0] = x0 + 0.051
    assert not env._success(env.scene)
    # lenient ignores translation entirely
    lenient = fresh("RotateLenientPos", seed=3)
    lenient.scene.latched["rotation_accum"] = lenient.scene.latched["target_angle"]
    lenient.scene.gvx = lenient.scene.gvy = 0.0
    lenient.scene.obj_x[0] += 0.3
    assert lenient._success(lenient.scene)


# -- TakeItBack --------------------------------------------------------------

def test_take_it_back_sequencing_latch():
    env = fresh("TakeItBack", seed=4)
    x0, y0 = env.scene.latched["cube_initial"]
    # cube sits at its initial region from the start: no success before latch
    assert not env._success(env.scene)
    env._update_progress(env.scene)
    assert not env.scene.latched["goal_reached"]
    # carry to goal: latch flips and the zone marker recolours
    gx, gy = env.scene.latched["goal_center"]
    env.scene.obj_x[2], env.scene.obj_y[2] = gx, gy
    env._update_progress(env.scene)
    assert env.scene.latched["goal_reached"]
    assert env.scene.obj_color[0] == 4  # magenta
    assert not env._success(env.scene)
    # return to origin: success
    env.scene.obj_x[2], env.scene.obj_y[2] = x0, y0
    assert env._success(env.scene)


def test_take_it_back_forcing_return_before_latch_never_succeeds():
    env = fresh("TakeItBack", seed=7)
    x0, y0 = env.scene.latched["cube_initial"]
    for dx in np.linspace(-0.05, 0.05, 11):
        env.scene.obj_x[2], env.scene.obj_y[2] = x0 + float(dx), y0
        env._update_progress(env.scene)
        assert not env._success(env.scene)


# -- Remember* ------------------------------------------------------------------

def test_remember_color_success_needs_sustained_touch():
    env = fresh("RememberColor3", seed=5)
    slot = env.scene.latched["target_slot"]
    env.scene.latched["touch_streak"][slot] = 1
    assert not env._success(env.scene)
    env.scene.latched["touch_streak"][slot] = 2
    assert env._success(env.scene)


def test_remember_wrong_touch_is_not_failure():
    env = fresh("RememberColor3", seed=5)
    slot = env.scene.latched["target_slot"]
    wrong = (slot + 1) % 3
    env.scene.latched["touch_streak"][wrong] = 5
    assert not env._success(env.scene)
    assert not env.scene.latched.get("failed", False)


# -- Seq / Bunch / Chain ------------------------------------------------------------

def slots_for_colors(env, colors):
    return [env.scene.latched["slot_of_color"][c] for c in colors]


def test_chain_requires_exact_order():
    env = fresh("ChainOfColors3", seed=6)
    cues = env.scene.latched["cue_colors"]
    for slot in slots_for_colors(env, cues):
        register_touch(env, slot)
    assert env._success(env.scene) and not env.scene.latched["failed"]

    env = fresh("ChainOfColors3", seed=6)
    wrong_order = [cues[0], cues[2], cues[1]]
    for slot in slots_for_colors(env, wrong_order)[:2]:
        register_touch(env, slot)
    assert env.scene.latched["failed"]
    assert not env._success(env.scene)


def test_seq_and_bunch_accept_any_order_but_no_mistakes():
    for task in ("SeqOfColors3", "BunchOfColors3"):
        env = fresh(task, seed=8)
        cues = env.scene.latched["cue_colors"]
        for slot in slots_for_colors(env, list(reversed(cues))):
            register_touch(env, slot)
        assert env._success(env.scene), task

        env = fresh(task, seed=8)
        cues = env.scene.latched["cue_colors"]
        distractor = next(c for c in range(9) if c not in cues)
        register_touch(env, env.scene.latched["slot_of_color"][distractor])
        assert env.scene.latched["failed"], task


def test_cue_set_episode_fails_closed_on_wrong_touch():
    # driving through step(): a registered wrong touch terminates with 0
    env = fresh("BunchOfColors3", seed=9)
    cues = env.scene.latched["cue_colors"]
    distractor = next(c for c in range(9) if c not in cues)
    slot = env.scene.latched["slot_of_color"][distractor]
    target = (env.scene.obj_x[slot], env.scene.obj_y[slot])
    while not env.finished:
        dx = np.clip(0.8 * (target[0] - env.scene.gx), -0.05, 0.05)
        dy = np.clip(0.8 * (target[1] - env.scene.gy), -0.05, 0.05)
        r = env.step(np.float32([dx, dy, 0.0, 0.0]))
    assert r.terminated and not r.info["success"] and r.reward == 0.0
