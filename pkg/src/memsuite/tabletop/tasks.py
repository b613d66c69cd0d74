"""The twelve tabletop task groups.

Layouts, visibility rules, success predicates, dense-reward terms and
oracle vectors for each group.  Geometry is planar: "pick/lift" reads as
grab-and-displace, sustained contact stands in for touch duration, and the
occlusion/phase structure of every task is preserved.
"""

from __future__ import annotations

import math

import numpy as np

from ..types import TaskMeta
from .base import TabletopEnv
from .geometry import (CUE_DISPLAY, GLYPH_BALL, GLYPH_MUG, GLYPH_PEG, GLYPH_ZONE,
                       GRIPPER_START_FAR, INTERCEPT_ZONE, MUG_RADIUS,
                       OBJECT_RADIUS, PALETTE, PEG_POSITION, PEG_RADIUS,
                       PUSH_STRIP_Y, SHELL_SLOTS, TOUCH_STEPS, ZONE_RADIUS,
                       cue_row, selection_circle)
from .phases import (OBSERVATION, SELECTION, shell_game_schedule,
                     show_delay_select_schedule, single_action_schedule)
from .scene import TabletopScene

TAU_HALF = math.pi / 2
QUARTER = math.pi / 4

INTERCEPT_SPEED_RANGES = {"Slow": (0.25, 0.5), "Medium": (0.5, 0.75), "Fast": (0.75, 1.0)}

# shape-and-colour modes: (local shape glyphs, local colour indices)
_SAC_SHAPES = (0, 1, 7, 3, 4)   # cube, sphere, t-shape, cross, torus
_SAC_MODES = {"3x2": (3, 2), "3x3": (3, 3), "5x3": (5, 3)}


def _new_scene(start) -> TabletopScene:
    scene = TabletopScene()
    scene.gx, scene.gy = start
    return scene


class ShellGameEnv(TabletopEnv):
    """A ball is shown at one of three spots, then covered by mugs.

    Touch: contact the covering mug.  Push: drive it forward across the
    strip line.  Pick: grab it and carry it at least 0.1 m from its spot.
    """

    def _build_schedule(self):
        return shell_game_schedule(self.meta.timeout)

    def _object_count(self):
        return 4  # three mugs in slot order, then the ball

    def _build_scene(self, rng):
        scene = _new_scene(GRIPPER_START_FAR)
        for x, y in SHELL_SLOTS:
            scene.add_object(x, y, MUG_RADIUS, GLYPH_MUG, 0, visible=False)
        slot = int(rng.integers(0, 3))
        bx, by = SHELL_SLOTS[slot]
        scene.add_object(bx, by, OBJECT_RADIUS, GLYPH_BALL, 0, visible=True,
                         grabbable=False, fixed=True)
        scene.latched["ball_slot"] = slot
        scene.latched["mug_rest"] = tuple(SHELL_SLOTS)
        return scene

    def _visibility(self, scene, phase):
        scene.obj_visible[3] = phase == OBSERVATION
        covered = scene.t >= 5
        scene.obj_visible[0:3] = covered

    def _target_mug(self, scene):
        return scene.latched["ball_slot"]

    def _success(self, scene):
        s = self._target_mug(scene)
        if self.mode == "Touch":
            return scene.t >= 6 and bool(scene.contacts[s])
        if self.mode == "Push":
            return scene.obj_y[s] >= PUSH_STRIP_Y
        rest = scene.latched["mug_rest"][s]
        moved = math.hypot(scene.obj_x[s] - rest[0], scene.obj_y[s] - rest[1])
        return scene.grabbed == s and moved >= 0.1

    def _reach_target(self, scene):
        if scene.t < 6:
            return None
        s = self._target_mug(scene)
        return scene.obj_x[s], scene.obj_y[s]

    def _progress_reward(self, scene):
        s = self._target_mug(scene)
        if self.mode == "Touch":
            return 1.0 if scene.contacts[s] else 0.0
        if self.mode == "Push":
            return 1.0 - math.tanh(5.0 * max(0.0, PUSH_STRIP_Y - scene.obj_y[s]))
        rest = scene.latched["mug_rest"][s]
        moved = math.hypot(scene.obj_x[s] - rest[0], scene.obj_y[s] - rest[1])
        return min(1.0, moved / 0.1) if scene.grabbed == s else 0.0

    def _static_gate(self, scene):
        return bool(scene.contacts[self._target_mug(scene)])

    def _oracle(self):
        out = np.zeros(3, dtype=np.float32)
        out[self.scene.latched["ball_slot"]] = 1.0
        return out


class InterceptEnv(TabletopEnv):
    """A ball rolls across the table with sampled speed and heading.

    Plain mode: bring the ball to rest inside the target zone.  Grab mode:
    catch the ball and hold it with the gripper still.
    """

    grab_variant = False

    def _build_schedule(self):
        return single_action_schedule(self.meta.timeout)

    def _object_count(self):
        return 1 if self.grab_variant else 2

    def _build_scene(self, rng):
        scene = _new_scene(GRIPPER_START_FAR)
        if not self.grab_variant:
            scene.add_object(*INTERCEPT_ZONE, ZONE_RADIUS, GLYPH_ZONE, 0,
                             grabbable=False, fixed=True)
        lo, hi = INTERCEPT_SPEED_RANGES[self.mode]
        speed = float(rng.uniform(lo, hi))
        heading = float(rng.uniform(-math.radians(10), math.radians(10)))
        x0 = float(rng.uniform(-0.45, -0.35))
        y0 = float(rng.uniform(0.15, 0.35))
        vx, vy = speed * math.cos(heading), speed * math.sin(heading)
        scene.add_object(x0, y0, OBJECT_RADIUS, GLYPH_BALL, 0,
                         vx=vx, vy=vy, rolls=True)
        scene.latched["initial_velocity"] = (vx, vy)
        scene.latched["ball_origin"] = (x0, y0)
        return scene

    @property
    def _ball(self):
        return 1 if not self.grab_variant else 0

    def _visibility(self, scene, phase):
        scene.obj_visible[:] = True

    def _ball_speed(self, scene):
        b = self._ball
        return math.hypot(scene.obj_vx[b], scene.obj_vy[b])

    def _success(self, scene):
        b = self._ball
        if self.grab_variant:
            return scene.grabbed == b and self.gripper_static(scene)
        if scene.grabbed == b or self._ball_speed(scene) > 0.0:
            return False
        d = math.hypot(scene.obj_x[b] - INTERCEPT_ZONE[0], scene.obj_y[b] - INTERCEPT_ZONE[1])
        return d <= ZONE_RADIUS

    def _reach_target(self, scene):
        b = self._ball
        return scene.obj_x[b], scene.obj_y[b]

    def _progress_reward(self, scene):
        b = self._ball
        if self.grab_variant:
            return 1.0 if scene.grabbed == b else 0.0
        d = math.hypot(scene.obj_x[b] - INTERCEPT_ZONE[0], scene.obj_y[b] - INTERCEPT_ZONE[1])
        return 1.0 - math.tanh(5.0 * d)

    def _static_gate(self, scene):
        b = self._ball
        if self.grab_variant:
            return scene.grabbed == b
        d = math.hypot(scene.obj_x[b] - INTERCEPT_ZONE[0], scene.obj_y[b] - INTERCEPT_ZONE[1])
        return d <= ZONE_RADIUS

    def _oracle(self):
        return np.asarray(self.scene.latched["initial_velocity"], dtype=np.float32)


class InterceptGrabEnv(InterceptEnv):
    grab_variant = True


class RotateEnv(TabletopEnv):
    """Rotate a randomly oriented peg by a prompted angle.

    The accumulated rotation applied to the peg must land within 0.1 rad of
    the target while the gripper is still; the strict variant additionally
    requires the peg centre to stay within 5 cm of where it started.
    """

    strict = False

    def _build_schedule(self):
        return single_action_schedule(self.meta.timeout)

    def _object_count(self):
        return 1

    def _build_scene(self, rng):
        scene = _new_scene(GRIPPER_START_FAR)
        angle0 = float(rng.uniform(-math.pi, math.pi))
        scene.add_object(*PEG_POSITION, PEG_RADIUS, GLYPH_PEG, 2, angle=angle0,
                         rotatable=True)
        if self.mode == "Pos":
            target = TAU_HALF * (1.0 - float(rng.uniform(0.0, 1.0)))  # (0, pi/2]
        else:
            target = float(rng.uniform(-QUARTER, QUARTER))
        scene.latched["target_angle"] = target
        scene.latched["rotation_accum"] = 0.0
        scene.latched["peg_initial"] = PEG_POSITION
        return scene

    def _visibility(self, scene, phase):
        scene.obj_visible[:] = True

    def _update_progress(self, scene):
        scene.latched["rotation_accum"] += scene.rot_applied

    def angle_error(self, scene):
        return scene.latched["rotation_accum"] - scene.latched["target_angle"]

    def _success(self, scene):
        if abs(self.angle_error(scene)) > 0.1 or not self.gripper_static(scene):
            return False
        if not self.strict:
            return True
        x0, y0 = scene.latched["peg_initial"]
        return math.hypot(scene.obj_x[0] - x0, scene.obj_y[0] - y0) <= 0.05

    def _reach_target(self, scene):
        return scene.obj_x[0], scene.obj_y[0]

    def _progress_reward(self, scene):
        return 1.0 - math.tanh(5.0 * abs(self.angle_error(scene)))

    def _static_gate(self, scene):
        return abs(self.angle_error(scene)) <= 0.1

    def _prompt(self):
        return np.float32([self.scene.latched["target_angle"]])

    def _oracle(self):
        return np.float32([self.scene.latched["rotation_accum"]])


class RotateStrictEnv(RotateEnv):
    strict = True


class TakeItBackEnv(TabletopEnv):
    """Carry the cube to the goal zone, then back to its unmarked origin.

    Reaching the goal flips the zone marker from red to magenta and arms
    the return leg; success needs both legs in order.
    """

    def _build_schedule(self):
        return single_action_schedule(self.meta.timeout)

    def _object_count(self):
        return 3  # goal marker, origin marker (never shown), cube

    def _build_scene(self, rng):
        scene = _new_scene(GRIPPER_START_FAR)
        gx = float(rng.uniform(-0.2, 0.2))
        gy = float(rng.uniform(0.25, 0.4))
        scene.add_object(gx, gy, ZONE_RADIUS, GLYPH_ZONE, 0, grabbable=False, fixed=True)
        x0 = float(rng.uniform(-0.25, 0.25))
        y0 = float(rng.uniform(-0.3, -0.1))
        scene.add_object(x0, y0, ZONE_RADIUS, GLYPH_ZONE, 0, visible=False,
                         grabbable=False, fixed=True)
        scene.add_object(x0, y0, OBJECT_RADIUS, 0, 1)  # a lime cube
        scene.latched["cube_initial"] = (x0, y0)
        scene.latched["goal_center"] = (gx, gy)
        scene.latched["goal_reached"] = False
        return scene

    def _visibility(self, scene, phase):
        scene.obj_visible[0] = True
        scene.obj_visible[1] = False
        scene.obj_visible[2] = True

    def _update_progress(self, scene):
        if not scene.latched["goal_reached"]:
            gx, gy = scene.latched["goal_center"]
            if math.hypot(scene.obj_x[2] - gx, scene.obj_y[2] - gy) <= ZONE_RADIUS:
                scene.latched["goal_reached"] = True
                scene.obj_color[0] = 4  # red -> magenta

    def _success(self, scene):
        if not scene.latched["goal_reached"]:
            return False
        x0, y0 = scene.latched["cube_initial"]
        return math.hypot(scene.obj_x[2] - x0, scene.obj_y[2] - y0) <= ZONE_RADIUS

    def _reach_target(self, scene):
        return scene.obj_x[2], scene.obj_y[2]

    def _progress_reward(self, scene):
        target = (scene.latched["cube_initial"] if scene.latched["goal_reached"]
                  else scene.latched["goal_center"])
        d = math.hypot(scene.obj_x[2] - target[0], scene.obj_y[2] - target[1])
        half = 0.5 if scene.latched["goal_reached"] else 0.0
        return half + 0.5 * (1.0 - math.tanh(5.0 * d))

    def _static_gate(self, scene):
        if not scene.latched["goal_reached"]:
            return False
        x0, y0 = scene.latched["cube_initial"]
        return math.hypot(scene.obj_x[2] - x0, scene.obj_y[2] - y0) <= ZONE_RADIUS

    def _oracle(self):
        x0, y0 = self.scene.latched["cube_initial"]
        return np.float32([x0, y0, 1.0 if self.scene.latched["goal_reached"] else 0.0])


class RememberEnv(TabletopEnv):
    """Show one object, hide it, then pick it out of a decoy line-up.

    ``kind`` selects the attribute to remember: colour, shape, or both.
    Candidates sit on a circle around the hub; the hidden assignment of
    attribute to slot is a seed permutation, so the target slot is uniform.
    Success is sustained contact with the matching candidate.
    """

    kind = "color"

    def _candidate_values(self) -> list[tuple[int, int]]:
        if self.kind == "color":
            count = int(self.mode)
            return [(0, c) for c in range(count)]
        if self.kind == "shape":
            count = int(self.mode)
            return [(s, 0) for s in range(count)]
        n_shapes, n_colors = _SAC_MODES[self.mode]
        return [(s, c) for s in _SAC_SHAPES[:n_shapes] for c in range(n_colors)]

    def _build_schedule(self):
        return show_delay_select_schedule(self.meta.timeout)

    def _object_count(self):
        return len(self._candidate_values()) + 1

    def _build_scene(self, rng):
        values = self._candidate_values()
        k = len(values)
        scene = _new_scene(GRIPPER_START_FAR)
        order = rng.permutation(k)
        slots = selection_circle(k)
        for slot in range(k):
            shape, color = values[int(order[slot])]
            scene.add_object(*slots[slot], OBJECT_RADIUS, shape, color,
                             visible=False, grabbable=False, fixed=True)
        target_value = int(rng.integers(0, k))
        shape, color = values[target_value]
        scene.add_object(*CUE_DISPLAY, OBJECT_RADIUS, shape, color,
                         visible=True, grabbable=False, fixed=True)
        scene.latched["target_value"] = target_value
        scene.latched["target_slot"] = int(np.flatnonzero(order == target_value)[0])
        return scene

    def _visibility(self, scene, phase):
        k = self._n_objects - 1
        scene.obj_visible[:k] = phase == SELECTION
        scene.obj_visible[k] = phase == OBSERVATION

    def _success(self, scene):
        slot = scene.latched["target_slot"]
        return int(scene.latched["touch_streak"][slot]) >= TOUCH_STEPS

    def _reach_target(self, scene):
        if self.schedule.phase_at(min(scene.t, self.meta.timeout - 1)) != SELECTION:
            return None
        slot = scene.latched["target_slot"]
        return scene.obj_x[slot], scene.obj_y[slot]

    def _progress_reward(self, scene):
        slot = scene.latched["target_slot"]
        return min(1.0, scene.latched["touch_streak"][slot] / TOUCH_STEPS)

    def _static_gate(self, scene):
        return bool(scene.contacts[scene.latched["target_slot"]])

    def _oracle(self):
        values = self._candidate_values()
        shape, color = values[self.scene.latched["target_value"]]
        if self.kind == "color":
            return np.float32([color])
        if self.kind == "shape":
            return np.float32([shape])
        n_shapes, n_colors = _SAC_MODES[self.mode]
        return np.float32([_SAC_SHAPES.index(shape), color])


class RememberShapeEnv(RememberEnv):
    kind = "shape"


class RememberShapeAndColorEnv(RememberEnv):
    kind = "both"


class CueSetEnv(TabletopEnv):
    """Cue colours are demonstrated, then all nine colours appear.

    The demonstrated set must be touched without any registered mistake;
    the ordered variant requires the exact demonstration order.  A wrong
    registered touch fails and ends the episode with no reward.
    """

    simultaneous = False
    ordered = False

    def _build_schedule(self):
        windows = 1 if self.simultaneous else int(self.mode)
        return show_delay_select_schedule(self.meta.timeout, cue_windows=windows)

    @property
    def n_cues(self):
        return int(self.mode)

    def _object_count(self):
        return 9 + self.n_cues

    def _build_scene(self, rng):
        n = self.n_cues
        scene = _new_scene(GRIPPER_START_FAR)
        slots = selection_circle(9)
        slot_colors = rng.permutation(9)
        for slot in range(9):
            scene.add_object(*slots[slot], OBJECT_RADIUS, 0, int(slot_colors[slot]),
                             visible=False, grabbable=False, fixed=True)
        cue_colors = [int(c) for c in rng.permutation(9)[:n]]
        positions = cue_row(n) if self.simultaneous else [CUE_DISPLAY] * n
        for i, color in enumerate(cue_colors):
            scene.add_object(*positions[i], OBJECT_RADIUS, 0, color,
                             visible=False, grabbable=False, fixed=True)
        scene.latched["cue_colors"] = cue_colors
        scene.latched["slot_of_color"] = {int(slot_colors[s]): s for s in range(9)}
        scene.latched["collected"] = []
        scene.latched["failed"] = False
        return scene

    def _visibility(self, scene, phase):
        scene.obj_visible[:9] = phase == SELECTION
        n = self.n_cues
        if self.simultaneous:
            scene.obj_visible[9:] = phase == OBSERVATION
        else:
            window = scene.t // 5 if phase == OBSERVATION else -1
            for i in range(n):
                scene.obj_visible[9 + i] = i == window

    def _update_progress(self, scene):
        if scene.latched["failed"]:
            return
        collected = scene.latched["collected"]
        cues = scene.latched["cue_colors"]
        for slot in range(9):
            if not self.registered_touch(scene, slot):
                continue
            color = int(scene.obj_color[slot])
            if self.ordered:
                ok = len(collected) < len(cues) and color == cues[len(collected)]
            else:
                ok = color in cues and color not in collected
            if ok:
                collected.append(color)
            else:
                scene.latched["failed"] = True

    def _success(self, scene):
        return (not scene.latched["failed"]
                and len(scene.latched["collected"]) == self.n_cues)

    def _next_color(self, scene):
        collected = scene.latched["collected"]
        cues = scene.latched["cue_colors"]
        if self.ordered:
            return cues[len(collected)] if len(collected) < len(cues) else None
        for c in cues:
            if c not in collected:
                return c
        return None

    def _reach_target(self, scene):
        if self.schedule.phase_at(min(scene.t, self.meta.timeout - 1)) != SELECTION:
            return None
        color = self._next_color(scene)
        if color is None:
            return None
        slot = scene.latched["slot_of_color"][color]
        return scene.obj_x[slot], scene.obj_y[slot]

    def _progress_reward(self, scene):
        return len(scene.latched["collected"]) / self.n_cues

    def _static_gate(self, scene):
        color = self._next_color(scene)
        if color is None:
            return True
        return bool(scene.contacts[scene.latched["slot_of_color"][color]])

    def _oracle(self):
        cues = self.scene.latched["cue_colors"]
        return np.float32(list(cues) + [len(self.scene.latched["collected"])])


class BunchOfColorsEnv(CueSetEnv):
    simultaneous = True


class SeqOfColorsEnv(CueSetEnv):
    pass  # sequential display, any collection order


class ChainOfColorsEnv(CueSetEnv):
    ordered = True  # exact demonstration order


# -- metadata ---------------------------------------------------------------

def _meta(family, mode, modes, memory, horizon, timeout, oracle, prompt=(), notes=""):
    return TaskMeta(
        task_id=family, memory_types=memory, correlation_horizon=horizon,
        timeout=timeout, modes=modes, oracle_info_schema=oracle,
        prompt_schema=prompt, reward_modes=("sparse", "dense"), notes=notes)


def describe_shell_game(mode, params):
    return _meta("ShellGame", mode, ("Touch", "Push", "Pick"), ("Object",), 2, 90,
                 (("cup_with_ball_number", 3),),
                 notes="push target is a forward strip of depth 0.1 m")


def describe_intercept(mode, params):
    return _meta("Intercept", mode, ("Slow", "Medium", "Fast"), ("Spatial",), 2, 90,
                 (("initial_velocity", 2),),
                 notes="target zone fixed off the ball corridor; ball origin and velocity randomized")


def describe_intercept_grab(mode, params):
    return _meta("InterceptGrab", mode, ("Slow", "Medium", "Fast"), ("Spatial",), 2, 90,
                 (("initial_velocity", 2),))


def describe_rotate_lenient(mode, params):
    return _meta("RotateLenient", mode, ("Pos", "PosNeg"), ("Spatial",), 2, 90,
                 (("y_angle_diff", 1),), prompt=(("target_angle", 1),),
                 notes="lenient mode ignores peg translation entirely")


def describe_rotate_strict(mode, params):
    return _meta("RotateStrict", mode, ("Pos", "PosNeg"), ("Spatial",), 2, 90,
                 (("y_angle_diff", 1),), prompt=(("target_angle", 1),))


def describe_take_it_back(mode, params):
    return _meta("TakeItBack", mode, ("default",), ("Spatial",), 20, 180,
                 (("xy_initial", 2), ("goal_reached", 1)),
                 notes="horizon estimates the shortest goal-and-return journey")


def describe_remember_color(mode, params):
    return _meta("RememberColor", mode, ("3", "5", "9"), ("Object",), 6, 60,
                 (("true_color_indices", 1),))


def describe_remember_shape(mode, params):
    return _meta("RememberShape", mode, ("3", "5", "9"), ("Object",), 6, 60,
                 (("true_shape_indices", 1),))


def describe_remember_shape_and_color(mode, params):
    return _meta("RememberShapeAndColor", mode, ("3x2", "3x3", "5x3"), ("Object",), 6, 60,
                 (("true_shapes_info", 1), ("true_colors_info", 1)))


def describe_seq_of_colors(mode, params):
    n = int(mode)
    return _meta("SeqOfColors", mode, ("3", "5", "7"), ("Capacity",), 6, 120,
                 (("true_color_indices", n), ("touched_count", 1)))


def describe_bunch_of_colors(mode, params):
    n = int(mode)
    return _meta("BunchOfColors", mode, ("3", "5", "7"), ("Capacity",), 6, 120,
                 (("true_color_indices", n), ("touched_count", 1)))


def describe_chain_of_colors(mode, params):
    n = int(mode)
    return _meta("ChainOfColors", mode, ("3", "5", "7"), ("Sequential",), 6, 120,
                 (("true_color_indices", n), ("touched_count", 1)))
