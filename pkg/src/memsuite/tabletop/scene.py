"""Tabletop scene state and the shared kinematic update.

The scene holds a disc gripper plus a small set of objects in parallel
arrays.  One update applies a clamped action: the gripper translates and
rotates, may grab or release, pushes overlapping objects along its motion,
transfers rotation to rotatable objects in contact, and rolling objects
integrate exact uniformly decelerated motion.  Everything is deterministic;
there is no restitution and objects never collide with each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import (BALL_DECELERATION, DT, GRIPPER_RADIUS, WORKSPACE_HALF)

_LIMIT = WORKSPACE_HALF


@dataclass
class TabletopScene:
    """Mutable episode state; the hidden POMDP state of a tabletop task."""

    # gripper pose and rates
    gx: float = 0.0
    gy: float = 0.0
    gangle: float = 0.0
    grip: float = 0.0
    gvx: float = 0.0
    gvy: float = 0.0
    gangular: float = 0.0
    grip_rate: float = 0.0

    # objects, parallel arrays
    obj_x: np.ndarray = field(default_factory=lambda: np.zeros(0))
    obj_y: np.ndarray = field(default_factory=lambda: np.zeros(0))
    obj_angle: np.ndarray = field(default_factory=lambda: np.zeros(0))
    obj_radius: np.ndarray = field(default_factory=lambda: np.zeros(0))
    obj_shape: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    obj_color: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    obj_visible: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=bool))
    obj_vx: np.ndarray = field(default_factory=lambda: np.zeros(0))
    obj_vy: np.ndarray = field(default_factory=lambda: np.zeros(0))
    obj_grabbable: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=bool))
    obj_fixed: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=bool))
    obj_rotatable: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=bool))
    obj_rolls: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=bool))

    grabbed: int = -1
    grab_offset: tuple[float, float] = (0.0, 0.0)

    t: int = 0
    contacts: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=bool))
    rot_applied: float = 0.0       # rotation transferred to a peg this step
    latched: dict = field(default_factory=dict)

    @property
    def n_objects(self) -> int:
        return len(self.obj_x)

    @property
    def gripper_speed(self) -> float:
        return math.hypot(self.gvx, self.gvy)

    def add_object(self, x, y, radius, shape, color, angle=0.0, visible=True,
                   vx=0.0, vy=0.0, grabbable=True, rotatable=False, rolls=False,
                   fixed=False) -> int:
        idx = self.n_objects
        self.obj_x = np.append(self.obj_x, float(x))
        self.obj_y = np.append(self.obj_y, float(y))
        self.obj_angle = np.append(self.obj_angle, float(angle))
        self.obj_radius = np.append(self.obj_radius, float(radius))
        self.obj_shape = np.append(self.obj_shape, int(shape))
        self.obj_color = np.append(self.obj_color, int(color))
        self.obj_visible = np.append(self.obj_visible, bool(visible))
        self.obj_vx = np.append(self.obj_vx, float(vx))
        self.obj_vy = np.append(self.obj_vy, float(vy))
        self.obj_grabbable = np.append(self.obj_grabbable, bool(grabbable))
        self.obj_fixed = np.append(self.obj_fixed, bool(fixed))
        self.obj_rotatable = np.append(self.obj_rotatable, bool(rotatable))
        self.obj_rolls = np.append(self.obj_rolls, bool(rolls))
        self.contacts = np.zeros(self.n_objects, dtype=bool)
        return idx

    def object_distance(self, idx: int) -> float:
        return math.hypot(self.obj_x[idx] - self.gx, self.obj_y[idx] - self.gy)

    def in_contact(self, idx: int) -> bool:
        reach = GRIPPER_RADIUS + self.obj_radius[idx] + 1e-9
        return self.object_distance(idx) <= reach


def _clamp(value: float, limit: float = _LIMIT) -> float:
    return -limit if value < -limit else (limit if value > limit else value)


def scene_step(scene: TabletopScene, action: np.ndarray) -> None:
    """Apply one clamped (dx, dy, dtheta, grip) action in place.

    Order: gripper moves and rotates; grab state updates; the grabbed object
    follows; overlapping free objects are pushed along the motion direction
    just far enough to stop overlapping; rolling objects integrate their
    decelerating velocity (stopping at walls); finally any rolling object in
    contact with the gripper loses its velocity (caught, no restitution).
    """
    dx, dy, dtheta, grip_cmd = (float(action[0]), float(action[1]),
                                float(action[2]), float(action[3]))
    old_x, old_y, old_angle, old_grip = scene.gx, scene.gy, scene.gangle, scene.grip

    scene.gx = _clamp(old_x + dx)
    scene.gy = _clamp(old_y + dy)
    scene.gangle = old_angle + dtheta
    scene.grip = grip_cmd
    moved_x, moved_y = scene.gx - old_x, scene.gy - old_y
    scene.gvx = moved_x / DT
    scene.gvy = moved_y / DT
    scene.gangular = dtheta / DT
    scene.grip_rate = (grip_cmd - old_grip) / DT

    # release or carry
    if scene.grabbed >= 0:
        if scene.grip <= 0.5:
            scene.grabbed = -1
        else:
            i = scene.grabbed
            scene.obj_x[i] = _clamp(scene.gx + scene.grab_offset[0])
            scene.obj_y[i] = _clamp(scene.gy + scene.grab_offset[1])
            scene.obj_angle[i] += dtheta
            scene.obj_vx[i] = scene.gvx
            scene.obj_vy[i] = scene.gvy

    # push free visible objects out of the gripper along its motion
    move_norm = math.hypot(moved_x, moved_y)
    if move_norm > 0.0:
        ux, uy = moved_x / move_norm, moved_y / move_norm
        for i in range(scene.n_objects):
            if i == scene.grabbed or scene.obj_fixed[i] or not scene.obj_visible[i]:
                continue
            reach = GRIPPER_RADIUS + scene.obj_radius[i]
            dist = scene.object_distance(i)
            if dist < reach:
                depth = reach - dist
                scene.obj_x[i] = _clamp(scene.obj_x[i] + ux * depth)
                scene.obj_y[i] = _clamp(scene.obj_y[i] + uy * depth)

    # rolling objects: exact uniform deceleration, stop at walls
    for i in range(scene.n_objects):
        if not scene.obj_rolls[i] or i == scene.grabbed:
            continue
        speed = math.hypot(scene.obj_vx[i], scene.obj_vy[i])
        if speed <= 0.0:
            continue
        tau = min(DT, speed / BALL_DECELERATION)
        travel = speed * tau - 0.5 * BALL_DECELERATION * tau * tau
        ux, uy = scene.obj_vx[i] / speed, scene.obj_vy[i] / speed
        nx = scene.obj_x[i] + ux * travel
        ny = scene.obj_y[i] + uy * travel
        cx, cy = _clamp(nx), _clamp(ny)
        new_speed = max(0.0, speed - BALL_DECELERATION * DT)
        if cx != nx or cy != ny:
            new_speed = 0.0  # wall stops the ball
        scene.obj_x[i], scene.obj_y[i] = cx, cy
        scene.obj_vx[i], scene.obj_vy[i] = ux * new_speed, uy * new_speed

    # grab: closed gripper over the nearest grabbable visible object
    if scene.grabbed < 0 and scene.grip > 0.5:
        best, best_dist = -1, math.inf
        for i in range(scene.n_objects):
            if not (scene.obj_grabbable[i] and scene.obj_visible[i]):
                continue
            dist = scene.object_distance(i)
            if dist <= GRIPPER_RADIUS + scene.obj_radius[i] + 1e-9 and dist < best_dist:
                best, best_dist = i, dist
        if best >= 0:
            scene.grabbed = best
            scene.grab_offset = (scene.obj_x[best] - scene.gx, scene.obj_y[best] - scene.gy)
            scene.obj_vx[best] = 0.0
            scene.obj_vy[best] = 0.0

    # contacts, rotation transfer, and catching rolling objects
    scene.rot_applied = 0.0
    for i in range(scene.n_objects):
        touching = scene.obj_visible[i] and scene.in_contact(i)
        scene.contacts[i] = touching
        if not touching:
            continue
        if scene.obj_rotatable[i] and dtheta != 0.0:
            if i != scene.grabbed:  # a grabbed peg already rotated with the carry
                scene.obj_angle[i] += dtheta
            scene.rot_applied += dtheta
        if scene.obj_rolls[i] and i != scene.grabbed:
            scene.obj_vx[i] = 0.0
            scene.obj_vy[i] = 0.0


def ball_position_closed_form(origin, velocity, elapsed_seconds, decel=BALL_DECELERATION):
    """Reference position of a uniformly decelerating roll after ``t`` seconds."""
    v0 = math.hypot(velocity[0], velocity[1])
    if v0 <= 0.0:
        return origin
    stop_time = v0 / decel
    tau = min(elapsed_seconds, stop_time)
    travel = v0 * tau - 0.5 * decel * tau * tau
    return (origin[0] + velocity[0] / v0 * travel,
            origin[1] + velocity[1] / v0 * travel)
