"""Base environment for the tabletop manipulation analogues.

Subclasses define the scene layout, per-phase visibility, success predicate,
dense-reward terms, and the oracle vector.  This base owns action/observation
spaces, the step pipeline (kinematics, visibility, progress latches, reward
composition), and the four observation modes:

* ``state``  - proprio + every object's features + oracle info + prompt
* ``masked`` - proprio + visible objects only (hidden blocks zeroed) + prompt
* ``rgb``    - top view and gripper crop stacked to (128, 128, 6); tasks
               with a prompt return {"rgb": raster, "prompt": vector}
* ``masked+rgb`` - {"vector": masked vector, "rgb": raster}
"""

from __future__ import annotations

import math

import numpy as np

from ..env import Env
from ..spaces import Box
from ..types import EnvConfig, TaskMeta
from .geometry import (GRIPPER_STATIC_SPEED, MAX_STEP_ROT, MAX_STEP_XY, N_GLYPHS,
                       OBJECT_FEATURE_DIM, PALETTE, PROPRIO_DIM, TOUCH_STEPS)
from .phases import PhaseSchedule
from .render import render_pair
from .scene import TabletopScene, scene_step

SUCCESS_BONUS = 5.0
REACH_GAIN = 5.0
STATIC_GAIN = 10.0


class TabletopEnv(Env):
    group = "tabletop"

    def __init__(self, config: EnvConfig, meta: TaskMeta, mode: str, params: dict):
        super().__init__(config, meta)
        self.mode = mode
        self.params = params
        self.schedule: PhaseSchedule = self._build_schedule()
        self._n_objects = self._object_count()
        self.action_space = Box(
            (-MAX_STEP_XY, -MAX_STEP_XY, -MAX_STEP_ROT, 0.0),
            (MAX_STEP_XY, MAX_STEP_XY, MAX_STEP_ROT, 1.0),
            (4,))
        vec_dim = PROPRIO_DIM + self._n_objects * OBJECT_FEATURE_DIM + meta.prompt_dim
        self._masked_dim = vec_dim
        self._state_dim = vec_dim + meta.oracle_dim
        if config.observation_mode == "state":
            self.observation_space = Box(-np.inf, np.inf, (self._state_dim,))
        elif config.observation_mode == "masked":
            self.observation_space = Box(-np.inf, np.inf, (self._masked_dim,))
        elif config.observation_mode == "rgb":
            self.observation_space = Box(0, 255, (128, 128, 6), dtype="uint8")
        else:  # masked+rgb
            self.observation_space = {
                "vector": Box(-np.inf, np.inf, (self._masked_dim,)),
                "rgb": Box(0, 255, (128, 128, 6), dtype="uint8"),
            }
        self._vec_buf = np.zeros(max(self._masked_dim, self._state_dim), dtype=np.float32)
        self.scene: TabletopScene | None = None

    # -- subclass surface ---------------------------------------------------

    def _build_schedule(self) -> PhaseSchedule:
        raise NotImplementedError

    def _object_count(self) -> int:
        raise NotImplementedError

    def _build_scene(self, rng) -> TabletopScene:
        raise NotImplementedError

    def _visibility(self, scene: TabletopScene, phase: str) -> None:
        raise NotImplementedError

    def _update_progress(self, scene: TabletopScene) -> None:
        pass

    def _success(self, scene: TabletopScene) -> bool:
        raise NotImplementedError

    def _reach_target(self, scene: TabletopScene):
        return None

    def _progress_reward(self, scene: TabletopScene) -> float:
        return 0.0

    def _static_gate(self, scene: TabletopScene) -> bool:
        return False

    def _oracle(self) -> np.ndarray:
        raise NotImplementedError

    # -- engine hooks ----------------------------------------------------------

    def _phase_name(self) -> str:
        return self.schedule.phase_at(min(self._t, self.meta.timeout - 1))

    def current_phase(self) -> str:
        return self._phase_name()

    def _init_episode(self, rng):
        self.scene = self._build_scene(rng)
        self.scene.t = 0
        self.scene.latched.setdefault("touch_streak", np.zeros(self._n_objects, dtype=np.int64))
        self._visibility(self.scene, self._phase_name())

    def _apply(self, action):
        scene = self.scene
        scene_step(scene, action)
        scene.t = self._t + 1
        self._visibility(scene, self.schedule.phase_at(min(scene.t, self.meta.timeout - 1)))
        self._track_touches(scene)
        self._update_progress(scene)
        success = bool(self._success(scene))
        failed = bool(scene.latched.get("failed", False))
        terminated = success or failed
        if self.config.reward_mode == "sparse":
            reward = 1.0 if success else 0.0
        elif failed:
            reward = 0.0
        else:
            reward = self._dense_reward(scene, success)
        return reward, terminated, False, success

    def _track_touches(self, scene: TabletopScene):
        streak = scene.latched["touch_streak"]
        for i in range(scene.n_objects):
            streak[i] = streak[i] + 1 if scene.contacts[i] else 0

    def registered_touch(self, scene: TabletopScene, idx: int) -> bool:
        """A touch registers once, when contact has been held for exactly
        the sustained-contact requirement."""
        return int(scene.latched["touch_streak"][idx]) == TOUCH_STEPS

    def _dense_reward(self, scene: TabletopScene, success: bool) -> float:
        # shaping terms are averaged over the episode budget so that their
        # episode-long sum stays below the success bonus: finishing always
        # beats loitering next to the goal
        shaping = self._progress_reward(scene)
        target = self._reach_target(scene)
        if target is not None:
            d = math.hypot(scene.gx - target[0], scene.gy - target[1])
            shaping += 1.0 - math.tanh(REACH_GAIN * d)
        if self._static_gate(scene):
            shaping += 1.0 - math.tanh(STATIC_GAIN * scene.gripper_speed)
        reward = shaping / self.meta.timeout
        if success:
            reward += SUCCESS_BONUS
        return reward

    # -- observation composition ---------------------------------------------

    def _proprio(self, out: np.ndarray):
        s = self.scene
        out[0] = s.gx
        out[1] = s.gy
        out[2] = s.gangle
        out[3] = s.grip
        out[4] = s.gvx
        out[5] = s.gvy
        out[6] = s.gangular
        out[7] = s.grip_rate

    def _object_block(self, out: np.ndarray, i: int):
        s = self.scene
        out[0] = 1.0
        out[1] = s.obj_x[i]
        out[2] = s.obj_y[i]
        out[3] = math.cos(s.obj_angle[i])
        out[4] = math.sin(s.obj_angle[i])
        out[5] = s.obj_radius[i]
        out[6 + int(s.obj_color[i])] = 1.0
        out[6 + len(PALETTE) + int(s.obj_shape[i])] = 1.0

    def _vector_obs(self, include_hidden: bool, include_oracle: bool) -> np.ndarray:
        dim = self._state_dim if include_oracle else self._masked_dim
        buf = self._vec_buf[:dim]
        buf[:] = 0.0
        self._proprio(buf[:PROPRIO_DIM])
        off = PROPRIO_DIM
        visible = self.scene.obj_visible
        for i in range(self._n_objects):
            if include_hidden or visible[i]:
                self._object_block(buf[off:off + OBJECT_FEATURE_DIM], i)
                buf[off] = 1.0 if visible[i] else 0.0
            off += OBJECT_FEATURE_DIM
        prompt = self._prompt()
        if prompt is not None:
            buf[off:off + prompt.shape[0]] = prompt
            off += prompt.shape[0]
        if include_oracle:
            oracle = self._oracle()
            buf[off:off + oracle.shape[0]] = oracle
        return buf.copy()

    def masked_vector(self) -> np.ndarray:
        return self._vector_obs(include_hidden=False, include_oracle=False)

    def state_vector(self) -> np.ndarray:
        return self._vector_obs(include_hidden=True, include_oracle=True)

    def _compose_obs(self):
        mode = self.config.observation_mode
        if mode == "masked":
            return self.masked_vector()
        if mode == "state":
            return self.state_vector()
        raster = render_pair(self.scene)
        if mode == "rgb":
            prompt = self._prompt()
            if prompt is not None:
                return {"rgb": raster, "prompt": prompt.copy()}
            return raster
        return {"vector": self.masked_vector(), "rgb": raster}

    # helpers shared by subclasses

    @staticmethod
    def gripper_static(scene: TabletopScene) -> bool:
        return scene.gripper_speed < GRIPPER_STATIC_SPEED
