"""Velocity-only control tasks.

Position information is withheld from the observation, so the agent must
integrate velocities over time to recover it.  Hidden dynamics use the
conventional benchmark constants with a semi-implicit Euler update
(velocities first, then positions with the fresh velocities).  The noisy
variants add Gaussian observation noise from a per-episode tape; sigma=0
takes the exact clean code path.
"""

from __future__ import annotations

import math

import numpy as np

from ..spaces import Box, Discrete
from ..types import EnvConfig, TaskMeta
from .base import DiagnosticEnv, require

# cart-pole constants (the conventional benchmark values)
GRAVITY = 9.8
CART_MASS = 1.0
POLE_MASS = 0.1
TOTAL_MASS = CART_MASS + POLE_MASS
POLE_HALF_LENGTH = 0.5
POLE_MASS_LENGTH = POLE_MASS * POLE_HALF_LENGTH
FORCE_MAG = 10.0
CARTPOLE_DT = 0.02
ANGLE_LIMIT = 12 * 2 * math.pi / 360
POSITION_LIMIT = 2.4

# pendulum constants (classic swing-up values)
PEND_GRAVITY = 10.0
PEND_MASS = 1.0
PEND_LENGTH = 1.0
PEND_DT = 0.05
PEND_MAX_SPEED = 8.0
PEND_MAX_TORQUE = 2.0


def cartpole_derivatives(x_dot, theta, theta_dot, force):
    """Accelerations (x_ddot, theta_ddot) for the cart-pole."""
    cos_t = math.cos(theta)
    sin_t = math.sin(theta)
    temp = (force + POLE_MASS_LENGTH * theta_dot * theta_dot * sin_t) / TOTAL_MASS
    theta_acc = (GRAVITY * sin_t - cos_t * temp) / (
        POLE_HALF_LENGTH * (4.0 / 3.0 - POLE_MASS * cos_t * cos_t / TOTAL_MASS))
    x_acc = temp - POLE_MASS_LENGTH * theta_acc * cos_t / TOTAL_MASS
    return x_acc, theta_acc


def cartpole_step(state, force):
    """One semi-implicit Euler update of (x, x_dot, theta, theta_dot)."""
    x, x_dot, theta, theta_dot = state
    x_acc, theta_acc = cartpole_derivatives(x_dot, theta, theta_dot, force)
    x_dot = x_dot + CARTPOLE_DT * x_acc
    x = x + CARTPOLE_DT * x_dot
    theta_dot = theta_dot + CARTPOLE_DT * theta_acc
    theta = theta + CARTPOLE_DT * theta_dot
    return (x, x_dot, theta, theta_dot)


def angle_normalize(theta: float) -> float:
    return ((theta + math.pi) % (2 * math.pi)) - math.pi


def pendulum_step(state, torque):
    """One semi-implicit Euler update of (theta, theta_dot)."""
    theta, theta_dot = state
    theta_acc = (3.0 * PEND_GRAVITY / (2.0 * PEND_LENGTH) * math.sin(theta)
                 + 3.0 / (PEND_MASS * PEND_LENGTH * PEND_LENGTH) * torque)
    theta_dot = theta_dot + PEND_DT * theta_acc
    theta_dot = max(-PEND_MAX_SPEED, min(PEND_MAX_SPEED, theta_dot))
    theta = theta + PEND_DT * theta_dot
    return (theta, theta_dot)


class StatelessCartpoleEnv(DiagnosticEnv):
    """Balance the pole observing only (cart velocity, pole velocity)."""

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict):
        self.sigma = float(params["noise_sigma"])
        require(self.sigma >= 0.0, "noise_sigma must be >= 0")
        self.limit = int(params["episode_limit"])
        super().__init__(config, meta)
        self.observation_space = Box(-np.inf, np.inf, (2,))
        self.action_space = Discrete(2)

    def _init_episode(self, rng):
        self.state = tuple(rng.uniform(-0.05, 0.05, size=4))
        if self.sigma > 0.0:
            self._noise = rng.standard_normal((self.limit + 1, 2)) * self.sigma
        self._obs = np.zeros(2, dtype=np.float32)

    def _observe(self):
        obs = self._obs
        obs[0] = self.state[1]
        obs[1] = self.state[3]
        if self.sigma > 0.0:
            obs += self._noise[self._t].astype(np.float32)
        return obs

    def _apply(self, action):
        force = FORCE_MAG if action == 1 else -FORCE_MAG
        self.state = cartpole_step(self.state, force)
        x, _, theta, _ = self.state
        fell = abs(theta) > ANGLE_LIMIT or abs(x) > POSITION_LIMIT
        alive_to_limit = (not fell) and (self._t + 1 >= self.limit)
        return 1.0, fell, False, alive_to_limit

    def _oracle(self):
        return np.float32([self.state[0], self.state[2]])


def describe_stateless_cartpole(mode: str, params: dict, noisy: bool) -> TaskMeta:
    return TaskMeta(
        task_id="NoisyStatelessCartpole" if noisy else "StatelessCartpole",
        memory_types=("Sequential",),
        correlation_horizon=2,
        timeout=int(params["episode_limit"]),
        modes=("default",),
        oracle_info_schema=(("cart_position", 1), ("pole_angle", 1)),
        reward_modes=("dense",),
    )


class StatelessPendulumEnv(DiagnosticEnv):
    """Swing the pendulum upright observing only its angular velocity."""

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict):
        self.sigma = float(params["noise_sigma"])
        require(self.sigma >= 0.0, "noise_sigma must be >= 0")
        self.limit = int(params["episode_limit"])
        super().__init__(config, meta)
        self.observation_space = Box(-PEND_MAX_SPEED, PEND_MAX_SPEED, (1,))
        self.action_space = Box(-PEND_MAX_TORQUE, PEND_MAX_TORQUE, (1,))

    def _init_episode(self, rng):
        self.state = (float(rng.uniform(-math.pi, math.pi)), float(rng.uniform(-1.0, 1.0)))
        if self.sigma > 0.0:
            self._noise = rng.standard_normal((self.limit + 1, 1)) * self.sigma
        self._obs = np.zeros(1, dtype=np.float32)

    def _observe(self):
        obs = self._obs
        obs[0] = self.state[1]
        if self.sigma > 0.0:
            obs += self._noise[self._t].astype(np.float32)
        return obs

    def _apply(self, action):
        torque = float(action[0])
        theta, theta_dot = self.state
        angle = angle_normalize(theta)
        cost = angle * angle + 0.1 * theta_dot * theta_dot + 0.001 * torque * torque
        self.state = pendulum_step(self.state, torque)
        upright = abs(angle_normalize(self.state[0])) <= 0.2
        return -cost, False, False, upright

    def _oracle(self):
        return np.float32([angle_normalize(self.state[0])])


def describe_stateless_pendulum(mode: str, params: dict, noisy: bool) -> TaskMeta:
    return TaskMeta(
        task_id="NoisyStatelessPendulum" if noisy else "StatelessPendulum",
        memory_types=("Sequential",),
        correlation_horizon=2,
        timeout=int(params["episode_limit"]),
        modes=("default",),
        oracle_info_schema=(("pendulum_angle", 1),),
        reward_modes=("dense",),
        notes="success means momentarily within 0.2 rad of upright",
    )


class MultiarmedBanditEnv(DiagnosticEnv):
    """Episodic bandit: arm means are resampled every reset.

    Observation is the previous pull's outcome; per-pull payoffs are
    Bernoulli draws fixed at reset, so a replayed action sequence earns an
    identical reward stream.
    """

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict):
        self.arms = int(params["num_arms"])
        self.length = int(params["episode_length"])
        require(self.arms >= 2, "num_arms must be >= 2")
        require(self.length >= 1, "episode_length must be >= 1")
        super().__init__(config, meta)
        self.observation_space = Box(0.0, 1.0, (2 + self.arms,))
        self.action_space = Discrete(self.arms)

    def _init_episode(self, rng):
        self.means = rng.uniform(0.0, 1.0, size=self.arms)
        self.payoffs = (rng.uniform(0.0, 1.0, size=(self.length, self.arms))
                        < self.means).astype(np.float32)
        self.best_arm = int(np.argmax(self.means))
        self.best_pulls = 0
        self._obs = np.zeros(2 + self.arms, dtype=np.float32)

    def _observe(self):
        return self._obs

    def _apply(self, action):
        reward = float(self.payoffs[self._t, action])
        if action == self.best_arm:
            self.best_pulls += 1
        self._obs[:] = 0.0
        self._obs[0] = reward
        self._obs[1] = 1.0
        self._obs[2 + action] = 1.0
        # success: mostly exploiting the best arm so far
        success = self.best_pulls * 2 > (self._t + 1)
        return reward, False, False, success

    def _oracle(self):
        return self.means.astype(np.float32)


def describe_bandit(mode: str, params: dict) -> TaskMeta:
    return TaskMeta(
        task_id="MultiarmedBandit",
        memory_types=("Object", "Capacity"),
        correlation_horizon=int(params["num_arms"]),
        timeout=int(params["episode_length"]),
        modes=("default",),
        oracle_info_schema=(("arm_means", int(params["num_arms"])),),
        reward_modes=("dense",),
        notes="10 arms over 100 pulls is a project default",
    )
