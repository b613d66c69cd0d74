"""Corridor and maze tasks: cue-at-start navigation and exploration.

The T-maze family shows decision-critical information only at specific
places or times; the labyrinth family hides the layout and meters out
wall information cell by cell.
"""

from __future__ import annotations

import numpy as np

from ..spaces import Box, Discrete
from ..types import EnvConfig, TaskMeta
from .base import DiagnosticEnv, require

# action order shared by the gridworld tasks
LEFT, RIGHT, UP, DOWN = 0, 1, 2, 3


class PassiveTMazeEnv(DiagnosticEnv):
    """Corridor to a junction; the goal side is cued only at step 0.

    The agent walks a corridor of ``corridor_length`` cells and must turn
    toward the cued arm at the junction.  Walls block movement silently.
    Reward is 1.0 for entering the cued arm, 0 for the other; either choice
    ends the episode.
    """

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict):
        self.length = int(params["corridor_length"])
        require(self.length >= 1, "corridor_length must be >= 1")
        self.slack = int(params["timeout_slack"])
        super().__init__(config, meta)
        self.observation_space = Box(-1.0, 1.0, (3,))
        self.action_space = Discrete(4)

    def _init_episode(self, rng):
        self.goal_side = 1 if rng.integers(0, 2) else -1
        self.x = 0
        self.y = 0
        self._obs = np.zeros(3, dtype=np.float32)

    def _observe(self):
        obs = self._obs
        obs[0] = self.x / self.length
        obs[1] = float(self.y)
        obs[2] = float(self.goal_side) if self._t == 0 else 0.0
        return obs

    def _apply(self, action):
        x, y = self.x, self.y
        if action == LEFT and y == 0 and x > 0:
            x -= 1
        elif action == RIGHT and y == 0 and x < self.length:
            x += 1
        elif action == UP and x == self.length and y == 0:
            y = 1
        elif action == DOWN and x == self.length and y == 0:
            y = -1
        self.x, self.y = x, y
        if y != 0:
            won = y == self.goal_side
            return (1.0 if won else 0.0), True, False, won
        return 0.0, False, False, False

    def _oracle(self):
        return np.float32([self.goal_side])


def describe_passive_tmaze(mode: str, params: dict) -> TaskMeta:
    length = int(params["corridor_length"])
    return TaskMeta(
        task_id="PassiveTMaze",
        memory_types=("Object",),
        correlation_horizon=length + 1,
        timeout=length + 2 * int(params["timeout_slack"]),
        modes=("default",),
        oracle_info_schema=(("goal_side", 1),),
        reward_modes=("dense",),
    )


class MinigridMemoryEnv(DiagnosticEnv):
    """T-maze with an object cue room at the corridor start.

    The agent spawns somewhere inside the corridor, must walk back to the
    room to see which of two objects it holds, then choose the junction arm
    holding the identical object.  A correct choice at elapsed step t pays
    exactly ``1 - 0.9 * t / T``; anything else pays 0.
    """

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict):
        self.length = int(params["corridor_length"])
        require(self.length >= 2, "corridor_length must be >= 2")
        self.limit = int(params["episode_limit"])
        super().__init__(config, meta)
        self.observation_space = Box(0.0, 1.0, (6,))
        self.action_space = Discrete(4)

    def _init_episode(self, rng):
        self.cue = int(rng.integers(0, 2))
        self.match_side = 1 if rng.integers(0, 2) else -1
        self.x = int(rng.integers(1, self.length))
        self.y = 0
        self._obs = np.zeros(6, dtype=np.float32)

    def _observe(self):
        obs = self._obs
        obs[:] = 0.0
        obs[0] = self.x / self.length
        if self.x == 0:
            obs[1 + self.cue] = 1.0
        if self.x == self.length:
            up_obj = self.cue if self.match_side == 1 else 1 - self.cue
            obs[3 + up_obj] = 1.0
            obs[5] = 1.0
        return obs

    def _apply(self, action):
        x, y = self.x, self.y
        if action == LEFT and y == 0 and x > 0:
            x -= 1
        elif action == RIGHT and y == 0 and x < self.length:
            x += 1
        elif action == UP and x == self.length and y == 0:
            y = 1
        elif action == DOWN and x == self.length and y == 0:
            y = -1
        self.x, self.y = x, y
        if y != 0:
            won = y == self.match_side
            reward = (1.0 - 0.9 * ((self._t + 1) / self.limit)) if won else 0.0
            return reward, True, False, won
        return 0.0, False, False, False

    def _oracle(self):
        return np.float32([self.cue, self.match_side])


def describe_minigrid_memory(mode: str, params: dict) -> TaskMeta:
    length = int(params["corridor_length"])
    return TaskMeta(
        task_id="MinigridMemory",
        memory_types=("Object",),
        correlation_horizon=length + 2,
        timeout=int(params["episode_limit"]),
        modes=("default",),
        oracle_info_schema=(("cue_object", 1), ("matching_side", 1)),
        reward_modes=("dense",),
        notes="corridor length 7 is a project default; the source leaves it open",
    )


class PassiveVisualMatchEnv(DiagnosticEnv):
    """Remember a shown colour, then step on the matching ground pad.

    The target colour is displayed for the first five steps, disappears for
    five, and then coloured pads appear one row above the agent; stepping on
    any pad ends the episode, paying 1.0 only for the colour match.
    """

    SHOW, DELAY = 5, 5

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict):
        self.colors = int(params["num_colors"])
        require(2 <= self.colors <= 9, "num_colors must be in [2, 9]")
        super().__init__(config, meta)
        k = self.colors
        self.observation_space = Box(0.0, 1.0, (2 + k + k * k,))
        self.action_space = Discrete(4)

    def _init_episode(self, rng):
        k = self.colors
        self.target = int(rng.integers(0, k))
        self.pad_colors = rng.permutation(k)
        self.x = k // 2
        self.y = 0
        self._obs = np.zeros(2 + k + k * k, dtype=np.float32)

    def _selection_started(self):
        return self._t >= self.SHOW + self.DELAY

    def _observe(self):
        k = self.colors
        obs = self._obs
        obs[:] = 0.0
        obs[0] = self.x / (k - 1)
        obs[1] = float(self.y)
        if self._t < self.SHOW:
            obs[2 + self.target] = 1.0
        if self._selection_started():
            for pad in range(k):
                obs[2 + k + pad * k + int(self.pad_colors[pad])] = 1.0
        return obs

    def _apply(self, action):
        if action == LEFT and self.x > 0:
            self.x -= 1
        elif action == RIGHT and self.x < self.colors - 1:
            self.x += 1
        elif action == UP and self._selection_started():
            self.y = 1
        if self.y == 1:
            won = int(self.pad_colors[self.x]) == self.target
            return (1.0 if won else 0.0), True, False, won
        return 0.0, False, False, False

    def _oracle(self):
        pad = int(np.flatnonzero(self.pad_colors == self.target)[0])
        return np.float32([self.target, pad])

    def _phase_name(self):
        if self._t < self.SHOW:
            return "observation"
        return "selection" if self._selection_started() else "delay"


def describe_passive_visual_match(mode: str, params: dict) -> TaskMeta:
    return TaskMeta(
        task_id="PassiveVisualMatch",
        memory_types=("Object",),
        correlation_horizon=PassiveVisualMatchEnv.DELAY + 1,
        timeout=int(params["episode_limit"]),
        modes=("default",),
        oracle_info_schema=(("target_color", 1), ("target_pad", 1)),
        reward_modes=("dense",),
        notes="grid analogue of the pixel task: pads on a single row",
    )


def _backtracker_maze(size: int, rng) -> np.ndarray:
    """Wall bitmask per cell (N, S, W, E), carved by recursive backtracking."""
    walls = np.full((size, size, 4), True)
    visited = np.zeros((size, size), dtype=bool)
    stack = [(int(rng.integers(0, size)), int(rng.integers(0, size)))]
    visited[stack[0]] = True
    deltas = {0: (-1, 0), 1: (1, 0), 2: (0, -1), 3: (0, 1)}  # N S W E
    opposite = {0: 1, 1: 0, 2: 3, 3: 2}
    while stack:
        r, c = stack[-1]
        options = []
        for d, (dr, dc) in deltas.items():
            nr, nc = r + dr, c + dc
            if 0 <= nr < size and 0 <= nc < size and not visited[nr, nc]:
                options.append((d, nr, nc))
        if not options:
            stack.pop()
            continue
        d, nr, nc = options[int(rng.integers(0, len(options)))]
        walls[r, c, d] = False
        walls[nr, nc, opposite[d]] = False
        visited[nr, nc] = True
        stack.append((nr, nc))
    return walls


class LabyrinthEnv(DiagnosticEnv):
    """Procedural maze, observed one cell at a time.

    Explore mode pays +1/cells for each newly visited cell and -0.001 per
    step; escape mode pays 1.0 only on reaching the exit in the far corner.
    """

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict, escape: bool):
        self.size = int(params["maze_size"])
        require(self.size >= 3, "maze_size must be >= 3")
        require(self.size % 2 == 1, "maze_size must be odd")
        self.escape = escape
        self.cells = self.size * self.size
        super().__init__(config, meta)
        self.observation_space = Box(0.0, 1.0, (6,))
        self.action_space = Discrete(4)

    def _init_episode(self, rng):
        self.walls = _backtracker_maze(self.size, rng)
        self.pos = (0, 0)
        self.exit = (self.size - 1, self.size - 1)
        self.visited = np.zeros((self.size, self.size), dtype=bool)
        self.visited[self.pos] = True
        self._obs = np.zeros(6, dtype=np.float32)

    def _observe(self):
        obs = self._obs
        r, c = self.pos
        obs[:4] = self.walls[r, c]
        obs[4] = r / (self.size - 1)
        obs[5] = c / (self.size - 1)
        return obs

    def _apply(self, action):
        # action order left/right/up/down mapped onto wall directions W/E/N/S
        direction = {LEFT: 2, RIGHT: 3, UP: 0, DOWN: 1}[action]
        r, c = self.pos
        if not self.walls[r, c, direction]:
            dr, dc = {0: (-1, 0), 1: (1, 0), 2: (0, -1), 3: (0, 1)}[direction]
            self.pos = (r + dr, c + dc)
        if self.escape:
            done = self.pos == self.exit
            return (1.0 if done else 0.0), done, False, done
        reward = -0.001
        if not self.visited[self.pos]:
            self.visited[self.pos] = True
            reward += 1.0 / self.cells
        done = bool(self.visited.all())
        return reward, done, False, done

    def _oracle(self):
        if self.escape:
            return np.float32([self.exit[0], self.exit[1]])
        return np.float32([float(self.visited.sum())])


def describe_labyrinth_explore(mode: str, params: dict) -> TaskMeta:
    size = int(params["maze_size"])
    return TaskMeta(
        task_id="LabyrinthExplore",
        memory_types=("Spatial",),
        correlation_horizon=size * size,
        timeout=4 * size * size,
        modes=("default",),
        oracle_info_schema=(("visited_count", 1),),
        reward_modes=("dense",),
        notes="maze carved by recursive backtracking from the episode seed",
    )


def describe_labyrinth_escape(mode: str, params: dict) -> TaskMeta:
    size = int(params["maze_size"])
    return TaskMeta(
        task_id="LabyrinthEscape",
        memory_types=("Spatial",),
        correlation_horizon=size * size,
        timeout=4 * size * size,
        modes=("default",),
        oracle_info_schema=(("exit_row", 1), ("exit_col", 1)),
        reward_modes=("dense",),
        notes="maze carved by recursive backtracking from the episode seed",
    )
