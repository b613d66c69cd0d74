"""Hidden-board tasks: shot feedback, mine clues, tile sequences, paths.

Boards are sampled at reset and never appear in observations; the agent
sees only per-step feedback (last shot result, adjacency digit, lit tiles,
its own position) and must reconstruct the board in memory.
"""

from __future__ import annotations

import numpy as np

from ..spaces import Box, Discrete
from ..types import EnvConfig, TaskMeta
from .base import DiagnosticEnv, one_hot, require


class BattleshipEnv(DiagnosticEnv):
    """Sink a hidden fleet from hit/miss feedback alone.

    Default board 8x8 with ships of sizes 5/4/3/2 placed axis-aligned and
    non-overlapping.  First-time hits pay +1/total_ship_cells, misses pay
    nothing, and re-targeting any previously shot cell costs -1/cells, so
    sweeping the board without repeats totals exactly +1.
    """

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict):
        self.size = int(params["board_size"])
        self.ship_sizes = tuple(int(s) for s in params["ship_sizes"])
        require(self.size >= max(self.ship_sizes, default=1), "board smaller than largest ship")
        require(len(self.ship_sizes) >= 1, "need at least one ship")
        self.cells = self.size * self.size
        self.ship_cells_total = sum(self.ship_sizes)
        super().__init__(config, meta)
        self.observation_space = Box(0.0, 1.0, (4,))
        self.action_space = Discrete(self.cells)

    def _init_episode(self, rng):
        board = np.zeros((self.size, self.size), dtype=bool)
        for length in self.ship_sizes:
            while True:
                horizontal = bool(rng.integers(0, 2))
                h, w = (1, length) if horizontal else (length, 1)
                row = int(rng.integers(0, self.size - h + 1))
                col = int(rng.integers(0, self.size - w + 1))
                patch = board[row:row + h, col:col + w]
                if not patch.any():
                    patch[:] = True
                    break
        self.board = board.ravel()
        self.shot = np.zeros(self.cells, dtype=bool)
        self.hits = 0
        self._obs = np.zeros(4, dtype=np.float32)

    def _observe(self):
        return self._obs

    def _apply(self, action):
        row, col = divmod(action, self.size)
        is_ship = bool(self.board[action])
        if self.shot[action]:
            reward = -1.0 / self.cells
        elif is_ship:
            reward = 1.0 / self.ship_cells_total
            self.hits += 1
        else:
            reward = 0.0
        self.shot[action] = True
        self._obs[0] = row / (self.size - 1)
        self._obs[1] = col / (self.size - 1)
        self._obs[2] = 1.0 if is_ship else 0.0
        self._obs[3] = 1.0
        done = self.hits == self.ship_cells_total
        return reward, done, False, done

    def _oracle(self):
        return np.concatenate([self.board, self.shot]).astype(np.float32)


def describe_battleship(mode: str, params: dict) -> TaskMeta:
    size = int(params["board_size"])
    return TaskMeta(
        task_id="Battleship",
        memory_types=("Spatial",),
        correlation_horizon=size * size,
        timeout=int(params["episode_limit"]),
        modes=("default",),
        oracle_info_schema=(("ship_cells", size * size), ("shot_cells", size * size)),
        reward_modes=("dense",),
        notes="fleet 5/4/3/2 on 8x8 is a project default",
    )


class MineSweeperEnv(DiagnosticEnv):
    """Clear all safe cells using adjacency digits from previous clicks.

    The observation is the last clicked cell plus its number of adjacent
    mines, never the board.  Newly revealed safe cells pay +1/safe_cells;
    clicking a mine pays -1 and ends the episode.
    """

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict):
        self.size = int(params["board_size"])
        self.mines = int(params["num_mines"])
        self.cells = self.size * self.size
        require(0 < self.mines < self.cells, "num_mines must be within the board")
        self.safe_cells = self.cells - self.mines
        super().__init__(config, meta)
        self.observation_space = Box(0.0, 1.0, (3 + 9,))
        self.action_space = Discrete(self.cells)

    def _init_episode(self, rng):
        mined = np.zeros(self.cells, dtype=bool)
        mined[rng.choice(self.cells, size=self.mines, replace=False)] = True
        self.mined = mined
        grid = mined.reshape(self.size, self.size).astype(np.int64)
        padded = np.pad(grid, 1)
        counts = sum(
            padded[1 + dr:1 + dr + self.size, 1 + dc:1 + dc + self.size]
            for dr in (-1, 0, 1) for dc in (-1, 0, 1) if (dr, dc) != (0, 0)
        )
        self.adjacent = counts.ravel()
        self.revealed = np.zeros(self.cells, dtype=bool)
        self._obs = np.zeros(12, dtype=np.float32)

    def _observe(self):
        return self._obs

    def _apply(self, action):
        row, col = divmod(action, self.size)
        self._obs[:] = 0.0
        self._obs[0] = row / (self.size - 1)
        self._obs[1] = col / (self.size - 1)
        self._obs[2] = 1.0
        self._obs[3 + int(self.adjacent[action])] = 1.0
        if self.mined[action]:
            return -1.0, True, False, False
        if self.revealed[action]:
            return 0.0, False, False, False
        self.revealed[action] = True
        done = int(self.revealed.sum()) == self.safe_cells
        return 1.0 / self.safe_cells, done, False, done

    def _oracle(self):
        return np.concatenate([self.mined, self.revealed]).astype(np.float32)


def describe_mine_sweeper(mode: str, params: dict) -> TaskMeta:
    size = int(params["board_size"])
    return TaskMeta(
        task_id="MineSweeper",
        memory_types=("Spatial",),
        correlation_horizon=size * size,
        timeout=int(params["episode_limit"]),
        modes=("default",),
        oracle_info_schema=(("mine_cells", size * size), ("revealed_cells", size * size)),
        reward_modes=("dense",),
        notes="8x8 board with 10 mines is a project default",
    )


class NumpadEnv(DiagnosticEnv):
    """Roll a ball over a tile grid, pressing a hidden adjacent-tile sequence.

    Arriving on the next tile of the sequence lights it and pays +1; any
    other arrival clears all lights (a fresh arrival on the first tile
    restarts progress immediately).  Completing the sequence ends the
    episode, so perfect play earns exactly the sequence length.
    """

    MOVES = ((-1, 0), (1, 0), (0, -1), (0, 1))  # up, down, left, right

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict):
        self.size = int(params["grid_size"])
        self.seq_len = int(params["sequence_length"])
        require(self.size >= 2, "grid_size must be >= 2")
        require(1 <= self.seq_len <= self.size * self.size, "sequence_length out of range")
        self.cells = self.size * self.size
        super().__init__(config, meta)
        self.observation_space = Box(0.0, 1.0, (2 * self.cells,))
        self.action_space = Discrete(4)

    def _init_episode(self, rng):
        # self-avoiding random walk over 4-neighbour tiles
        while True:
            path = [int(rng.integers(0, self.cells))]
            for _ in range(self.seq_len - 1):
                r, c = divmod(path[-1], self.size)
                options = []
                for dr, dc in self.MOVES:
                    nr, nc = r + dr, c + dc
                    if 0 <= nr < self.size and 0 <= nc < self.size:
                        cell = nr * self.size + nc
                        if cell not in path:
                            options.append(cell)
                if not options:
                    break
                path.append(int(options[rng.integers(0, len(options))]))
            if len(path) == self.seq_len:
                break
        self.sequence = path
        self.ball = int(rng.integers(0, self.cells))
        self.progress = 0
        self._obs = np.zeros(2 * self.cells, dtype=np.float32)

    def _observe(self):
        obs = self._obs
        obs[:] = 0.0
        obs[self.ball] = 1.0
        for tile in self.sequence[:self.progress]:
            obs[self.cells + tile] = 1.0
        return obs

    def _apply(self, action):
        r, c = divmod(self.ball, self.size)
        dr, dc = self.MOVES[action]
        nr, nc = r + dr, c + dc
        if not (0 <= nr < self.size and 0 <= nc < self.size):
            return 0.0, False, False, False  # blocked: stay, no press
        arrived = nr * self.size + nc
        self.ball = arrived
        if arrived == self.sequence[self.progress]:
            self.progress += 1
            reward = 1.0
        elif arrived == self.sequence[0]:
            # wrong tile clears progress, but the first tile immediately
            # restarts it and counts as a fresh correct press
            self.progress = 1
            reward = 1.0
        else:
            self.progress = 0
            reward = 0.0
        done = self.progress == self.seq_len
        return reward, done, False, done

    def _oracle(self):
        return np.asarray(self.sequence, dtype=np.float32)


def describe_numpad(mode: str, params: dict) -> TaskMeta:
    n = int(params["sequence_length"])
    return TaskMeta(
        task_id="Numpad",
        memory_types=("Sequential",),
        correlation_horizon=2 * n,
        timeout=int(params["episode_limit"]),
        modes=("default",),
        oracle_info_schema=(("sequence", n),),
        reward_modes=("dense",),
        notes="3x3 grid, sequence length 3, limit 100 are project defaults",
    )


class MortarMayhemEnv(DiagnosticEnv):
    """Watch a command sequence, then execute it move for move.

    Commands are shown one per step; during execution each correctly
    executed command pays +0.1 and the first error ends the episode.
    """

    COMMANDS = 5  # up, down, left, right, stay

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict):
        self.n_commands = int(params["num_commands"])
        require(self.n_commands >= 1, "num_commands must be >= 1")
        super().__init__(config, meta)
        self.observation_space = Box(0.0, 1.0, (2 + self.COMMANDS,))
        self.action_space = Discrete(self.COMMANDS)

    def _init_episode(self, rng):
        self.commands = rng.integers(0, self.COMMANDS, size=self.n_commands)
        self._obs = np.zeros(2 + self.COMMANDS, dtype=np.float32)

    def _observe(self):
        obs = self._obs
        obs[:] = 0.0
        t, n = self._t, self.n_commands
        if t < n:
            obs[0] = 1.0
            obs[1 + int(self.commands[t])] = 1.0
        elif t < 2 * n:
            obs[-1] = (t - n) / n
        return obs

    def _apply(self, action):
        t, n = self._t, self.n_commands
        if t < n:
            return 0.0, False, False, False
        if action != int(self.commands[t - n]):
            return 0.0, True, False, False
        done = t == 2 * n - 1
        return 0.1, done, False, done

    def _oracle(self):
        return self.commands.astype(np.float32)

    def _phase_name(self):
        return "observation" if self._t < self.n_commands else "selection"


def describe_mortar_mayhem(mode: str, params: dict) -> TaskMeta:
    n = int(params["num_commands"])
    return TaskMeta(
        task_id="MortarMayhem",
        memory_types=("Capacity", "Sequential"),
        correlation_horizon=n + 1,
        timeout=2 * n,
        modes=("default",),
        oracle_info_schema=(("commands", n),),
        reward_modes=("dense",),
        notes="symbolic command display instead of a rendered arena",
    )


class MysteryPathEnv(DiagnosticEnv):
    """Traverse an invisible path; stepping off teleports back to the start.

    The path is a self-avoiding walk from the left edge to the right edge.
    Each first visit to an on-path tile pays +0.1; reaching the final tile
    ends the episode.
    """

    MOVES = ((-1, 0), (1, 0), (0, -1), (0, 1))

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict):
        self.size = int(params["grid_size"])
        require(self.size >= 3, "grid_size must be >= 3")
        super().__init__(config, meta)
        self.observation_space = Box(0.0, 1.0, (4,))
        self.action_space = Discrete(4)

    def _init_episode(self, rng):
        size = self.size
        while True:
            start = (int(rng.integers(0, size)), 0)
            path = [start]
            seen = {start}
            pos = start
            while pos[1] != size - 1:
                options = []
                for dr, dc in self.MOVES:
                    cell = (pos[0] + dr, pos[1] + dc)
                    if 0 <= cell[0] < size and 0 <= cell[1] < size and cell not in seen:
                        options.append(cell)
                if not options:
                    break
                pos = options[int(rng.integers(0, len(options)))]
                path.append(pos)
                seen.add(pos)
            if pos[1] == size - 1:
                break
        self.path = path
        self.on_path = seen
        self.goal = path[-1]
        self.agent = path[0]
        self.start = path[0]
        self.visited = {path[0]}
        self.fell_off = False
        self._obs = np.zeros(4, dtype=np.float32)

    def _observe(self):
        obs = self._obs
        obs[0] = self.agent[0] / (self.size - 1)
        obs[1] = self.agent[1] / (self.size - 1)
        obs[2] = 1.0 if self.fell_off else 0.0
        obs[3] = 1.0 if self.agent == self.start else 0.0
        return obs

    def _apply(self, action):
        dr, dc = self.MOVES[action]
        cell = (self.agent[0] + dr, self.agent[1] + dc)
        self.fell_off = False
        if not (0 <= cell[0] < self.size and 0 <= cell[1] < self.size):
            return 0.0, False, False, False
        if cell not in self.on_path:
            self.agent = self.start
            self.fell_off = True
            return 0.0, False, False, False
        self.agent = cell
        reward = 0.0
        if cell not in self.visited:
            self.visited.add(cell)
            reward = 0.1
        done = cell == self.goal
        return reward, done, False, done

    def _oracle(self):
        mask = np.zeros(self.size * self.size, dtype=np.float32)
        for r, c in self.on_path:
            mask[r * self.size + c] = 1.0
        return mask


def describe_mystery_path(mode: str, params: dict) -> TaskMeta:
    size = int(params["grid_size"])
    return TaskMeta(
        task_id="MysteryPath",
        memory_types=("Capacity", "Spatial"),
        correlation_horizon=2 * size,
        timeout=int(params["episode_limit"]),
        modes=("default",),
        oracle_info_schema=(("path_cells", size * size),),
        reward_modes=("dense",),
        notes="symbolic coordinates instead of a rendered arena",
    )
