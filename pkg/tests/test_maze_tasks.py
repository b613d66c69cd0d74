"""Corridor and maze tasks: cue hiding, shortest paths, exploration."""

import numpy as np

import memsuite as ms
from memsuite.diagnostics.mazes import DOWN, LEFT, RIGHT, UP

from conftest import make_env


# -- PassiveTMaze -------------------------------------------------------------

def test_tmaze_minimal_corridor_correct_choice():
    env = make_env("PassiveTMaze", task_params={"corridor_length": 1})
    obs, _ = env.reset(seed=0)
    cue = obs[2]
    assert cue in (-1.0, 1.0)
    env.step(RIGHT)
    r = env.step(UP if cue > 0 else DOWN)
    assert r.reward == 1.0 and r.terminated and r.info["success"]


def test_tmaze_wrong_choice_scores_zero():
    env = make_env("PassiveTMaze", task_params={"corridor_length": 1})
    obs, _ = env.reset(seed=0)
    cue = obs[2]
    env.step(RIGHT)
    r = env.step(DOWN if cue > 0 else UP)
    assert r.reward == 0.0 and r.terminated and not r.info["success"]


def test_tmaze_cue_absent_after_step_zero():
    # byte-equality of the post-cue observation stream across both goals
    streams = {}
    env = make_env("PassiveTMaze", task_params={"corridor_length": 4})
    seed = 0
    while len(streams) < 2 and seed < 60:
        obs, _ = env.reset(seed=seed)
        side = int(env.goal_side)
        if side not in streams:
            chunks = []
            for _ in range(4):
                chunks.append(env.step(RIGHT).observation.tobytes())
            streams[side] = b"".join(chunks)
        seed += 1
    assert streams[1] == streams[-1]


def test_tmaze_walls_block_without_penalty():
    env = make_env("PassiveTMaze", task_params={"corridor_length": 3})
    env.reset(seed=1)
    r = env.step(LEFT)  # at x=0 already
    assert r.reward == 0.0 and env.x == 0 and not r.terminated
    r = env.step(UP)    # not at the junction: blocked
    assert env.y == 0 and not r.terminated


def bfs_steps_to_decision(length):
    """Shortest path from cue cell to the junction plus the choice step."""
    # corridor is a line graph: BFS distance from x=0 to x=length is length
    frontier, seen, dist = [0], {0}, 0
    while frontier:
        if length in frontier:
            break
        nxt = []
        for x in frontier:
            for nx in (x - 1, x + 1):
                if 0 <= nx <= length and nx not in seen:
                    seen.add(nx)
                    nxt.append(nx)
        frontier = nxt
        dist += 1
    return dist + 1


def test_tmaze_correlation_horizon_matches_bfs():
    for length in (1, 4, 10):
        meta = ms.task_meta("PassiveTMaze", task_params={"corridor_length": length})
        assert meta.correlation_horizon == bfs_steps_to_decision(length) == length + 1


# -- MinigridMemory ------------------------------------------------------------

def test_minigrid_memory_reward_formula_exact():
    env = make_env("MinigridMemory", task_params={"corridor_length": 4, "episode_limit": 100})
    env.reset(seed=19)
    # walk to the cue room, read the cue, walk to the junction, turn correctly
    while env.x > 0:
        env.step(LEFT)
    cue = env.cue
    while env.x < env.length:
        env.step(RIGHT)
    up_obj = cue if env.match_side == 1 else 1 - cue
    r = env.step(UP if up_obj == cue else DOWN)
    t = r.info["elapsed_steps"]
    assert r.terminated and r.info["success"]
    assert r.reward == 1.0 - 0.9 * (t / 100.0)


def test_minigrid_memory_success_at_t30_is_073():
    # the normative formula value: success at t=30 with T=100 pays 0.73
    assert abs((1.0 - 0.9 * (30 / 100)) - 0.73) < 1e-12


def test_minigrid_memory_cue_visible_only_in_room():
    env = make_env("MinigridMemory")
    obs, _ = env.reset(seed=3)
    assert obs[1] == 0.0 and obs[2] == 0.0  # spawned inside the corridor
    while env.x > 0:
        r = env.step(LEFT)
    assert r.observation[1 + env.cue] == 1.0
    r = env.step(RIGHT)
    assert r.observation[1] == 0.0 and r.observation[2] == 0.0


# -- PassiveVisualMatch -----------------------------------------------------------

def test_passive_visual_match_correct_pad():
    env = make_env("PassiveVisualMatch")
    obs, _ = env.reset(seed=5)
    target = int(np.argmax(obs[2:5]))
    for _ in range(10):
        env.step(LEFT if env.x > 0 else RIGHT)
    pad = int(np.flatnonzero(env.pad_colors == target)[0])
    while env.x != pad:
        env.step(LEFT if env.x > pad else RIGHT)
    r = env.step(UP)
    assert r.reward == 1.0 and r.terminated and r.info["success"]


def test_passive_visual_match_wrong_pad_scores_zero():
    env = make_env("PassiveVisualMatch")
    obs, _ = env.reset(seed=5)
    target = int(np.argmax(obs[2:5]))
    for _ in range(10):
        env.step(LEFT if env.x > 0 else RIGHT)
    wrong = next(p for p in range(3) if int(env.pad_colors[p]) != target)
    while env.x != wrong:
        env.step(LEFT if env.x > wrong else RIGHT)
    r = env.step(UP)
    assert r.reward == 0.0 and r.terminated and not r.info["success"]


def test_passive_visual_match_pads_locked_before_selection():
    env = make_env("PassiveVisualMatch")
    env.reset(seed=5)
    r = env.step(UP)  # selection has not started: no pad entry
    assert env.y == 0 and not r.terminated


# -- Labyrinth ---------------------------------------------------------------------

def _solve_maze(env):
    """Right-hand-rule-free BFS over the wall structure (independent check)."""
    from collections import deque

    size = env.size
    start, goal = (0, 0), env.exit
    prev = {start: None}
    queue = deque([start])
    deltas = {0: (-1, 0), 1: (1, 0), 2: (0, -1), 3: (0, 1)}
    while queue:
        cell = queue.popleft()
        if cell == goal:
            break
        r, c = cell
        for d, (dr, dc) in deltas.items():
            if not env.walls[r, c, d]:
                nxt = (r + dr, c + dc)
                if nxt not in prev:
                    prev[nxt] = (cell, d)
                    queue.append(nxt)
    path = []
    cell = goal
    while prev[cell] is not None:
        cell, d = prev[cell]
        path.append(d)
    return list(reversed(path))


def test_labyrinth_escape_solvable_and_pays_once():
    env = make_env("LabyrinthEscape")
    env.reset(seed=21)
    moves = _solve_maze(env)
    direction_to_action = {0: UP, 1: DOWN, 2: LEFT, 3: RIGHT}
    total = 0.0
    for d in moves:
        r = env.step(direction_to_action[d])
        total += r.reward
    assert r.terminated and r.info["success"] and total == 1.0


def test_labyrinth_explore_new_cell_reward_accounting():
    env = make_env("LabyrinthExplore")
    env.reset(seed=2)
    cells = env.cells
    visited = {env.pos}
    total = 0.0
    rng = np.random.Generator(np.random.Philox(key=3))
    for _ in range(600):
        if env.finished:
            break
        r = env.step(int(rng.integers(0, 4)))
        expected = -0.001 + (1.0 / cells if env.pos not in visited else 0.0)
        visited.add(env.pos)
        assert abs(r.reward - expected) < 1e-12


def test_labyrinth_maze_fully_connected():
    env = make_env("LabyrinthEscape")
    for seed in range(5):
        env.reset(seed=seed)
        from collections import deque
        seen = {(0, 0)}
        queue = deque([(0, 0)])
        deltas = {0: (-1, 0), 1: (1, 0), 2: (0, -1), 3: (0, 1)}
        while queue:
            r, c = queue.popleft()
            for d, (dr, dc) in deltas.items():
                if not env.walls[r, c, d] and (r + dr, c + dc) not in seen:
                    seen.add((r + dr, c + dc))
                    queue.append((r + dr, c + dc))
        assert len(seen) == env.cells
