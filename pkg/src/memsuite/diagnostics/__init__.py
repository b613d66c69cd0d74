"""Diagnostic task catalog: registration and normative rows.

``CATALOG`` is the authoritative description of every diagnostic task:
observation/action layouts, reward and termination rules, the analytic
perfect-play return where one exists, and parameter defaults.  The
registration below makes each row constructible through the registry.
"""

from __future__ import annotations

from functools import partial

from ..errors import BadParam
from ..registry import TaskEntry, register
from .base import CatalogRow, DiagnosticEnv
from . import boards, cards, control, mazes, recall

__all__ = ["CATALOG", "DiagnosticEnv", "CatalogRow"]


CATALOG: dict[str, CatalogRow] = {
    "MemoryLength": CatalogRow(
        family="MemoryLength",
        memory_types=("Object",),
        obs_layout="[first_step_flag, step_index_or_query, context_bits...] (dim 2+B)",
        action_layout="discrete(2): 0 decodes -1, 1 decodes +1",
        reward_rule="+1 at the final step for recalling the queried context bit, else -1; 0 before",
        termination_rule="terminates after memory_length+1 steps",
        perfect_reward=1.0,
        params={"memory_length": 10, "num_bits": 1},
    ),
    "MemoryCards": CatalogRow(
        family="MemoryCards",
        memory_types=("Capacity",),
        obs_layout="[revealed value one-hot(P), removed mask(2P)]",
        action_layout="discrete(2P): position of the revealed card's partner",
        reward_rule="0 for a correct partner, -1 for any other guess",
        termination_rule="terminates when all pairs are removed; safety limit truncates",
        perfect_reward=0.0,
        params={"num_pairs": 5, "episode_limit": 200},
    ),
    "RepeatPrevious": CatalogRow(
        family="RepeatPrevious",
        memory_types=("Sequential", "Object"),
        obs_layout="one-hot(V) of the current value",
        action_layout="discrete(V)",
        reward_rule="+-1/(T-k) per scored step (t >= k); warmup steps score 0",
        termination_rule="truncates at episode_length",
        perfect_reward=1.0,
        params={"delay": 4, "num_values": 4, "episode_length": 52},
    ),
    "RepeatFirst": CatalogRow(
        family="RepeatFirst",
        memory_types=("Object",),
        obs_layout="[first_step_flag, one-hot(V) of current value]",
        action_layout="discrete(V)",
        reward_rule="+1/T per step whose action equals the step-0 value, else 0",
        termination_rule="truncates at episode_length",
        perfect_reward=1.0,
        params={"num_values": 4, "episode_length": 52},
    ),
    "CountRecall": CatalogRow(
        family="CountRecall",
        memory_types=("Object", "Capacity"),
        obs_layout="[next value one-hot(V), query value one-hot(V)]",
        action_layout="discrete(T+1): occurrence count",
        reward_rule="+1/T for the exact prior-occurrence count of the query, else 0",
        termination_rule="truncates at episode_length",
        perfect_reward=1.0,
        params={"num_values": 4, "episode_length": 52},
    ),
    "Autoencode": CatalogRow(
        family="Autoencode",
        memory_types=("Sequential",),
        obs_layout="[watch_flag, card one-hot(V)]",
        action_layout="discrete(V)",
        reward_rule="+1/D per correct card while replaying the watched deck in order",
        termination_rule="terminates after watch + replay (2D steps)",
        perfect_reward=1.0,
        params={"deck_size": 52, "num_values": 4},
    ),
    "HigherLower": CatalogRow(
        family="HigherLower",
        memory_types=("Object", "Sequential"),
        obs_layout="one-hot(13) of the reference rank",
        action_layout="discrete(2): higher / lower",
        reward_rule="+1/51 correct, -1/51 wrong, 0 on rank ties",
        termination_rule="terminates after 51 predictions",
        perfect_reward=None,  # depends on the dealt deck; checked against a counting oracle
        params={"num_decks": 1},
    ),
    "Concentration": CatalogRow(
        family="Concentration",
        memory_types=("Capacity",),
        obs_layout="per-position visible rank (0 hidden) + second-flip flag",
        action_layout="discrete(52): position to flip",
        reward_rule="+1 per rank-matched pair; matched cards never re-match",
        termination_rule="fixed episode of 104 flips (truncates)",
        perfect_reward=26.0,
        params={},
    ),
    "Battleship": CatalogRow(
        family="Battleship",
        memory_types=("Spatial",),
        obs_layout="[last shot row, col, hit flag, any-shot flag]",
        action_layout="discrete(64): cell to shoot",
        reward_rule="+1/14 first-time hit, 0 miss, -1/64 repeat shot",
        termination_rule="terminates when every ship cell is hit; limit truncates",
        perfect_reward=1.0,  # full sweep without repeats
        params={"board_size": 8, "ship_sizes": (5, 4, 3, 2), "episode_limit": 100},
    ),
    "MineSweeper": CatalogRow(
        family="MineSweeper",
        memory_types=("Spatial",),
        obs_layout="[last click row, col, clicked flag, adjacency one-hot(9)]",
        action_layout="discrete(64): cell to click",
        reward_rule="+1/54 per new safe cell; mine pays -1 and ends the episode",
        termination_rule="terminates on mine or full clear; limit truncates",
        perfect_reward=1.0,
        params={"board_size": 8, "num_mines": 10, "episode_limit": 120},
    ),
    "Numpad": CatalogRow(
        family="Numpad",
        memory_types=("Sequential",),
        obs_layout="[ball one-hot(N^2), lit mask(N^2)]",
        action_layout="discrete(4): roll direction",
        reward_rule="+1 per first press of each correct tile; wrong tiles clear progress",
        termination_rule="terminates when the sequence completes; limit truncates",
        perfect_reward=3.0,
        params={"grid_size": 3, "sequence_length": 3, "episode_limit": 100},
    ),
    "MortarMayhem": CatalogRow(
        family="MortarMayhem",
        memory_types=("Capacity", "Sequential"),
        obs_layout="[display_flag, command one-hot(5), execution round]",
        action_layout="discrete(5): up/down/left/right/stay",
        reward_rule="+0.1 per correctly executed command; first error ends the episode",
        termination_rule="terminates after the last command or on the first error",
        perfect_reward=0.5,
        params={"num_commands": 5},
    ),
    "MysteryPath": CatalogRow(
        family="MysteryPath",
        memory_types=("Capacity", "Spatial"),
        obs_layout="[row, col, fell_off flag, at_start flag]",
        action_layout="discrete(4): move direction",
        reward_rule="+0.1 per newly visited on-path tile; off-path teleports to start",
        termination_rule="terminates on reaching the path's end; limit truncates",
        perfect_reward=None,  # 0.1 * (path length - 1), layout dependent
        params={"grid_size": 7, "episode_limit": 100},
    ),
    "PassiveTMaze": CatalogRow(
        family="PassiveTMaze",
        memory_types=("Object",),
        obs_layout="[corridor progress, arm position, cue (step 0 only)]",
        action_layout="discrete(4): left/right/up/down",
        reward_rule="1.0 for entering the cued arm, 0 otherwise",
        termination_rule="terminates on an arm choice; limit truncates",
        perfect_reward=1.0,
        params={"corridor_length": 10, "timeout_slack": 10},
    ),
    "MinigridMemory": CatalogRow(
        family="MinigridMemory",
        memory_types=("Object",),
        obs_layout="[corridor progress, room object one-hot(2), junction object one-hot(2), junction flag]",
        action_layout="discrete(4): left/right/up/down",
        reward_rule="1 - 0.9*t/T on the correct junction turn, else 0",
        termination_rule="terminates on a junction choice; limit truncates",
        perfect_reward=None,  # depends on the decision step t
        params={"corridor_length": 7, "episode_limit": 100},
    ),
    "PassiveVisualMatch": CatalogRow(
        family="PassiveVisualMatch",
        memory_types=("Object",),
        obs_layout="[agent x, agent y, target one-hot(K) while shown, pad colours(K*K) in selection]",
        action_layout="discrete(4): move direction",
        reward_rule="1.0 for stepping on the pad matching the shown colour, 0 otherwise",
        termination_rule="terminates on stepping onto any pad; limit truncates",
        perfect_reward=1.0,
        params={"num_colors": 3, "episode_limit": 40},
    ),
    "StatelessCartpole": CatalogRow(
        family="StatelessCartpole",
        memory_types=("Sequential",),
        obs_layout="[cart velocity, pole angular velocity]",
        action_layout="discrete(2): push left / push right",
        reward_rule="+1 per step alive",
        termination_rule="terminates when |angle| > 12 deg or |x| > 2.4; truncates at 200",
        perfect_reward=200.0,
        params={"noise_sigma": 0.0, "episode_limit": 200},
    ),
    "NoisyStatelessCartpole": CatalogRow(
        family="NoisyStatelessCartpole",
        memory_types=("Sequential",),
        obs_layout="[cart velocity, pole angular velocity] + Gaussian(sigma)",
        action_layout="discrete(2): push left / push right",
        reward_rule="+1 per step alive",
        termination_rule="terminates when |angle| > 12 deg or |x| > 2.4; truncates at 200",
        perfect_reward=200.0,
        params={"noise_sigma": 0.1, "episode_limit": 200},
    ),
    "StatelessPendulum": CatalogRow(
        family="StatelessPendulum",
        memory_types=("Sequential",),
        obs_layout="[angular velocity]",
        action_layout="box(1): torque in [-2, 2]",
        reward_rule="-(angle^2 + 0.1*velocity^2 + 0.001*torque^2) per step",
        termination_rule="truncates at 200",
        perfect_reward=None,
        params={"noise_sigma": 0.0, "episode_limit": 200},
    ),
    "NoisyStatelessPendulum": CatalogRow(
        family="NoisyStatelessPendulum",
        memory_types=("Sequential",),
        obs_layout="[angular velocity] + Gaussian(sigma)",
        action_layout="box(1): torque in [-2, 2]",
        reward_rule="-(angle^2 + 0.1*velocity^2 + 0.001*torque^2) per step",
        termination_rule="truncates at 200",
        perfect_reward=None,
        params={"noise_sigma": 0.1, "episode_limit": 200},
    ),
    "MultiarmedBandit": CatalogRow(
        family="MultiarmedBandit",
        memory_types=("Object", "Capacity"),
        obs_layout="[last payoff, pulled flag, last arm one-hot(A)]",
        action_layout="discrete(A): arm to pull",
        reward_rule="Bernoulli(arm mean) per pull; means resampled every reset",
        termination_rule="truncates at episode_length",
        perfect_reward=None,
        params={"num_arms": 10, "episode_length": 100},
    ),
    "LabyrinthExplore": CatalogRow(
        family="LabyrinthExplore",
        memory_types=("Spatial",),
        obs_layout="[walls NSWE, row, col]",
        action_layout="discrete(4): move direction",
        reward_rule="+1/cells per newly visited cell, -0.001 per step",
        termination_rule="terminates when every cell is visited; limit truncates",
        perfect_reward=None,  # step penalty depends on the walk length
        params={"maze_size": 9},
    ),
    "LabyrinthEscape": CatalogRow(
        family="LabyrinthEscape",
        memory_types=("Spatial",),
        obs_layout="[walls NSWE, row, col]",
        action_layout="discrete(4): move direction",
        reward_rule="1.0 only on reaching the exit corner",
        termination_rule="terminates at the exit; limit truncates",
        perfect_reward=1.0,
        params={"maze_size": 9},
    ),
}


_BUILDERS = {
    "MemoryLength": (recall.MemoryLengthEnv, recall.describe_memory_length),
    "MemoryCards": (cards.MemoryCardsEnv, cards.describe_memory_cards),
    "RepeatPrevious": (recall.RepeatPreviousEnv, recall.describe_repeat_previous),
    "RepeatFirst": (recall.RepeatFirstEnv, recall.describe_repeat_first),
    "CountRecall": (recall.CountRecallEnv, recall.describe_count_recall),
    "Autoencode": (recall.AutoencodeEnv, recall.describe_autoencode),
    "HigherLower": (cards.HigherLowerEnv, cards.describe_higher_lower),
    "Concentration": (cards.ConcentrationEnv, cards.describe_concentration),
    "Battleship": (boards.BattleshipEnv, boards.describe_battleship),
    "MineSweeper": (boards.MineSweeperEnv, boards.describe_mine_sweeper),
    "Numpad": (boards.NumpadEnv, boards.describe_numpad),
    "MortarMayhem": (boards.MortarMayhemEnv, boards.describe_mortar_mayhem),
    "MysteryPath": (boards.MysteryPathEnv, boards.describe_mystery_path),
    "PassiveTMaze": (mazes.PassiveTMazeEnv, mazes.describe_passive_tmaze),
    "MinigridMemory": (mazes.MinigridMemoryEnv, mazes.describe_minigrid_memory),
    "PassiveVisualMatch": (mazes.PassiveVisualMatchEnv, mazes.describe_passive_visual_match),
    "StatelessCartpole": (control.StatelessCartpoleEnv,
                          partial(control.describe_stateless_cartpole, noisy=False)),
    "NoisyStatelessCartpole": (control.StatelessCartpoleEnv,
                               partial(control.describe_stateless_cartpole, noisy=True)),
    "StatelessPendulum": (control.StatelessPendulumEnv,
                          partial(control.describe_stateless_pendulum, noisy=False)),
    "NoisyStatelessPendulum": (control.StatelessPendulumEnv,
                               partial(control.describe_stateless_pendulum, noisy=True)),
    "MultiarmedBandit": (control.MultiarmedBanditEnv, control.describe_bandit),
    "LabyrinthExplore": (partial(mazes.LabyrinthEnv, escape=False),
                         mazes.describe_labyrinth_explore),
    "LabyrinthEscape": (partial(mazes.LabyrinthEnv, escape=True),
                        mazes.describe_labyrinth_escape),
}


def _describe_checked(describe, mode, params):
    # invalid parameter values surface as BadParam, not bare ValueError
    try:
        return describe(mode, params)
    except ValueError as err:
        raise BadParam(str(err)) from err


def _register_all():
    for family, row in CATALOG.items():
        cls, describe = _BUILDERS[family]

        def build(config, mode, params, cls=cls, describe=describe):
            return cls(config, _describe_checked(describe, mode, params), params)

        register(TaskEntry(
            family=family,
            modes=("default",),
            group="diagnostic",
            defaults=dict(row.params),
            build=build,
            describe=lambda mode, params, describe=describe: _describe_checked(describe, mode, params),
        ))


_register_all()
