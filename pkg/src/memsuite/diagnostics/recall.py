"""Sequence-recall tasks: context recall, echo, counting, and replay.

All five tasks precompute their full value tapes at reset; stepping only
indexes tapes and compares actions, which keeps the batch engine fast.
"""

from __future__ import annotations

import numpy as np

from ..spaces import Box, Discrete
from ..types import EnvConfig, TaskMeta
from .base import DiagnosticEnv, require


class MemoryLengthEnv(DiagnosticEnv):
    """Recall one of B context bits shown at step 0, queried at the end.

    The first observation carries the context bits (values in {-1,+1}) and
    a first-step flag.  Intermediate observations are fillers: zeros except
    the step index in slot 1.  The final observation puts the query index
    in slot 1; the action taken on it is scored +1 when it decodes the
    queried bit (action 0 means -1, action 1 means +1), else -1.
    """

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict):
        length = int(params["memory_length"])
        bits = int(params["num_bits"])
        require(length >= 1, "memory_length must be >= 1")
        require(bits >= 1, "num_bits must be >= 1")
        self.length = length
        self.bits = bits
        super().__init__(config, meta)
        self.observation_space = Box(-1.0, float(max(length, bits, 1)), (2 + bits,))
        self.action_space = Discrete(2)

    def _init_episode(self, rng):
        length, bits = self.length, self.bits
        self.context = (rng.integers(0, 2, size=bits) * 2 - 1).astype(np.float32)
        self.query = int(rng.integers(0, bits))
        tape = np.zeros((length + 1, 2 + bits), dtype=np.float32)
        tape[0, 0] = 1.0
        tape[0, 2:] = self.context
        for t in range(1, length):
            tape[t, 1] = float(t)
        tape[length, 1] = float(self.query)
        self._tape = tape
        self._oracle_vec = np.concatenate(
            [self.context, np.float32([self.query])]).astype(np.float32)

    def _observe(self):
        return self._tape[min(self._t, self.length)]

    def _apply(self, action):
        if self._t < self.length:
            return 0.0, False, False, False
        want = 1 if self.context[self.query] > 0 else 0
        correct = action == want
        return (1.0 if correct else -1.0), True, False, correct

    def _oracle(self):
        return self._oracle_vec

    def _phase_name(self):
        if self._t == 0:
            return "observation"
        return "selection" if self._t >= self.length else "delay"


def describe_memory_length(mode: str, params: dict) -> TaskMeta:
    length = int(params["memory_length"])
    return TaskMeta(
        task_id="MemoryLength",
        memory_types=("Object",),
        correlation_horizon=length + 1,
        timeout=length + 1,
        modes=("default",),
        oracle_info_schema=(("context_bits", int(params["num_bits"])), ("query_index", 1)),
        reward_modes=("dense",),
        notes="episode length is memory_length+1 by construction",
    )


class RepeatFirstEnv(DiagnosticEnv):
    """Answer with the value shown at step 0 on every step."""

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict):
        self.values = int(params["num_values"])
        self.episode_length = int(params["episode_length"])
        require(self.values >= 2, "num_values must be >= 2")
        require(self.episode_length >= 2, "episode_length must be >= 2")
        super().__init__(config, meta)
        self.observation_space = Box(0.0, 1.0, (1 + self.values,))
        self.action_space = Discrete(self.values)

    def _init_episode(self, rng):
        n, v = self.episode_length, self.values
        vals = rng.integers(0, v, size=n)
        tape = np.zeros((n + 1, 1 + v), dtype=np.float32)
        tape[0, 0] = 1.0
        tape[np.arange(n), 1 + vals] = 1.0
        self._tape = tape
        self.first_value = int(vals[0])
        self._mistakes = 0
        self._oracle_vec = np.float32([self.first_value])

    def _observe(self):
        return self._tape[self._t]

    def _apply(self, action):
        correct = action == self.first_value
        if not correct:
            self._mistakes += 1
        reward = (1.0 / self.episode_length) if correct else 0.0
        return reward, False, False, self._mistakes == 0

    def _oracle(self):
        return self._oracle_vec


def describe_repeat_first(mode: str, params: dict) -> TaskMeta:
    return TaskMeta(
        task_id="RepeatFirst",
        memory_types=("Object",),
        correlation_horizon=int(params["episode_length"]),
        timeout=int(params["episode_length"]),
        modes=("default",),
        oracle_info_schema=(("first_value", 1),),
        reward_modes=("dense",),
        notes="episode length 52 is a project default; the source leaves it open",
    )


class RepeatPreviousEnv(DiagnosticEnv):
    """Echo the value observed ``delay`` steps earlier.

    Steps before the delay has elapsed are unscored warmup; afterwards each
    step pays +1/(T-k) for a correct recall and -1/(T-k) otherwise, so a
    perfect episode totals +1.
    """

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict):
        self.delay = int(params["delay"])
        self.values = int(params["num_values"])
        self.episode_length = int(params["episode_length"])
        require(self.delay >= 1, "delay must be >= 1")
        require(self.episode_length > self.delay, "episode_length must exceed delay")
        super().__init__(config, meta)
        self.observation_space = Box(0.0, 1.0, (self.values,))
        self.action_space = Discrete(self.values)

    def _init_episode(self, rng):
        n, v = self.episode_length, self.values
        self.sequence = rng.integers(0, v, size=n)
        tape = np.zeros((n + 1, v), dtype=np.float32)
        tape[np.arange(n), self.sequence] = 1.0
        self._tape = tape
        self._mistakes = 0
        self._oracle_cache = np.zeros(self.values + 1, dtype=np.float32)

    def _observe(self):
        return self._tape[self._t]

    def _apply(self, action):
        t = self._t
        if t < self.delay:
            return 0.0, False, False, True
        scale = 1.0 / (self.episode_length - self.delay)
        correct = action == int(self.sequence[t - self.delay])
        if not correct:
            self._mistakes += 1
        return (scale if correct else -scale), False, False, self._mistakes == 0

    def _oracle(self):
        out = self._oracle_cache
        out[:] = 0.0
        t = self._t
        if t >= self.delay:
            out[int(self.sequence[t - self.delay])] = 1.0
            out[-1] = 1.0
        return out


def describe_repeat_previous(mode: str, params: dict) -> TaskMeta:
    return TaskMeta(
        task_id="RepeatPrevious",
        memory_types=("Sequential", "Object"),
        correlation_horizon=int(params["delay"]) + 1,
        timeout=int(params["episode_length"]),
        modes=("default",),
        oracle_info_schema=(("correct_value", int(params["num_values"])), ("scored", 1)),
        reward_modes=("dense",),
        notes="episode length 52 is a project default; the source leaves it open",
    )


class CountRecallEnv(DiagnosticEnv):
    """Report how often the query value appeared among previously shown values.

    Each observation presents a fresh next value and a query value; the
    correct answer counts the query's occurrences strictly before this
    step's next value.  Correct answers pay +1/T, wrong ones nothing.
    """

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict):
        self.values = int(params["num_values"])
        self.episode_length = int(params["episode_length"])
        require(self.values >= 2, "num_values must be >= 2")
        require(self.episode_length >= 2, "episode_length must be >= 2")
        super().__init__(config, meta)
        self.observation_space = Box(0.0, 1.0, (2 * self.values,))
        self.action_space = Discrete(self.episode_length + 1)

    def _init_episode(self, rng):
        n, v = self.episode_length, self.values
        self.shown = rng.integers(0, v, size=n)
        self.queries = rng.integers(0, v, size=n)
        running = np.zeros(v, dtype=np.int64)
        answers = np.zeros(n, dtype=np.int64)
        for t in range(n):
            answers[t] = running[self.queries[t]]
            running[self.shown[t]] += 1
        self.answers = answers
        tape = np.zeros((n + 1, 2 * v), dtype=np.float32)
        tape[np.arange(n), self.shown] = 1.0
        tape[np.arange(n), v + self.queries] = 1.0
        self._tape = tape
        self._mistakes = 0
        self._oracle_cache = np.zeros(1, dtype=np.float32)

    def _observe(self):
        return self._tape[self._t]

    def _apply(self, action):
        correct = action == int(self.answers[self._t])
        if not correct:
            self._mistakes += 1
        reward = (1.0 / self.episode_length) if correct else 0.0
        return reward, False, False, self._mistakes == 0

    def _oracle(self):
        t = min(self._t, self.episode_length - 1)
        self._oracle_cache[0] = float(self.answers[t])
        return self._oracle_cache


def describe_count_recall(mode: str, params: dict) -> TaskMeta:
    return TaskMeta(
        task_id="CountRecall",
        memory_types=("Object", "Capacity"),
        correlation_horizon=int(params["episode_length"]),
        timeout=int(params["episode_length"]),
        modes=("default",),
        oracle_info_schema=(("correct_count", 1),),
        reward_modes=("dense",),
        notes="episode length 52 is a project default; the source leaves it open",
    )


class AutoencodeEnv(DiagnosticEnv):
    """Watch a shuffled deck, then reproduce it card by card in order."""

    def __init__(self, config: EnvConfig, meta: TaskMeta, params: dict):
        self.deck_size = int(params["deck_size"])
        self.values = int(params["num_values"])
        require(self.deck_size >= 2, "deck_size must be >= 2")
        require(self.values >= 2, "num_values must be >= 2")
        require(self.deck_size % self.values == 0, "deck_size must be divisible by num_values")
        super().__init__(config, meta)
        self.observation_space = Box(0.0, 1.0, (1 + self.values,))
        self.action_space = Discrete(self.values)

    def _init_episode(self, rng):
        d, v = self.deck_size, self.values
        deck = np.repeat(np.arange(v), d // v)
        self.deck = rng.permutation(deck)
        tape = np.zeros((2 * d + 1, 1 + v), dtype=np.float32)
        tape[:d, 0] = 1.0
        tape[np.arange(d), 1 + self.deck] = 1.0
        self._tape = tape
        self._mistakes = 0
        self._scored = 0
        self._oracle_cache = np.zeros(self.values + 1, dtype=np.float32)

    def _observe(self):
        return self._tape[self._t]

    def _apply(self, action):
        t, d = self._t, self.deck_size
        if t < d:
            return 0.0, False, False, False
        correct = action == int(self.deck[t - d])
        self._scored += 1
        if not correct:
            self._mistakes += 1
        reward = (1.0 / d) if correct else 0.0
        done = t == 2 * d - 1
        success = done and self._mistakes == 0
        return reward, done, False, success

    def _oracle(self):
        out = self._oracle_cache
        out[:] = 0.0
        t, d = self._t, self.deck_size
        if d <= t < 2 * d:
            out[int(self.deck[t - d])] = 1.0
            out[-1] = 1.0
        return out

    def _phase_name(self):
        return "observation" if self._t < self.deck_size else "selection"


def describe_autoencode(mode: str, params: dict) -> TaskMeta:
    return TaskMeta(
        task_id="Autoencode",
        memory_types=("Sequential",),
        correlation_horizon=int(params["deck_size"]) + 1,
        timeout=2 * int(params["deck_size"]),
        modes=("default",),
        oracle_info_schema=(("correct_value", int(params["num_values"])), ("scored", 1)),
        reward_modes=("dense",),
    )
