"""Observation and action space descriptions.

A space is either :class:`Discrete` (an integer index) or :class:`Box`
(a bounded array).  These are plain descriptions: validation and clamping
helpers live here, sampling takes an explicit generator so that spaces
themselves hold no random state.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ActionRange, ActionShape

__all__ = ["Discrete", "Box", "SpaceSpec", "validate_action", "sample", "numpy_dtype"]


@dataclass(frozen=True)
class Discrete:
    n: int
    dtype: str = "int32"

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"Discrete space needs n >= 2, got {self.n}")


@dataclass(frozen=True)
class Box:
    """Bounded array space.  low/high are scalars or per-element tuples."""

    low: object
    high: object
    shape: tuple[int, ...]
    dtype: str = "real32"

    def __post_init__(self):
        if not self.shape:
            raise ValueError("Box shape must be nonempty")
        lo, hi = self.low_array, self.high_array
        if np.any(lo > hi):
            raise ValueError("Box requires low <= high elementwise")

    def _edge(self, value) -> np.ndarray:
        arr = np.asarray(value, dtype=np.float64)
        if arr.ndim == 0:
            return np.broadcast_to(arr, self.shape)
        if arr.shape != self.shape:
            raise ValueError(f"bound shape {arr.shape} != {self.shape}")
        return arr

    @property
    def low_array(self) -> np.ndarray:
        return self._edge(self.low)

    @property
    def high_array(self) -> np.ndarray:
        return self._edge(self.high)


SpaceSpec = Union[Discrete, Box]

_NP_DTYPES = {"real32": np.float32, "int32": np.int32, "uint8": np.uint8}


def numpy_dtype(name: str) -> np.dtype:
    return np.dtype(_NP_DTYPES[name])


def validate_action(space: SpaceSpec, action):
    """Check ``action`` against ``space``.

    Discrete: must be integral (ActionShape otherwise) and in range
    (ActionRange otherwise); returns a plain int.  Box: must match the
    declared arity (ActionShape otherwise); values are clamped into the
    box, never rejected; returns a float32 array.
    """
    if isinstance(space, Discrete):
        try:
            idx = operator.index(action)
        except TypeError:
            raise ActionShape(f"discrete action must be an integer, got {type(action).__name__}")
        if not 0 <= idx < space.n:
            raise ActionRange(f"discrete action {idx} outside [0, {space.n})")
        return idx
    arr = np.asarray(action, dtype=np.float32)
    if arr.shape != space.shape:
        raise ActionShape(f"action shape {arr.shape} != {space.shape}")
    lo = np.asarray(space.low_array, dtype=np.float32)
    hi = np.asarray(space.high_array, dtype=np.float32)
    return np.clip(arr, lo, hi)


def sample(space: SpaceSpec, rng: np.random.Generator):
    """Uniform draw from the space, for random agents and smoke tests."""
    if isinstance(space, Discrete):
        return int(rng.integers(0, space.n))
    lo = space.low_array
    hi = space.high_array
    return rng.uniform(lo, hi).astype(np.float32)
