"""Deterministic per-episode random streams.

Every episode draws all of its randomness from a Philox-keyed generator.
Philox is a counter-based generator: the stream produced by a given 64-bit
key is identical on every platform and numpy release, which is what makes
batch lanes, recorded datasets, and the seeds-1-to-100 evaluation protocol
replayable bit-for-bit.  Environments never share generator state; a lane
of a batch replayed standalone with the same derived seed reproduces the
identical trajectory.
"""

from __future__ import annotations

import numpy as np

__all__ = ["episode_rng", "lane_seed"]

_MASK64 = (1 << 64) - 1


def episode_rng(seed: int) -> np.random.Generator:
    """Fresh generator keyed by ``seed``; same seed, same draws, any platform."""
    if seed < 0:
        raise ValueError(f"seed must be >= 0, got {seed}")
    return np.random.Generator(np.random.Philox(key=np.uint64(seed & _MASK64)))


def lane_seed(base_seed: int, lane: int, n_lanes: int, episode: int) -> int:
    """Seed for a vector-engine lane's ``episode``-th episode.

    The schedule ``base + lane + n * episode`` gives every (lane, episode)
    pair a distinct seed and makes any lane replayable in isolation.
    """
    return (base_seed + lane + n_lanes * episode) & _MASK64
