"""Offline trajectory container: bit-exact write, read, validate, collect.

File layout (little-endian throughout):

    bytes 0-3    magic "MIKD"
    bytes 4-7    u32 format version (currently 1)
    bytes 8-15   u64 header length in bytes
    ...          UTF-8 JSON header
    ...          payload: per trajectory, fields in schema order as raw
                 C-contiguous arrays

The header is self-describing: schema order, per-step shapes and dtypes,
per-trajectory byte offsets (relative to payload start) with step counts
and episode seeds, the generator tag, and the collection reward mode.
Identical inputs produce identical bytes.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import __version__ as SUITE_VERSION
from .errors import (BadMagic, OracleFailureRate, OracleUnavailable,
                     SchemaMismatch, TruncatedPayload)
from .oracles import has_oracle, oracle_action
from .registry import make, resolve
from .tabletop.render import render_pair
from .types import EnvConfig

MAGIC = b"MIKD"
VERSION = 1
SCHEMA = ("rgb", "proprio", "action", "reward", "success", "done")
DTYPES = {"rgb": "uint8", "proprio": "float32", "action": "float32",
          "reward": "float32", "success": "uint8", "done": "uint8"}
STEP_SHAPES = {"rgb": (128, 128, 6), "proprio": (8,), "action": (4,),
               "reward": (), "success": (), "done": ()}
GENERATOR = "scripted-oracle-v1"


@dataclass
class TrajectoryRecord:
    """One episode: arrays share the leading step dimension."""

    rgb: np.ndarray        # (T, 128, 128, 6) uint8
    proprio: np.ndarray    # (T, P) float32
    action: np.ndarray     # (T, A) float32
    reward: np.ndarray     # (T,) float32
    success: np.ndarray    # (T,) uint8
    done: np.ndarray       # (T,) uint8
    seed: int = 0

    @property
    def steps(self) -> int:
        return int(self.rgb.shape[0])

    def field(self, name: str) -> np.ndarray:
        return getattr(self, name)


def _traj_nbytes(steps: int) -> int:
    total = 0
    for name in SCHEMA:
        per_step = int(np.prod(STEP_SHAPES[name], dtype=np.int64)) or 1
        total += steps * per_step * np.dtype(DTYPES[name]).itemsize
    return total


def _header_bytes(task_id, mode, reward_mode, entries, seed_range, discarded) -> bytes:
    header = {
        "format": "MIKD",
        "version": VERSION,
        "task_id": task_id,
        "mode": mode,
        "reward_mode": reward_mode,
        "schema": list(SCHEMA),
        "dtypes": DTYPES,
        "step_shapes": {k: list(v) for k, v in STEP_SHAPES.items()},
        "trajectories": entries,
        "seed_range": list(seed_range),
        "discarded": discarded,
        "generator": GENERATOR,
        "suite_version": SUITE_VERSION,
    }
    return json.dumps(header, sort_keys=True, separators=(",", ":")).encode("utf-8")


def _proprio(scene) -> np.ndarray:
    return np.float32([scene.gx, scene.gy, scene.gangle, scene.grip,
                       scene.gvx, scene.gvy, scene.gangular, scene.grip_rate])


def collect_dataset(task_id: str, mode: str | None, n_traj: int, base_seed: int,
                    out_path: str, reward_mode: str = "dense",
                    progress: Callable[[int, int], None] | None = None) -> dict:
    """Roll the scripted solver until exactly ``n_traj`` successes are stored.

    Failed rollouts are discarded and the seed advanced (the discard count
    lands in the header); more than 5% failures aborts with
    OracleFailureRate since the solvers are expected to be airtight.
    """
    if n_traj < 1:
        raise ValueError("n_traj must be >= 1")
    entry, mode = resolve(task_id, mode)
    if entry.group != "tabletop" or not has_oracle(entry.family):
        raise OracleUnavailable(f"no dataset oracle for {task_id!r}")
    env = make(EnvConfig(task_id=entry.family, mode=mode,
                         observation_mode="masked", reward_mode=reward_mode))

    entries = []
    kept = discarded = 0
    seed = base_seed
    offset = 0
    with tempfile.NamedTemporaryFile(dir=os.path.dirname(os.path.abspath(out_path)) or ".",
                                     delete=False) as payload:
        try:
            while kept < n_traj:
                record = _roll_episode(env, seed)
                if record is None:
                    discarded += 1
                    attempts = kept + discarded
                    if attempts >= 20 and discarded > 0.05 * attempts:
                        raise OracleFailureRate(
                            f"{discarded}/{attempts} rollouts failed for {task_id}")
                else:
                    for name in SCHEMA:
                        payload.write(np.ascontiguousarray(record.field(name)).tobytes())
                    entries.append({"offset": offset, "steps": record.steps, "seed": seed})
                    offset += _traj_nbytes(record.steps)
                    kept += 1
                    if progress is not None:
                        progress(kept, n_traj)
                seed += 1
            payload.flush()
            header = _header_bytes(entry.family, mode, reward_mode, entries,
                                   (base_seed, seed - 1), discarded)
            with open(out_path, "wb") as out:
                out.write(MAGIC)
                out.write(np.uint32(VERSION).tobytes())
                out.write(np.uint64(len(header)).tobytes())
                out.write(header)
                payload.seek(0)
                while True:
                    chunk = payload.read(1 << 20)
                    if not chunk:
                        break
                    out.write(chunk)
        finally:
            os.unlink(payload.name)
    return {"path": out_path, "trajectories": kept, "discarded": discarded,
            "seed_range": [base_seed, seed - 1]}


def _roll_episode(env, seed: int) -> TrajectoryRecord | None:
    frames, proprios, actions, rewards, successes, dones = [], [], [], [], [], []
    env.reset(seed=seed)
    success = False
    while not env.finished:
        frames.append(render_pair(env.scene))
        proprios.append(_proprio(env.scene))
        action = oracle_action(env)
        result = env.step(action)
        actions.append(np.asarray(action, dtype=np.float32))
        rewards.append(np.float32(result.reward))
        success = bool(result.info["success"])
        successes.append(np.uint8(success))
        dones.append(np.uint8(result.terminated or result.truncated))
    if not success:
        return None
    return TrajectoryRecord(
        rgb=np.stack(frames),
        proprio=np.stack(proprios),
        action=np.stack(actions),
        reward=np.asarray(rewards, dtype=np.float32),
        success=np.asarray(successes, dtype=np.uint8),
        done=np.asarray(dones, dtype=np.uint8),
        seed=seed,
    )


def read_header(path: str) -> dict:
    with open(path, "rb") as f:
        magic = f.read(4)
        if magic != MAGIC:
            raise BadMagic(f"{path}: expected {MAGIC!r}, found {magic!r}")
        version = int(np.frombuffer(f.read(4), dtype="<u4")[0])
        if version != VERSION:
            raise SchemaMismatch(f"{path}: unsupported version {version}")
        header_len = int(np.frombuffer(f.read(8), dtype="<u8")[0])
        raw = f.read(header_len)
        if len(raw) != header_len:
            raise TruncatedPayload(f"{path}: header truncated")
        header = json.loads(raw.decode("utf-8"))
    header["_payload_start"] = 16 + header_len
    return header


def read_dataset(path: str) -> Iterator[TrajectoryRecord]:
    """Stream trajectories; the file is validated structurally as it reads."""
    header = read_header(path)
    if tuple(header["schema"]) != SCHEMA:
        raise SchemaMismatch(f"{path}: unexpected schema {header['schema']}")
    payload_start = header["_payload_start"]
    size = os.path.getsize(path)
    with open(path, "rb") as f:
        for entry in header["trajectories"]:
            steps = int(entry["steps"])
            start = payload_start + int(entry["offset"])
            need = _traj_nbytes(steps)
            if start + need > size:
                raise TruncatedPayload(f"{path}: trajectory at offset {entry['offset']}")
            f.seek(start)
            arrays = {}
            for name in SCHEMA:
                shape = (steps,) + STEP_SHAPES[name]
                dtype = np.dtype(DTYPES[name])
                count = int(np.prod(shape, dtype=np.int64))
                buf = f.read(count * dtype.itemsize)
                arrays[name] = np.frombuffer(buf, dtype=dtype).reshape(shape)
            yield TrajectoryRecord(seed=int(entry["seed"]), **arrays)


def validate_dataset(path: str, replay_fraction: float = 0.05) -> dict:
    """Structural and semantic checks plus replay equivalence on a sample.

    Structural faults (magic, version, truncation) raise; semantic faults
    are returned in the report's ``violations`` list.
    """
    header = read_header(path)
    violations = []
    records = []
    for idx, record in enumerate(read_dataset(path)):
        records.append(record)
        t = record.steps
        lead = {record.field(name).shape[0] for name in SCHEMA}
        if lead != {t}:
            violations.append(f"traj {idx}: leading dimensions differ")
        if record.done[-1] != 1 or record.done[:-1].any():
            violations.append(f"traj {idx}: done-placement")
        if record.success[-1] != 1:
            violations.append(f"traj {idx}: final step not successful")
        if record.rgb.shape[1:] != STEP_SHAPES["rgb"]:
            violations.append(f"traj {idx}: rgb shape {record.rgb.shape}")

    n = len(records)
    sample = sorted({int(i) for i in np.linspace(0, n - 1, max(1, math.ceil(replay_fraction * n)))}) if n else []
    env = make(EnvConfig(task_id=header["task_id"], mode=header["mode"],
                         observation_mode="masked", reward_mode=header["reward_mode"]))
    for idx in sample:
        problems = replay_equivalent(env, records[idx])
        violations.extend(f"traj {idx}: {p}" for p in problems)
    return {
        "path": path,
        "task_id": header["task_id"],
        "mode": header["mode"],
        "trajectories": n,
        "replayed": len(sample),
        "violations": violations,
        "ok": not violations,
    }


def replay_equivalent(env, record: TrajectoryRecord) -> list[str]:
    """Replay stored actions from the stored seed; compare every stream."""
    problems = []
    env.reset(seed=record.seed)
    for t in range(record.steps):
        if env.finished:
            problems.append(f"episode ended early at step {t}")
            break
        frame = render_pair(env.scene)
        if frame.tobytes() != record.rgb[t].tobytes():
            problems.append(f"rgb mismatch at step {t}")
            break
        if _proprio(env.scene).tobytes() != record.proprio[t].tobytes():
            problems.append(f"proprio mismatch at step {t}")
            break
        result = env.step(record.action[t])
        if np.float32(result.reward).tobytes() != record.reward[t].tobytes():
            problems.append(f"reward mismatch at step {t}")
            break
        if bool(result.info["success"]) != bool(record.success[t]):
            problems.append(f"success mismatch at step {t}")
            break
        done = result.terminated or result.truncated
        if done != bool(record.done[t]):
            problems.append(f"done mismatch at step {t}")
            break
    else:
        if not env.finished:
            problems.append("stored episode shorter than replay")
    return problems
