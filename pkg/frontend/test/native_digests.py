"""Native-side reference digests for the binding parity test.

For each (task, episodes) pair, run scripted episodes in process and hash
the observation/reward/flag stream exactly the way the TypeScript side
hashes what it receives over the wire.  Prints one JSON object.
"""

import hashlib
import json
import sys

import numpy as np

import memsuite as ms

TASKS = json.loads(sys.argv[1]) if len(sys.argv) > 1 else [
    ["PassiveTMaze", 100], ["MemoryLength", 100], ["RememberColor3", 100],
]


def scripted_action(task_id, env, i):
    if task_id == "PassiveTMaze":
        return (i * 3 + 1) % 4
    if task_id == "MemoryLength":
        return i % 2
    dx = np.float32(((i % 11) - 5) / 200)
    dy = np.float32(((i % 7) - 3) / 200)
    grip = np.float32((i % 3) / 2)
    return np.array([dx, dy, np.float32(0.0), grip], dtype=np.float32)


def obs_bytes(obs):
    if isinstance(obs, dict):
        return b"".join(obs_bytes(obs[k]) for k in sorted(obs))
    arr = np.asarray(obs)
    if arr.dtype == np.uint8:
        return arr.tobytes()
    return arr.astype(np.float32).tobytes()


digests = {}
for task_id, episodes in TASKS:
    env = ms.make(ms.EnvConfig(task_id=task_id))
    h = hashlib.sha256()
    for seed in range(1, episodes + 1):
        obs, info = env.reset(seed=seed)
        h.update(obs_bytes(obs))
        i = 0
        while not env.finished:
            r = env.step(scripted_action(task_id, env, i))
            h.update(obs_bytes(r.observation))
            h.update(np.float64(r.reward).tobytes())
            h.update(bytes([int(r.terminated), int(r.truncated)]))
            i += 1
    digests[task_id] = h.hexdigest()

print(json.dumps(digests))
