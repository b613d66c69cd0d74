import numpy as np
import pytest

import memsuite as ms


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(key=1234))


def rollout(env, actions, seed=0):
    """Drive env through actions, returning the full transition record."""
    out = []
    obs, info = env.reset(seed=seed)
    out.append((np.asarray(obs, dtype=np.float32).copy(), 0.0, False, False, dict(info)))
    for a in actions:
        if env.finished:
            break
        r = env.step(a)
        out.append((np.asarray(r.observation, dtype=np.float32).copy(), r.reward,
                    r.terminated, r.truncated, dict(r.info)))
    return out


def stream_bytes(record):
    """Hashable byte string of an observation/reward/flag stream."""
    chunks = []
    for obs, reward, term, trunc, info in record:
        chunks.append(np.asarray(obs).tobytes())
        chunks.append(np.float64(reward).tobytes())
        chunks.append(bytes([int(term), int(trunc), int(bool(info.get("success", False)))]))
    return b"".join(chunks)


def make_env(task_id, **kwargs):
    return ms.make(ms.EnvConfig(task_id=task_id, **kwargs))
