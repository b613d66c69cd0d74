"""Drive an environment over the line-delimited JSON protocol.

Starts an in-process server, connects a client, and shows that the wired
trajectory matches the in-process one byte for byte.  External agents in
any language speak the same five ops: make, reset, step, spec, close.
"""

import json

import numpy as np

import memsuite as ms
from memsuite.server import WireEnvClient, WireServer

server = WireServer("127.0.0.1", 0).start()
host, port = server.address
print(f"server on {host}:{port}")

client = WireEnvClient(host, port, session="demo")
env_id = client.make(task_id="PassiveTMaze")
spec = client.spec(env_id)
print("wire spec:", json.dumps(spec["meta"], indent=2)[:200], "...")

obs_w, info_w = client.reset(env_id, seed=9)
env = ms.make(ms.EnvConfig(task_id="PassiveTMaze"))
obs_n, _ = env.reset(seed=9)
print("reset obs equal:", obs_n.tobytes() == np.asarray(obs_w, np.float32).tobytes())

for action in (1, 1, 1, 2):
    obs_w, reward_w, term_w, trunc_w, _ = client.step(env_id, action)
    r = env.step(action)
    same = r.observation.tobytes() == np.asarray(obs_w, np.float32).tobytes()
    print(f"action {action}: wired reward {reward_w:+.1f}, equal obs: {same}")
    if term_w:
        break

client.close(env_id)
client.shutdown()
server.stop()
