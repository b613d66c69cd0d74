"""Wire protocol: fidelity against in-process runs, isolation, errors."""

import json
import socket
import threading

import numpy as np
import pytest

import memsuite as ms
from memsuite.server import WireEnvClient, WireServer, serve_lines


@pytest.fixture(scope="module")
def server():
    srv = WireServer("127.0.0.1", 0, max_sessions=8).start()
    yield srv
    srv.stop()


def client_for(server, session="default"):
    host, port = server.address
    return WireEnvClient(host, port, session=session)


def scripted_actions(n, act_dim=4):
    rng = np.random.Generator(np.random.Philox(key=123))
    return [rng.uniform(-0.05, 0.05, size=act_dim).astype(np.float32) for _ in range(n)]


def test_make_reset_step_round_trip(server):
    client = client_for(server)
    env_id = client.make(task_id="PassiveTMaze")
    spec = client.spec(env_id)
    assert spec["meta"]["task_id"] == "PassiveTMaze"
    assert spec["action"]["kind"] == "discrete" and spec["action"]["n"] == 4
    obs, info = client.reset(env_id, seed=3)
    assert obs.shape == (3,)
    obs2, reward, term, trunc, info = client.step(env_id, 1)
    assert isinstance(reward, float) and not term
    client.close(env_id)
    client.shutdown()


def test_wire_trajectory_bit_identical_to_in_process(server):
    actions = scripted_actions(90)
    # in-process
    env = ms.make(ms.EnvConfig(task_id="ShellGameTouch"))
    native = []
    for seed in (1, 2, 3):
        obs, info = env.reset(seed=seed)
        native.append(obs.tobytes())
        for a in actions:
            if env.finished:
                break
            r = env.step(a)
            native.append(r.observation.tobytes())
            native.append(np.float64(r.reward).tobytes())
            native.append(bytes([r.terminated, r.truncated]))
    # through the wire
    client = client_for(server, session="fidelity")
    env_id = client.make(task_id="ShellGameTouch")
    wired = []
    for seed in (1, 2, 3):
        obs, info = client.reset(env_id, seed=seed)
        done = False
        wired.append(np.asarray(obs, np.float32).tobytes())
        for a in actions:
            if done:
                break
            obs, reward, term, trunc, info = client.step(env_id, a)
            done = term or trunc
            wired.append(np.asarray(obs, np.float32).tobytes())
            wired.append(np.float64(reward).tobytes())
            wired.append(bytes([term, trunc]))
    client.shutdown()
    assert b"".join(native) == b"".join(wired)


def test_rgb_raster_survives_base64(server):
    client = client_for(server)
    env_id = client.make(task_id="RememberColor3", observation_mode="rgb")
    obs, _ = client.reset(env_id, seed=5)
    env = ms.make(ms.EnvConfig(task_id="RememberColor3", observation_mode="rgb"))
    want, _ = env.reset(seed=5)
    assert obs.dtype == np.uint8 and obs.shape == (128, 128, 6)
    assert obs.tobytes() == want.tobytes()
    client.shutdown()


def test_step_error_reports_code_without_killing_session(server):
    client = client_for(server)
    env_id = client.make(task_id="PassiveTMaze")
    client.reset(env_id, seed=0)
    with pytest.raises(ms.MemsuiteError, match="ActionShape"):
        client.step(env_id, [0.5, 0.5])
    # session still alive
    obs, *_ = client.step(env_id, 1)
    assert obs is not None
    client.shutdown()


def test_malformed_json_yields_error_response(server):
    host, port = server.address
    sock = socket.create_connection((host, port))
    reader = sock.makefile("r")
    sock.sendall(b"this is not json\n")
    response = json.loads(reader.readline())
    assert response["ok"] is False and response["error"] == "BadRequest"
    sock.sendall(json.dumps({"op": "make", "payload": {"task_id": "PassiveTMaze"}}).encode() + b"\n")
    response = json.loads(reader.readline())
    assert response["ok"] is True
    sock.close()


def test_sessions_are_isolated_and_match_serial(server):
    actions = scripted_actions(30)

    def run_session(name, seed, out):
        client = client_for(server, session=name)
        env_id = client.make(task_id="RememberColor3")
        obs, _ = client.reset(env_id, seed=seed)
        stream = [np.asarray(obs, np.float32).tobytes()]
        for a in actions:
            obs, reward, term, trunc, _ = client.step(env_id, a)
            stream.append(np.asarray(obs, np.float32).tobytes())
            if term or trunc:
                break
        client.shutdown()
        out[name] = b"".join(stream)

    results: dict = {}
    threads = [threading.Thread(target=run_session, args=(f"s{i}", 10 + i, results))
               for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()

    # serial reference
    for i in range(4):
        env = ms.make(ms.EnvConfig(task_id="RememberColor3"))
        obs, _ = env.reset(seed=10 + i)
        stream = [obs.tobytes()]
        for a in actions:
            if env.finished:
                break
            r = env.step(a)
            stream.append(r.observation.tobytes())
        assert results[f"s{i}"] == b"".join(stream)


def test_unknown_task_over_wire(server):
    client = client_for(server)
    with pytest.raises(ms.MemsuiteError, match="UnknownTask"):
        client.make(task_id="NoSuchTask")
    client.shutdown()


def test_stdio_style_line_serving():
    import io

    requests = "\n".join([
        json.dumps({"op": "make", "payload": {"task_id": "MemoryLength"}}),
        json.dumps({"op": "reset", "payload": {"env": 0, "seed": 4}}),
        json.dumps({"op": "step", "payload": {"env": 0, "action": 1}}),
        json.dumps({"op": "close"}),
    ]) + "\n"
    out = io.StringIO()
    serve_lines(io.StringIO(requests), out)
    lines = [json.loads(l) for l in out.getvalue().splitlines()]
    assert all(l["ok"] for l in lines)
    assert lines[1]["payload"]["info"]["phase"] == "observation"
    assert lines[3]["payload"]["closed"] == [0]
