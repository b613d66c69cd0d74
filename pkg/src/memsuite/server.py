"""Line-delimited JSON wire protocol: env server, client, and agent bridge.

One JSON object per line.  Requests: ``{"op": make|reset|step|spec|close,
"session": name?, "id": tag?, "payload": {...}}``.  Responses echo ``id``
and carry either ``{"ok": true, "payload": ...}`` or ``{"ok": false,
"error": "<ErrorCode>", "message": "..."}``.  Sessions are independent
namespaces of env instances; requests within a connection are answered in
order.  Vectors travel as JSON number arrays (exact for float32 payloads),
rasters as base64 raw bytes with shape metadata.
"""

from __future__ import annotations

import base64
import json
import socket
import socketserver
import threading

import numpy as np

from .errors import BindFailed, MemsuiteError, SessionLimit
from .registry import make
from .spaces import Box, Discrete
from .types import EnvConfig


# -- value encoding -----------------------------------------------------------

def encode_value(value):
    if isinstance(value, np.ndarray):
        if value.dtype == np.uint8:
            return {"__raster__": base64.b64encode(value.tobytes()).decode("ascii"),
                    "shape": list(value.shape), "dtype": "uint8"}
        return [float(x) for x in np.asarray(value, dtype=np.float32).ravel()]
    if isinstance(value, dict):
        return {k: encode_value(v) for k, v in value.items()}
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    return value


def decode_value(value):
    if isinstance(value, dict) and "__raster__" in value:
        raw = base64.b64decode(value["__raster__"])
        return np.frombuffer(raw, dtype=np.uint8).reshape(value["shape"])
    if isinstance(value, dict):
        return {k: decode_value(v) for k, v in value.items()}
    if isinstance(value, list):
        return np.asarray(value, dtype=np.float32)
    return value


def _finite_or_none(x: float):
    return float(x) if np.isfinite(x) else None


def encode_space(space):
    if isinstance(space, Discrete):
        return {"kind": "discrete", "n": space.n, "dtype": space.dtype}
    if isinstance(space, Box):
        lo, hi = space.low_array, space.high_array
        low = _finite_or_none(lo.flat[0]) if np.all(lo == lo.flat[0]) else [_finite_or_none(x) for x in lo.ravel()]
        high = _finite_or_none(hi.flat[0]) if np.all(hi == hi.flat[0]) else [_finite_or_none(x) for x in hi.ravel()]
        return {"kind": "box", "shape": list(space.shape), "low": low, "high": high,
                "dtype": space.dtype}
    if isinstance(space, dict):
        return {k: encode_space(v) for k, v in space.items()}
    raise ValueError(f"unknown space {space!r}")


def encode_meta(meta):
    return {
        "task_id": meta.task_id,
        "memory_types": list(meta.memory_types),
        "correlation_horizon": meta.correlation_horizon,
        "timeout": meta.timeout,
        "modes": list(meta.modes),
        "oracle_info_schema": [list(pair) for pair in meta.oracle_info_schema],
        "prompt_schema": [list(pair) for pair in meta.prompt_schema],
        "reward_modes": list(meta.reward_modes),
        "discount": meta.discount,
        "notes": meta.notes,
    }


def _decode_action(action, space):
    if isinstance(space, Discrete):
        return action
    return np.asarray(action, dtype=np.float32)


# -- the session: op dispatch over a private env namespace ---------------------

class Session:
    def __init__(self):
        self._envs = {}
        self._next_id = 0

    def handle(self, request: dict) -> dict:
        op = request.get("op")
        payload = request.get("payload") or {}
        try:
            if op == "make":
                return self._ok(request, self._make(payload))
            if op == "reset":
                return self._ok(request, self._reset(payload))
            if op == "step":
                return self._ok(request, self._step(payload))
            if op == "spec":
                return self._ok(request, self._spec(payload))
            if op == "close":
                return self._ok(request, self._close(payload))
            return self._err(request, "BadRequest", f"unknown op {op!r}")
        except MemsuiteError as err:
            return self._err(request, err.code, str(err))
        except (KeyError, TypeError, ValueError) as err:
            return self._err(request, "BadRequest", f"{type(err).__name__}: {err}")

    @staticmethod
    def _ok(request, payload):
        out = {"ok": True, "payload": payload}
        if "id" in request:
            out["id"] = request["id"]
        if "session" in request:
            out["session"] = request["session"]
        return out

    @staticmethod
    def _err(request, code, message):
        out = {"ok": False, "error": code, "message": message}
        if "id" in request:
            out["id"] = request["id"]
        if "session" in request:
            out["session"] = request["session"]
        return out

    def _get(self, payload):
        env_id = payload["env"]
        if env_id not in self._envs:
            raise KeyError(f"no env {env_id} in session")
        return env_id, self._envs[env_id]

    def _make(self, payload):
        config = EnvConfig(
            task_id=payload["task_id"],
            mode=payload.get("mode"),
            observation_mode=payload.get("observation_mode", "masked"),
            reward_mode=payload.get("reward_mode", "sparse"),
            seed=int(payload.get("seed", 0)),
            task_params=payload.get("task_params") or {},
        )
        env = make(config)
        env_id = self._next_id
        self._next_id += 1
        self._envs[env_id] = env
        return {"env": env_id, "spec": self._spec({"env": env_id})}

    def _spec(self, payload):
        _, env = self._get(payload)
        obs_space, act_space, meta = env.spec()
        return {"observation": encode_space(obs_space),
                "action": encode_space(act_space),
                "meta": encode_meta(meta)}

    def _reset(self, payload):
        _, env = self._get(payload)
        seed = payload.get("seed")
        obs, info = env.reset(seed=None if seed is None else int(seed))
        return {"observation": encode_value(obs), "info": encode_value(info)}

    def _step(self, payload):
        _, env = self._get(payload)
        action = _decode_action(payload["action"], env.action_space)
        result = env.step(action)
        return {
            "observation": encode_value(result.observation),
            "reward": float(result.reward),
            "terminated": bool(result.terminated),
            "truncated": bool(result.truncated),
            "info": encode_value(result.info),
        }

    def _close(self, payload):
        if "env" in payload:
            env_id, _ = self._get(payload)
            del self._envs[env_id]
            return {"closed": [env_id]}
        closed = sorted(self._envs)
        self._envs.clear()
        return {"closed": closed}


def serve_lines(reader, writer):
    """Run the protocol over line-based text streams until EOF.

    Each distinct ``session`` field gets an isolated namespace; responses
    keep request order.
    """
    sessions: dict[str, Session] = {}
    for line in reader:
        line = line.strip()
        if not line:
            continue
        try:
            request = json.loads(line)
            if not isinstance(request, dict):
                raise ValueError("request must be an object")
        except ValueError as err:
            writer.write(json.dumps({"ok": False, "error": "BadRequest",
                                     "message": f"malformed JSON: {err}"}) + "\n")
            writer.flush()
            continue
        name = str(request.get("session", "default"))
        session = sessions.setdefault(name, Session())
        response = session.handle(request)
        writer.write(json.dumps(response) + "\n")
        writer.flush()


class _Handler(socketserver.StreamRequestHandler):
    def handle(self):
        server: WireServer = self.server.wire_server  # type: ignore[attr-defined]
        if not server.try_acquire_session():
            self.wfile.write((json.dumps({"ok": False, "error": "SessionLimit",
                                          "message": "too many sessions"}) + "\n").encode())
            return
        try:
            reader = (line.decode("utf-8") for line in self.rfile)
            writer = _TextWriter(self.wfile)
            serve_lines(reader, writer)
        finally:
            server.release_session()


class _TextWriter:
    def __init__(self, raw):
        self._raw = raw

    def write(self, text: str):
        self._raw.write(text.encode("utf-8"))

    def flush(self):
        self._raw.flush()


class WireServer:
    """Threaded TCP server; each connection is an isolated set of sessions."""

    def __init__(self, host: str = "127.0.0.1", port: int = 0, max_sessions: int = 64):
        self.max_sessions = max_sessions
        self._active = 0
        self._lock = threading.Lock()
        try:
            self._tcp = socketserver.ThreadingTCPServer((host, port), _Handler,
                                                        bind_and_activate=True)
        except OSError as err:
            raise BindFailed(f"cannot bind {host}:{port}: {err}") from err
        self._tcp.daemon_threads = True
        self._tcp.wire_server = self  # type: ignore[attr-defined]
        self._thread: threading.Thread | None = None

    @property
    def address(self) -> tuple[str, int]:
        return self._tcp.server_address[:2]

    def try_acquire_session(self) -> bool:
        with self._lock:
            if self._active >= self.max_sessions:
                return False
            self._active += 1
            return True

    def release_session(self):
        with self._lock:
            self._active -= 1

    def start(self):
        self._thread = threading.Thread(target=self._tcp.serve_forever, daemon=True)
        self._thread.start()
        return self

    def serve_forever(self):
        self._tcp.serve_forever()

    def stop(self):
        self._tcp.shutdown()
        self._tcp.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)


def serve_stdio(stdin=None, stdout=None):
    """Serve the same protocol over standard streams (one process, EOF ends)."""
    import sys

    serve_lines(stdin or sys.stdin, stdout or sys.stdout)


# -- client side -----------------------------------------------------------------

class WireEnvClient:
    """Minimal synchronous client for the env wire protocol."""

    def __init__(self, host: str, port: int, session: str = "default"):
        self._sock = socket.create_connection((host, port))
        self._reader = self._sock.makefile("r", encoding="utf-8")
        self._session = session

    def request(self, op: str, payload: dict | None = None) -> dict:
        message = {"op": op, "session": self._session}
        if payload is not None:
            message["payload"] = payload
        self._sock.sendall((json.dumps(message) + "\n").encode("utf-8"))
        line = self._reader.readline()
        if not line:
            raise ConnectionError("server closed the connection")
        response = json.loads(line)
        if not response.get("ok"):
            raise MemsuiteError(f"{response.get('error')}: {response.get('message')}")
        return response["payload"]

    def make(self, **config) -> int:
        return self.request("make", config)["env"]

    def spec(self, env_id: int) -> dict:
        return self.request("spec", {"env": env_id})

    def reset(self, env_id: int, seed: int | None = None):
        payload = {"env": env_id}
        if seed is not None:
            payload["seed"] = seed
        out = self.request("reset", payload)
        return decode_value(out["observation"]), decode_value(out["info"])

    def step(self, env_id: int, action):
        out = self.request("step", {"env": env_id, "action": encode_value(action)})
        return (decode_value(out["observation"]), out["reward"], out["terminated"],
                out["truncated"], decode_value(out["info"]))

    def close(self, env_id: int | None = None):
        payload = {} if env_id is None else {"env": env_id}
        return self.request("close", payload)

    def shutdown(self):
        try:
            self._sock.close()
        except OSError:
            pass


class WireAgent:
    """Harness agent that defers decisions to an external agent server.

    The agent server speaks the same NDJSON shape with ops ``act``
    (payload: observation, info; reply payload: action) and
    ``reset_memory``.
    """

    name = "wire"

    def __init__(self, address: str):
        host, _, port = address.rpartition(":")
        self._sock = socket.create_connection((host or "127.0.0.1", int(port)))
        self._reader = self._sock.makefile("r", encoding="utf-8")

    def _request(self, op: str, payload: dict | None = None):
        message = {"op": op}
        if payload is not None:
            message["payload"] = payload
        self._sock.sendall((json.dumps(message) + "\n").encode("utf-8"))
        response = json.loads(self._reader.readline())
        if not response.get("ok"):
            from .errors import AgentProtocol

            raise AgentProtocol(f"{response.get('error')}: {response.get('message')}")
        return response.get("payload")

    def reset_memory(self):
        self._request("reset_memory")

    def act(self, observation, info):
        payload = {"observation": encode_value(observation), "info": encode_value(info)}
        action = self._request("act", payload)["action"]
        return decode_value(action)
