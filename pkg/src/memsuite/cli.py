"""Command-line front end.

Subcommands: ``list`` (catalog), ``run`` (one episode with a step log),
``eval`` (fixed-seed protocol), ``collect`` (oracle datasets), ``validate``
(dataset check), ``serve`` (wire protocol), ``bench`` (steps/second).
A JSON config file can preset any flag (explicit flags win), and the
``MIKASA_SEED`` environment variable sets the default base seed.  Exit
codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import all_task_metas, batch_make, make
from .datasets import collect_dataset, validate_dataset
from .errors import MemsuiteError
from .harness import OracleAgent, RandomAgent, evaluate
from .registry import families
from .server import WireAgent, WireServer, serve_stdio
from .spaces import sample
from .types import EnvConfig

USAGE_ERROR, RUNTIME_ERROR = 2, 1


def _default_seed() -> int:
    raw = os.environ.get("MIKASA_SEED")
    try:
        return int(raw) if raw else 0
    except ValueError:
        return 0


def _env_config(args) -> EnvConfig:
    return EnvConfig(
        task_id=args.task,
        mode=args.mode,
        observation_mode=args.obs,
        reward_mode=args.reward,
        seed=getattr(args, "seed", 0) or 0,
        task_params=json.loads(args.task_params) if getattr(args, "task_params", None) else {},
    )


def _agent(spec: str, seed: int):
    if spec == "random":
        return RandomAgent(seed=seed)
    if spec == "oracle":
        return OracleAgent()
    if spec.startswith("wire:"):
        return WireAgent(spec[len("wire:"):])
    raise MemsuiteError(f"unknown agent {spec!r} (random | oracle | wire:HOST:PORT)")


def cmd_list(args) -> int:
    metas = all_task_metas()
    groups = {e.family: e.group for e in families()}
    if args.json:
        rows = [{
            "task_id": m.task_id, "mode": mode, "group": groups[m.task_id],
            "memory_types": list(m.memory_types), "correlation_horizon": m.correlation_horizon,
            "timeout": m.timeout, "notes": m.notes,
        } for m in metas for mode in [m.modes[0]] for _ in [0]]
        print(json.dumps(rows, indent=2))
        return 0
    header = f"{'task':<24}{'mode':<10}{'group':<12}{'memory':<24}{'horizon':>8}{'timeout':>8}"
    print(header)
    print("-" * len(header))
    tabletop = diagnostic = 0
    for entry in families():
        for mode in entry.modes:
            meta = entry.describe(mode, dict(entry.defaults))
            mem = ",".join(meta.memory_types)
            print(f"{entry.family:<24}{mode:<10}{entry.group:<12}{mem:<24}"
                  f"{meta.correlation_horizon:>8}{meta.timeout:>8}"
                  f"{'  *' if meta.notes else ''}")
            if entry.group == "tabletop":
                tabletop += 1
            else:
                diagnostic += 1
    print(f"\n{tabletop} tabletop task/mode combinations, {diagnostic} diagnostic tasks"
          f" ({tabletop + diagnostic} total).  * = defaults noted in metadata.")
    return 0


def cmd_run(args) -> int:
    config = _env_config(args)
    env = make(config)
    agent = _agent(args.agent, args.seed)
    if hasattr(agent, "bind_env"):
        agent.bind_env(env)
    agent.reset_memory()
    obs, info = env.reset(seed=args.seed)
    print(f"# {config.task_id} seed={args.seed} obs={config.observation_mode} "
          f"reward={config.reward_mode}")
    print(f"reset      phase={info['phase']:<12} success=0")
    total = 0.0
    while not env.finished:
        action = agent.act(obs, info)
        result = env.step(action)
        obs, info = result.observation, result.info
        total += result.reward
        flags = "T" if result.terminated else ("t" if result.truncated else " ")
        print(f"step {info['elapsed_steps']:>4}  phase={info['phase']:<12} "
              f"reward={result.reward:+.4f}  success={int(info['success'])} {flags}")
    print(f"# episode done: steps={env.elapsed_steps} return={total:.4f} "
          f"success={int(info['success'])}")
    return 0


def cmd_eval(args) -> int:
    config = _env_config(args)
    agent = _agent(args.agent, args.seed_start)
    report = evaluate(agent, config, episodes=args.episodes,
                      seed_start=args.seed_start,
                      episode_timeout_s=args.episode_timeout)
    text = report.to_json(indent=2)
    if args.out:
        with open(args.out, "w") as f:
            f.write(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)
    print(f"# {report.task_id}-{report.mode} [{report.agent}] "
          f"success {report.success_rate_mean:.2f} +/- {report.success_rate_sem:.2f} "
          f"({report.episodes} episodes)", file=sys.stderr)
    return 0


def cmd_collect(args) -> int:
    def progress(done, total):
        if done % 100 == 0 or done == total:
            print(f"  {done}/{total} trajectories", file=sys.stderr)

    summary = collect_dataset(args.task, args.mode, args.n_traj, args.base_seed,
                              args.out, reward_mode=args.reward, progress=progress)
    print(json.dumps(summary, indent=2))
    return 0


def cmd_validate(args) -> int:
    report = validate_dataset(args.path, replay_fraction=args.replay_fraction)
    print(json.dumps(report, indent=2))
    return 0 if report["ok"] else RUNTIME_ERROR


def cmd_serve(args) -> int:
    if args.bind == "stdio":
        serve_stdio()
        return 0
    host, _, port = args.bind.rpartition(":")
    server = WireServer(host or "127.0.0.1", int(port or 0),
                        max_sessions=args.max_sessions)
    host, port = server.address
    print(f"serving on {host}:{port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.stop()
    return 0


def cmd_bench(args) -> int:
    config = _env_config(args)
    engine = batch_make(config, args.batch, base_seed=args.seed, workers=args.workers)
    engine.reset()
    space = engine.envs[0].action_space
    rng = np.random.Generator(np.random.Philox(key=1))
    actions = [sample(space, rng) for _ in range(64)]
    # warmup
    for i in range(5):
        engine.step([actions[i % 64]] * args.batch)
    t0 = time.perf_counter()
    for i in range(args.calls):
        engine.step([actions[i % 64]] * args.batch)
    dt = time.perf_counter() - t0
    rate = args.calls * args.batch / dt
    print(json.dumps({"task_id": config.task_id, "mode": config.mode,
                      "observation_mode": config.observation_mode,
                      "batch": args.batch, "calls": args.calls,
                      "wall_seconds": round(dt, 3),
                      "steps_per_second": round(rate, 1)}, indent=2))
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(prog="memsuite",
                                     description="memory-intensive environment suite")
    parser.add_argument("--config", help="JSON file presetting any subcommand flag")
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers = {}

    subparsers["list"] = sub.add_parser("list", help="task catalog")
    subparsers["list"].add_argument("--json", action="store_true")

    def add_env_flags(p, include_agent=True):
        p.add_argument("--task", required=False)
        p.add_argument("--mode", default=None)
        p.add_argument("--obs", default="masked",
                       choices=["state", "masked", "rgb", "masked+rgb"])
        p.add_argument("--reward", default="sparse", choices=["sparse", "dense"])
        p.add_argument("--task-params", dest="task_params", default=None,
                       help="JSON object of parameter overrides")
        if include_agent:
            p.add_argument("--agent", default="random",
                           help="random | oracle | wire:HOST:PORT")

    run_p = subparsers["run"] = sub.add_parser("run", help="single episode with a per-step log")
    add_env_flags(run_p)
    run_p.add_argument("--seed", type=int, default=None)

    eval_p = subparsers["eval"] = sub.add_parser("eval", help="fixed-seed evaluation protocol")
    add_env_flags(eval_p)
    eval_p.add_argument("--episodes", type=int, default=100)
    eval_p.add_argument("--seed-start", dest="seed_start", type=int, default=None)
    eval_p.add_argument("--episode-timeout", dest="episode_timeout", type=float, default=None)
    eval_p.add_argument("--out", default=None)

    col_p = subparsers["collect"] = sub.add_parser("collect", help="record oracle trajectories")
    col_p.add_argument("--task", required=True)
    col_p.add_argument("--mode", default=None)
    col_p.add_argument("--n-traj", dest="n_traj", type=int, default=1000)
    col_p.add_argument("--base-seed", dest="base_seed", type=int, default=None)
    col_p.add_argument("--reward", default="dense", choices=["sparse", "dense"])
    col_p.add_argument("--out", required=True)

    val_p = subparsers["validate"] = sub.add_parser("validate", help="check a dataset file")
    val_p.add_argument("path")
    val_p.add_argument("--replay-fraction", dest="replay_fraction", type=float, default=0.05)

    srv_p = subparsers["serve"] = sub.add_parser("serve", help="wire-protocol env server")
    srv_p.add_argument("--bind", default="127.0.0.1:7777",
                       help="HOST:PORT or 'stdio'")
    srv_p.add_argument("--max-sessions", dest="max_sessions", type=int, default=64)

    bench_p = subparsers["bench"] = sub.add_parser("bench", help="aggregate steps/second")
    add_env_flags(bench_p, include_agent=False)
    bench_p.add_argument("--batch", type=int, default=1024)
    bench_p.add_argument("--calls", type=int, default=100)
    bench_p.add_argument("--workers", type=int, default=None)
    bench_p.add_argument("--seed", type=int, default=None)

    return parser, subparsers


_COMMANDS = {
    "list": cmd_list,
    "run": cmd_run,
    "eval": cmd_eval,
    "collect": cmd_collect,
    "validate": cmd_validate,
    "serve": cmd_serve,
    "bench": cmd_bench,
}


def _apply_config_file(args, parser, subparser):
    # config fills flags still at their defaults; explicit flags win
    if not args.config:
        return args
    try:
        with open(args.config) as f:
            preset = json.load(f)
    except (OSError, ValueError) as err:
        parser.error(f"cannot read config file: {err}")
    for key, value in preset.items():
        attr = key.replace("-", "_")
        if hasattr(args, attr) and getattr(args, attr) == subparser.get_default(attr):
            setattr(args, attr, value)
    return args


def main(argv=None) -> int:
    parser, subparsers = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return USAGE_ERROR if err.code not in (0, None) else 0
    args = _apply_config_file(args, parser, subparsers[args.command])
    base_seed = _default_seed()
    for attr, fallback in (("seed", base_seed), ("base_seed", base_seed),
                           ("seed_start", base_seed or 1)):
        if hasattr(args, attr) and getattr(args, attr) is None:
            setattr(args, attr, fallback)
    if getattr(args, "task", "") is None or getattr(args, "task", "x") == "":
        parser.error("--task is required")
    try:
        return _COMMANDS[args.command](args)
    except MemsuiteError as err:
        print(f"error [{err.code}]: {err}", file=sys.stderr)
        return RUNTIME_ERROR
    except KeyboardInterrupt:
        return RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
