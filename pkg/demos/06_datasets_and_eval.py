"""Collect an oracle dataset, validate it, and run the evaluation protocol.

The collector keeps exactly the requested number of successful episodes;
the validator replays a sample through a fresh environment and demands
byte equality on every recorded stream.
"""

import os
import tempfile

import memsuite as ms
from memsuite.datasets import collect_dataset, read_dataset, validate_dataset
from memsuite.harness import OracleAgent, RandomAgent, evaluate

out = os.path.join(tempfile.mkdtemp(), "shellgame_touch.mikd")
summary = collect_dataset("ShellGame", "Touch", n_traj=25, base_seed=1, out_path=out)
print("collected:", summary)

first = next(iter(read_dataset(out)))
print("first record: rgb", first.rgb.shape, "proprio", first.proprio.shape,
      "reward[-1] =", float(first.reward[-1]), "success[-1] =", int(first.success[-1]))

report = validate_dataset(out, replay_fraction=0.2)
print("validation ok:", report["ok"], "| replayed:", report["replayed"])

# the fixed-seed protocol: oracle vs random
oracle_report = evaluate(OracleAgent(),
                         ms.EnvConfig(task_id="ShellGameTouch", observation_mode="state"),
                         episodes=25, seed_start=1)
random_report = evaluate(RandomAgent(seed=0),
                         ms.EnvConfig(task_id="ShellGameTouch"),
                         episodes=25, seed_start=1)
print(f"\noracle: {oracle_report.success_rate_mean:.2f} "
      f"+/- {oracle_report.success_rate_sem:.2f}")
print(f"random: {random_report.success_rate_mean:.2f} "
      f"+/- {random_report.success_rate_sem:.2f}")
os.unlink(out)
