"""Command-line interface: subcommands, config file, exit codes."""

import json
import os
import subprocess
import sys

import pytest

from memsuite.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_list_shows_all_combinations(capsys):
    code, out, _ = run_cli(["list"], capsys)
    assert code == 0
    assert "32 tabletop task/mode combinations" in out
    assert "23 diagnostic tasks" in out
    for fragment in ("ShellGame", "RememberShapeAndColor", "ChainOfColors",
                     "PassiveTMaze", "MemoryLength"):
        assert fragment in out


def test_run_prints_step_log(capsys):
    code, out, _ = run_cli(["run", "--task", "MemoryLength", "--seed", "3",
                            "--agent", "random"], capsys)
    assert code == 0
    assert "episode done" in out
    assert "phase=observation" in out


def test_eval_oracle_on_shell_game(capsys):
    code, out, err = run_cli(["eval", "--task", "ShellGame", "--mode", "Touch",
                              "--obs", "state", "--agent", "oracle",
                              "--episodes", "10"], capsys)
    assert code == 0
    report = json.loads(out[:out.rindex("}") + 1])
    assert report["success_rate_mean"] == 1.0
    assert report["seeds"] == list(range(1, 11))


def test_collect_then_validate_pipeline(tmp_path, capsys):
    out_file = str(tmp_path / "ds.mikd")
    code, out, _ = run_cli(["collect", "--task", "RememberColor3",
                            "--n-traj", "10", "--out", out_file], capsys)
    assert code == 0
    summary = json.loads(out)
    assert summary["trajectories"] == 10
    code, out, _ = run_cli(["validate", out_file], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["ok"] and report["violations"] == []


def test_validate_exit_code_on_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.mikd"
    bad.write_bytes(b"NOPExxxxxxxxxxxxxxxx")
    code, out, err = run_cli(["validate", str(bad)], capsys)
    assert code == 1
    assert "BadMagic" in err


def test_usage_error_exit_code(capsys):
    assert main(["eval", "--task"]) == 2
    assert main(["nonsense"]) == 2


def test_config_file_presets_flags(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"task": "MemoryLength", "agent": "random",
                               "episodes": 4}))
    code, out, _ = run_cli(["--config", str(cfg), "eval"], capsys)
    assert code == 0
    report = json.loads(out[:out.rindex("}") + 1])
    assert report["episodes"] == 4
    assert report["task_id"] == "MemoryLength"


def test_cli_flag_overrides_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"task": "MemoryLength", "episodes": 4}))
    code, out, _ = run_cli(["--config", str(cfg), "eval", "--episodes", "2",
                            "--agent", "random"], capsys)
    assert code == 0
    report = json.loads(out[:out.rindex("}") + 1])
    assert report["episodes"] == 2


def test_mikasa_seed_env_var(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("MIKASA_SEED", "77")
    code, out, _ = run_cli(["run", "--task", "MemoryLength", "--agent", "random"],
                           capsys)
    assert code == 0
    assert "seed=77" in out


def test_bench_reports_rate(capsys):
    code, out, _ = run_cli(["bench", "--task", "MemoryLength", "--batch", "8",
                            "--calls", "5"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["steps_per_second"] > 0


def test_entrypoint_subprocess_smoke():
    proc = subprocess.run([sys.executable, "-m", "memsuite.cli", "list"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert "32 tabletop" in proc.stdout
