"""Control tasks: reference-integrator agreement, masking, noise degeneracy."""

import math

import numpy as np

import memsuite as ms
from conftest import make_env, rollout, stream_bytes


def reference_cartpole(state, actions):
    """Independent semi-implicit Euler integrator (vectorised numpy path)."""
    g, mc, mp, half, F, dt = 9.8, 1.0, 0.1, 0.5, 10.0, 0.02
    total_m = mc + mp
    pml = mp * half
    s = np.asarray(state, dtype=np.float64)
    out = []
    for a in actions:
        x, xd, th, thd = s
        force = F if a == 1 else -F
        temp = (force + pml * thd ** 2 * np.sin(th)) / total_m
        th_acc = (g * np.sin(th) - np.cos(th) * temp) / (
            half * (4.0 / 3.0 - mp * np.cos(th) ** 2 / total_m))
        x_acc = temp - pml * th_acc * np.cos(th) / total_m
        xd = xd + dt * x_acc
        x = x + dt * xd
        thd = thd + dt * th_acc
        th = th + dt * thd
        s = np.array([x, xd, th, thd])
        out.append(s.copy())
    return out


def test_cartpole_matches_reference_integrator():
    env = make_env("StatelessCartpole")
    env.reset(seed=33)
    start = tuple(env.state)
    actions = [(t % 2) for t in range(150)]
    trace = []
    for a in actions:
        env.step(a)
        trace.append(env.state)
        if env.finished:
            break
    ref = reference_cartpole(start, actions[:len(trace)])
    for got, want in zip(trace, ref):
        assert np.all(np.abs(np.asarray(got) - want) < 1e-12)


def test_cartpole_observation_excludes_positions():
    env = make_env("StatelessCartpole")
    obs, _ = env.reset(seed=0)
    assert obs.shape == (2,)
    r = env.step(1)
    # the observation must equal the hidden velocities, not positions
    assert r.observation[0] == np.float32(env.state[1])
    assert r.observation[1] == np.float32(env.state[3])


def test_cartpole_termination_bounds():
    env = make_env("StatelessCartpole")
    env.reset(seed=1)
    steps = 0
    while not env.finished:
        r = env.step(1)  # constant push destabilises quickly
        steps += 1
    assert r.terminated
    assert abs(env.state[2]) > 12 * 2 * math.pi / 360 or abs(env.state[0]) > 2.4


def test_noisy_cartpole_sigma_zero_equals_clean():
    clean = make_env("StatelessCartpole")
    noisy0 = make_env("NoisyStatelessCartpole", task_params={"noise_sigma": 0.0})
    acts = [0, 1] * 40
    assert stream_bytes(rollout(clean, acts, seed=5)) == stream_bytes(rollout(noisy0, acts, seed=5))


def test_noisy_cartpole_perturbs_observations_only():
    clean = make_env("StatelessCartpole")
    noisy = make_env("NoisyStatelessCartpole")
    clean.reset(seed=5)
    noisy.reset(seed=5)
    for a in (0, 1, 1, 0):
        rc = clean.step(a)
        rn = noisy.step(a)
        assert clean.state == noisy.state  # hidden dynamics identical
        assert rc.observation.tobytes() != rn.observation.tobytes()


def test_pendulum_reward_formula_and_obs():
    env = make_env("StatelessPendulum")
    obs, _ = env.reset(seed=8)
    assert obs.shape == (1,)
    theta, theta_dot = env.state
    angle = ((theta + math.pi) % (2 * math.pi)) - math.pi
    u = 1.5
    r = env.step(np.float32([u]))
    want = -(angle * angle + 0.1 * theta_dot * theta_dot + 0.001 * u * u)
    assert abs(r.reward - want) < 1e-12


def test_pendulum_torque_clamped():
    env = make_env("StatelessPendulum")
    env.reset(seed=8)
    a = env.state
    env.reset(seed=8)
    r_big = env.step(np.float32([100.0]))
    env.reset(seed=8)
    r_max = env.step(np.float32([2.0]))
    assert r_big.reward == r_max.reward
    assert r_big.observation.tobytes() == r_max.observation.tobytes()


def test_noisy_pendulum_sigma_zero_equals_clean():
    clean = make_env("StatelessPendulum")
    noisy0 = make_env("NoisyStatelessPendulum", task_params={"noise_sigma": 0.0})
    acts = [np.float32([0.5])] * 30
    assert stream_bytes(rollout(clean, acts, seed=4)) == stream_bytes(rollout(noisy0, acts, seed=4))


def test_bandit_payoffs_match_pretabulated_bernoulli():
    env = make_env("MultiarmedBandit")
    env.reset(seed=12)
    table = env.payoffs.copy()
    for t in range(100):
        arm = t % 10
        r = env.step(arm)
        assert r.reward == float(table[t, arm])
    assert r.truncated


def test_bandit_means_resampled_each_reset():
    env = make_env("MultiarmedBandit")
    env.reset(seed=1)
    first = env.means.copy()
    env.reset(seed=2)
    assert not np.allclose(first, env.means)
    env.reset(seed=1)
    assert np.allclose(first, env.means)
