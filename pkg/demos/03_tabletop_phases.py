"""Watch a hide-and-select episode phase by phase, then save the frames.

Renders the shell game's top view at the key steps: ball shown, table
covered, and the action window.  Writes PNGs when Pillow is installed,
otherwise raw .npy arrays.
"""

import numpy as np

import memsuite as ms
from memsuite.oracles import oracle_action
from memsuite.tabletop import phase_of, render

env = ms.make(ms.EnvConfig(task_id="ShellGameTouch", observation_mode="state"))
obs, info = env.reset(seed=11)
print("hidden ball slot (oracle one-hot):", info["oracle"])

frames = {0: render(env.scene, "top")}
while not env.finished:
    result = env.step(oracle_action(env))
    t = result.info["elapsed_steps"]
    if t in (4, 5, 6) or result.terminated:
        frames[t] = render(env.scene, "top")
    print(f"t={t:>2} phase={result.info['phase']:<12} reward={result.reward:+.1f}"
          f"{'  <- success' if result.info['success'] else ''}")

print("\nphase schedule:", [(t, phase_of("ShellGame", "Touch", t)) for t in (0, 4, 5, 6, 89)])

try:
    from PIL import Image

    for t, frame in frames.items():
        Image.fromarray(frame).save(f"shellgame_t{t:02d}.png")
    print(f"wrote {len(frames)} PNG frames")
except ImportError:
    for t, frame in frames.items():
        np.save(f"shellgame_t{t:02d}.npy", frame)
    print(f"Pillow not installed; wrote {len(frames)} .npy frames")
