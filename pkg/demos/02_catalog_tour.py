"""Tour the diagnostic catalog: one scored episode per task.

A tiny scripted player per family shows what each task asks for; most are
driven here with a random policy just to surface the reward scales.
"""

import numpy as np

import memsuite as ms
from memsuite.diagnostics import CATALOG
from memsuite.spaces import sample

rng = np.random.Generator(np.random.Philox(key=0))

print(f"{'task':<26}{'memory':<24}{'steps':>6}{'return':>10}")
for family, row in CATALOG.items():
    env = ms.make(ms.EnvConfig(task_id=family))
    env.reset(seed=1)
    total = 0.0
    while not env.finished:
        total += env.step(sample(env.action_space, rng)).reward
    print(f"{family:<26}{','.join(row.memory_types):<24}"
          f"{env.elapsed_steps:>6}{total:>10.3f}")

print("\nperfect-play maxima (from the catalog rows):")
for family, row in CATALOG.items():
    if row.perfect_reward is not None:
        print(f"  {family:<26} {row.perfect_reward}")
