"""Quickstart: make a task, reset it, step it, read the info channel.

Every episode is a function of (config, seed): run this script twice and
you will see the identical numbers.
"""

import numpy as np

import memsuite as ms

# A diagnostic task.  MemoryLength shows context bits at step 0 and asks
# for one of them at the final step.
env = ms.make(ms.EnvConfig(task_id="MemoryLength", task_params={"memory_length": 6}))
obs, info = env.reset(seed=42)
print("observation at t=0:", obs, "| phase:", info["phase"])
print("oracle (debug) vector:", info["oracle"])

while not env.finished:
    result = env.step(0)  # always answer "-1"
print("final reward:", result.reward, "| success:", result.info["success"])

# A tabletop task with a fused id.  The masked observation hides whatever
# the current phase says is off the table.
env = ms.make(ms.EnvConfig(task_id="RememberColor9", observation_mode="masked"))
obs, info = env.reset(seed=7)
obs_spec, act_spec, meta = env.spec()
print(f"\n{meta.task_id}: timeout={meta.timeout}, memory={meta.memory_types}, "
      f"horizon={meta.correlation_horizon}")
print("masked obs dim:", obs.shape, "| action box:", act_spec.shape)

noop = np.zeros(4, dtype=np.float32)
for _ in range(12):
    result = env.step(noop)
    print(f"t={result.info['elapsed_steps']:>2} phase={result.info['phase']}")
    if result.info["phase"] == "selection":
        break
