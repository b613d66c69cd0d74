/** Dataset reader: shape fidelity against a file collected by the CLI. */

import { execFileSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { BadMagic, readDataset, readHeader, readTrajectory } from "../src/index.js";
import { runPython } from "./helpers.js";

let dir: string;
let file: string;

beforeAll(() => {
  dir = fs.mkdtempSync(path.join(os.tmpdir(), "memsuite-ds-"));
  file = path.join(dir, "rc3.mikd");
  execFileSync("python3", [
    "-m", "memsuite.cli", "collect",
    "--task", "RememberColor3", "--n-traj", "6",
    "--base-seed", "1", "--out", file,
  ], { stdio: "ignore" });
}, 120_000);

afterAll(() => {
  fs.rmSync(dir, { recursive: true, force: true });
});

describe("dataset reader", () => {
  it("parses the self-describing header", () => {
    const { header } = readHeader(file);
    expect(header.task_id).toBe("RememberColor");
    expect(header.mode).toBe("3");
    expect(header.schema).toEqual(["rgb", "proprio", "action", "reward", "success", "done"]);
    expect(header.step_shapes.rgb).toEqual([128, 128, 6]);
    expect(header.trajectories).toHaveLength(6);
  });

  it("exposes trajectory arrays with the declared shapes", () => {
    let count = 0;
    for (const traj of readDataset(file)) {
      count += 1;
      const steps = traj.steps;
      expect(traj.rgb.shape).toEqual([steps, 128, 128, 6]);
      expect(traj.rgb.data.length).toBe(steps * 128 * 128 * 6);
      expect(traj.proprio.shape).toEqual([steps, 8]);
      expect(traj.action.shape).toEqual([steps, 4]);
      expect(traj.reward.length).toBe(steps);
      // done exactly at the last index; final step successful
      expect(traj.done[steps - 1]).toBe(1);
      expect(Array.from(traj.done.subarray(0, steps - 1)).every((d) => d === 0)).toBe(true);
      expect(traj.success[steps - 1]).toBe(1);
    }
    expect(count).toBe(6);
  });

  it("matches the native reader byte for byte", async () => {
    const native = JSON.parse(
      await runPython(`
import hashlib, json
from memsuite.datasets import read_dataset
h = hashlib.sha256()
for rec in read_dataset(${JSON.stringify(file)}):
    h.update(rec.rgb.tobytes()); h.update(rec.proprio.tobytes())
    h.update(rec.action.tobytes()); h.update(rec.reward.tobytes())
print(json.dumps({"digest": h.hexdigest()}))
`),
    ) as { digest: string };
    const { createHash } = await import("node:crypto");
    const h = createHash("sha256");
    for (const traj of readDataset(file)) {
      h.update(Buffer.from(traj.rgb.data.buffer, traj.rgb.data.byteOffset, traj.rgb.data.byteLength));
      h.update(Buffer.from(traj.proprio.data.buffer, 0, traj.proprio.data.byteLength));
      h.update(Buffer.from(traj.action.data.buffer, 0, traj.action.data.byteLength));
      h.update(Buffer.from(traj.reward.buffer, 0, traj.reward.byteLength));
    }
    expect(h.digest("hex")).toBe(native.digest);
  }, 60_000);

  it("rejects a corrupt magic", () => {
    const bad = path.join(dir, "bad.mikd");
    const data = fs.readFileSync(file);
    data.write("NOPE", 0, "ascii");
    fs.writeFileSync(bad, data);
    expect(() => readTrajectory(bad, 0)).toThrow(BadMagic);
  });
});
