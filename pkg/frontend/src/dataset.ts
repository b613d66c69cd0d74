/**
 * Reader for the offline trajectory container.
 *
 * Layout: magic "MIKD", u32 version, u64 header length, UTF-8 JSON header,
 * then raw little-endian arrays per trajectory in schema order.  The
 * header carries per-trajectory offsets (relative to payload start), step
 * counts, and episode seeds, so the file needs no out-of-band knowledge.
 */

import * as fs from "node:fs";

import { BadMagic, SchemaMismatch, TruncatedPayload } from "./errors.js";

export const MAGIC = "MIKD";
export const SCHEMA = ["rgb", "proprio", "action", "reward", "success", "done"] as const;

export interface DatasetHeader {
  format: string;
  version: number;
  task_id: string;
  mode: string;
  reward_mode: string;
  schema: string[];
  dtypes: Record<string, string>;
  step_shapes: Record<string, number[]>;
  trajectories: Array<{ offset: number; steps: number; seed: number }>;
  seed_range: [number, number];
  discarded: number;
  generator: string;
  suite_version: string;
}

export interface Trajectory {
  rgb: { data: Uint8Array; shape: number[] };
  proprio: { data: Float32Array; shape: number[] };
  action: { data: Float32Array; shape: number[] };
  reward: Float32Array;
  success: Uint8Array;
  done: Uint8Array;
  seed: number;
  steps: number;
}

const ITEM_SIZE: Record<string, number> = { uint8: 1, float32: 4 };

function perStepElements(header: DatasetHeader, field: string): number {
  return header.step_shapes[field].reduce((a, b) => a * b, 1);
}

function trajectoryBytes(header: DatasetHeader, steps: number): number {
  let total = 0;
  for (const field of header.schema) {
    total += steps * perStepElements(header, field) * ITEM_SIZE[header.dtypes[field]];
  }
  return total;
}

export function readHeader(path: string): { header: DatasetHeader; payloadStart: number } {
  const fd = fs.openSync(path, "r");
  try {
    const prefix = Buffer.alloc(16);
    fs.readSync(fd, prefix, 0, 16, 0);
    if (prefix.subarray(0, 4).toString("ascii") !== MAGIC) {
      throw new BadMagic("BadMagic", `${path} does not start with ${MAGIC}`);
    }
    const version = prefix.readUInt32LE(4);
    if (version !== 1) {
      throw new SchemaMismatch("SchemaMismatch", `unsupported version ${version}`);
    }
    const headerLen = Number(prefix.readBigUInt64LE(8));
    const raw = Buffer.alloc(headerLen);
    const got = fs.readSync(fd, raw, 0, headerLen, 16);
    if (got !== headerLen) {
      throw new TruncatedPayload("TruncatedPayload", "header truncated");
    }
    const header = JSON.parse(raw.toString("utf-8")) as DatasetHeader;
    if (header.schema.join(",") !== SCHEMA.join(",")) {
      throw new SchemaMismatch("SchemaMismatch", `unexpected schema ${header.schema}`);
    }
    return { header, payloadStart: 16 + headerLen };
  } finally {
    fs.closeSync(fd);
  }
}

export function readTrajectory(path: string, index: number): Trajectory {
  const { header, payloadStart } = readHeader(path);
  const entry = header.trajectories[index];
  if (entry === undefined) {
    throw new SchemaMismatch("SchemaMismatch", `no trajectory ${index}`);
  }
  const steps = entry.steps;
  const need = trajectoryBytes(header, steps);
  const size = fs.statSync(path).size;
  const start = payloadStart + entry.offset;
  if (start + need > size) {
    throw new TruncatedPayload("TruncatedPayload", `trajectory ${index} exceeds file`);
  }
  const buf = Buffer.alloc(need);
  const fd = fs.openSync(path, "r");
  try {
    fs.readSync(fd, buf, 0, need, start);
  } finally {
    fs.closeSync(fd);
  }

  let cursor = 0;
  const fields: Record<string, Uint8Array | Float32Array> = {};
  for (const field of header.schema) {
    const elements = steps * perStepElements(header, field);
    const bytes = elements * ITEM_SIZE[header.dtypes[field]];
    const slice = buf.subarray(cursor, cursor + bytes);
    cursor += bytes;
    if (header.dtypes[field] === "uint8") {
      fields[field] = new Uint8Array(slice);
    } else {
      // copy to guarantee 4-byte alignment for the Float32Array view
      const aligned = new ArrayBuffer(bytes);
      new Uint8Array(aligned).set(slice);
      fields[field] = new Float32Array(aligned);
    }
  }
  return {
    rgb: { data: fields.rgb as Uint8Array, shape: [steps, ...header.step_shapes.rgb] },
    proprio: { data: fields.proprio as Float32Array, shape: [steps, ...header.step_shapes.proprio] },
    action: { data: fields.action as Float32Array, shape: [steps, ...header.step_shapes.action] },
    reward: fields.reward as Float32Array,
    success: fields.success as Uint8Array,
    done: fields.done as Uint8Array,
    seed: entry.seed,
    steps,
  };
}

export function* readDataset(path: string): Generator<Trajectory> {
  const { header } = readHeader(path);
  for (let i = 0; i < header.trajectories.length; i++) {
    yield readTrajectory(path, i);
  }
}
