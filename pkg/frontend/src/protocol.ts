/**
 * Wire value encoding shared with the server.
 *
 * Float vectors travel as JSON number arrays; every number is the exact
 * float64 widening of a float32, so `Float32Array.from` recovers the
 * original bytes.  Rasters travel as base64 raw bytes with shape metadata.
 */

export interface RasterPayload {
  __raster__: string;
  shape: number[];
  dtype: "uint8";
}

export interface Raster {
  data: Uint8Array;
  shape: number[];
}

export type WireValue =
  | number
  | boolean
  | string
  | null
  | number[]
  | RasterPayload
  | { [key: string]: WireValue };

export type DecodedValue =
  | number
  | boolean
  | string
  | null
  | Float32Array
  | Raster
  | { [key: string]: DecodedValue };

export function decodeValue(value: WireValue): DecodedValue {
  if (Array.isArray(value)) {
    return Float32Array.from(value);
  }
  if (value !== null && typeof value === "object") {
    if ("__raster__" in value) {
      const raster = value as RasterPayload;
      return {
        data: new Uint8Array(Buffer.from(raster.__raster__, "base64")),
        shape: raster.shape,
      };
    }
    const out: { [key: string]: DecodedValue } = {};
    for (const [k, v] of Object.entries(value)) {
      out[k] = decodeValue(v as WireValue);
    }
    return out;
  }
  return value;
}

export function encodeAction(action: number | Float32Array | number[]): WireValue {
  if (typeof action === "number") {
    return action;
  }
  const f32 = action instanceof Float32Array ? action : Float32Array.from(action);
  return Array.from(f32);
}

export interface StepInfo {
  success: boolean;
  phase: string;
  elapsed_steps: number;
  oracle: Float32Array;
  prompt?: Float32Array;
  [key: string]: DecodedValue | undefined;
}

export interface StepResult {
  observation: DecodedValue;
  reward: number;
  terminated: boolean;
  truncated: boolean;
  info: StepInfo;
}

export interface SpaceSpec {
  kind: "discrete" | "box";
  n?: number;
  shape?: number[];
  low?: number | (number | null)[] | null;
  high?: number | (number | null)[] | null;
  dtype: string;
}

export interface TaskMeta {
  task_id: string;
  memory_types: string[];
  correlation_horizon: number;
  timeout: number;
  modes: string[];
  oracle_info_schema: [string, number][];
  prompt_schema: [string, number][];
  reward_modes: string[];
  discount: number;
  notes: string;
}

export interface EnvSpec {
  observation: SpaceSpec | { [key: string]: SpaceSpec };
  action: SpaceSpec;
  meta: TaskMeta;
}
