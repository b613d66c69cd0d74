export { WireConnection, BoundEnv, BoundVectorEngine } from "./client.js";
export type { EnvConfig } from "./client.js";
export {
  readDataset,
  readHeader,
  readTrajectory,
  MAGIC,
  SCHEMA,
} from "./dataset.js";
export type { DatasetHeader, Trajectory } from "./dataset.js";
export { decodeValue, encodeAction } from "./protocol.js";
export type {
  DecodedValue,
  EnvSpec,
  Raster,
  SpaceSpec,
  StepInfo,
  StepResult,
  TaskMeta,
} from "./protocol.js";
export * from "./errors.js";
