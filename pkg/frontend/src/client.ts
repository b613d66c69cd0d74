/**
 * Wire-protocol client: connection, env handles, and a batched engine.
 *
 * One request gets one response, in order, per connection; the connection
 * keeps a FIFO of pending promises and settles them as lines arrive.
 * Handles follow the familiar call shape: reset(seed) -> [obs, info],
 * step(action) -> [obs, reward, terminated, truncated, info].
 */

import * as net from "node:net";
import * as readline from "node:readline";

import { HandleClosed, SuiteError, errorFromResponse } from "./errors.js";
import {
  DecodedValue,
  EnvSpec,
  StepInfo,
  StepResult,
  WireValue,
  decodeValue,
  encodeAction,
} from "./protocol.js";

interface WireResponse {
  ok: boolean;
  payload?: WireValue;
  error?: string;
  message?: string;
}

export interface EnvConfig {
  task_id: string;
  mode?: string | null;
  observation_mode?: "state" | "masked" | "rgb" | "masked+rgb";
  reward_mode?: "sparse" | "dense";
  seed?: number;
  task_params?: Record<string, unknown>;
}

export class WireConnection {
  private socket: net.Socket;
  private pending: Array<{
    resolve: (value: WireValue) => void;
    reject: (err: Error) => void;
  }> = [];
  private session: string;
  private closed = false;

  private constructor(socket: net.Socket, session: string) {
    this.socket = socket;
    this.session = session;
    const lines = readline.createInterface({ input: socket });
    lines.on("line", (line) => this.onLine(line));
    socket.on("close", () => this.failAll(new SuiteError("ConnectionClosed", "socket closed")));
    socket.on("error", (err) => this.failAll(new SuiteError("ConnectionError", String(err))));
  }

  static connect(host: string, port: number, session = "default"): Promise<WireConnection> {
    return new Promise((resolve, reject) => {
      const socket = net.createConnection({ host, port }, () =>
        resolve(new WireConnection(socket, session)),
      );
      socket.once("error", reject);
    });
  }

  private onLine(line: string) {
    const waiter = this.pending.shift();
    if (waiter === undefined) {
      return; // unsolicited line; protocol guarantees one reply per request
    }
    let response: WireResponse;
    try {
      response = JSON.parse(line) as WireResponse;
    } catch (err) {
      waiter.reject(new SuiteError("BadResponse", `unparseable reply: ${err}`));
      return;
    }
    if (!response.ok) {
      waiter.reject(errorFromResponse(response.error ?? "Error", response.message ?? ""));
      return;
    }
    waiter.resolve(response.payload as WireValue);
  }

  private failAll(err: Error) {
    this.closed = true;
    while (this.pending.length > 0) {
      this.pending.shift()!.reject(err);
    }
  }

  request(op: string, payload?: Record<string, unknown>): Promise<WireValue> {
    if (this.closed) {
      return Promise.reject(new HandleClosed("connection is closed"));
    }
    const message: Record<string, unknown> = { op, session: this.session };
    if (payload !== undefined) {
      message.payload = payload;
    }
    return new Promise((resolve, reject) => {
      this.pending.push({ resolve, reject });
      this.socket.write(JSON.stringify(message) + "\n");
    });
  }

  async makeEnv(config: EnvConfig): Promise<BoundEnv> {
    const payload = (await this.request("make", { ...config })) as {
      env: number;
      spec: unknown;
    };
    return new BoundEnv(this, payload.env, payload.spec as EnvSpec);
  }

  close() {
    this.closed = true;
    this.socket.end();
    this.socket.destroy();
  }
}

function asInfo(value: DecodedValue): StepInfo {
  return value as unknown as StepInfo;
}

/** One remote environment instance. */
export class BoundEnv {
  readonly spec: EnvSpec;
  private conn: WireConnection;
  private id: number;
  private open = true;

  constructor(conn: WireConnection, id: number, spec: EnvSpec) {
    this.conn = conn;
    this.id = id;
    this.spec = spec;
  }

  private guard() {
    if (!this.open) {
      throw new HandleClosed("environment handle already closed");
    }
  }

  async reset(seed?: number): Promise<[DecodedValue, StepInfo]> {
    this.guard();
    const payload: Record<string, unknown> = { env: this.id };
    if (seed !== undefined) {
      payload.seed = seed;
    }
    const out = (await this.conn.request("reset", payload)) as {
      observation: WireValue;
      info: WireValue;
    };
    return [decodeValue(out.observation), asInfo(decodeValue(out.info))];
  }

  async step(action: number | Float32Array | number[]): Promise<StepResult> {
    this.guard();
    const out = (await this.conn.request("step", {
      env: this.id,
      action: encodeAction(action),
    })) as {
      observation: WireValue;
      reward: number;
      terminated: boolean;
      truncated: boolean;
      info: WireValue;
    };
    return {
      observation: decodeValue(out.observation),
      reward: out.reward,
      terminated: out.terminated,
      truncated: out.truncated,
      info: asInfo(decodeValue(out.info)),
    };
  }

  async close(): Promise<void> {
    this.guard();
    this.open = false;
    await this.conn.request("close", { env: this.id });
  }
}

/**
 * Client-side batch engine over per-env wire calls.
 *
 * Lane seeds follow base + lane + n * episode, matching the native batch
 * engine, and a lane that finishes delivers its fresh episode's reset on
 * the next call with the action ignored.
 */
export class BoundVectorEngine {
  readonly lanes: BoundEnv[];
  private episodeIndex: number[];
  private pendingReset: boolean[];
  private baseSeed: number;

  private constructor(lanes: BoundEnv[], baseSeed: number) {
    this.lanes = lanes;
    this.baseSeed = baseSeed;
    this.episodeIndex = lanes.map(() => 0);
    this.pendingReset = lanes.map(() => true);
  }

  static async create(
    conn: WireConnection,
    config: EnvConfig,
    n: number,
    baseSeed: number,
  ): Promise<BoundVectorEngine> {
    const lanes: BoundEnv[] = [];
    for (let k = 0; k < n; k++) {
      lanes.push(await conn.makeEnv(config));
    }
    return new BoundVectorEngine(lanes, baseSeed);
  }

  laneSeed(lane: number, episode: number): number {
    return this.baseSeed + lane + this.lanes.length * episode;
  }

  async step(actions: Array<number | Float32Array | number[]>): Promise<StepResult[]> {
    if (actions.length !== this.lanes.length) {
      throw new SuiteError(
        "LaneActionShape",
        `batch carries ${actions.length} actions for ${this.lanes.length} lanes`,
      );
    }
    const results: StepResult[] = [];
    for (let lane = 0; lane < this.lanes.length; lane++) {
      if (this.pendingReset[lane]) {
        const [obs, info] = await this.lanes[lane].reset(
          this.laneSeed(lane, this.episodeIndex[lane]),
        );
        this.pendingReset[lane] = false;
        results.push({ observation: obs, reward: 0, terminated: false, truncated: false, info });
        continue;
      }
      const result = await this.lanes[lane].step(actions[lane]);
      if (result.terminated || result.truncated) {
        this.episodeIndex[lane] += 1;
        this.pendingReset[lane] = true;
      }
      results.push(result);
    }
    return results;
  }

  async close(): Promise<void> {
    for (const lane of this.lanes) {
      await lane.close();
    }
  }
}
