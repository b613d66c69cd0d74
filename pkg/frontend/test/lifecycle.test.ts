/** Handle lifecycle, typed errors, and the client-side batch engine. */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import {
  ActionShape,
  BoundVectorEngine,
  HandleClosed,
  UnknownTask,
  WireConnection,
} from "../src/index.js";
import { RunningServer, startServer } from "./helpers.js";

let server: RunningServer;
let conn: WireConnection;

beforeAll(async () => {
  server = await startServer();
  conn = await WireConnection.connect(server.host, server.port);
}, 60_000);

afterAll(() => {
  conn?.close();
  server?.stop();
});

describe("handles and errors", () => {
  it("surfaces native error names as typed exceptions", async () => {
    await expect(conn.makeEnv({ task_id: "NoSuchTask" })).rejects.toThrow(UnknownTask);
    const env = await conn.makeEnv({ task_id: "PassiveTMaze" });
    await env.reset(1);
    await expect(env.step(Float32Array.from([1, 2]))).rejects.toThrow(ActionShape);
    await env.close();
  });

  it("rejects use after close without corrupting the connection", async () => {
    const env = await conn.makeEnv({ task_id: "PassiveTMaze" });
    await env.reset(1);
    await env.close();
    await expect(env.reset(1)).rejects.toThrow(HandleClosed);
    // the connection still serves fresh handles
    const again = await conn.makeEnv({ task_id: "PassiveTMaze" });
    const [obs] = await again.reset(2);
    expect(obs).toBeInstanceOf(Float32Array);
    await again.close();
  });

  it("reports specs with the familiar space vocabulary", async () => {
    const env = await conn.makeEnv({ task_id: "MemoryLength" });
    expect(env.spec.action.kind).toBe("discrete");
    expect(env.spec.action.n).toBe(2);
    expect(env.spec.meta.timeout).toBe(11);
    await env.close();
  });
});

describe("client-side batch engine", () => {
  it("auto-resets finished lanes and replays a lane standalone", async () => {
    const engine = await BoundVectorEngine.create(
      conn,
      { task_id: "MemoryLength", task_params: { memory_length: 3 } },
      2,
      50,
    );
    const streams: number[][] = [[], []];
    for (let call = 0; call < 10; call++) {
      const results = await engine.step([1, 1]);
      results.forEach((r, lane) => {
        streams[lane].push(r.reward, r.info.elapsed_steps);
      });
    }
    // lane 1, episode 0 standalone with the schedule's seed
    const solo = await conn.makeEnv({
      task_id: "MemoryLength",
      task_params: { memory_length: 3 },
    });
    const replay: number[] = [];
    const [, info] = await solo.reset(engine.laneSeed(1, 0));
    replay.push(0, info.elapsed_steps);
    let done = false;
    while (!done) {
      const r = await solo.step(1);
      replay.push(r.reward, r.info.elapsed_steps);
      done = r.terminated || r.truncated;
    }
    expect(streams[1].slice(0, replay.length)).toEqual(replay);
    await engine.close();
    await solo.close();
  }, 60_000);
});
