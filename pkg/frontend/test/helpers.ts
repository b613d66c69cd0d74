/** Test plumbing: spawn the env server / native reference runs. */

import { ChildProcess, spawn } from "node:child_process";

export interface RunningServer {
  host: string;
  port: number;
  stop: () => void;
}

export function startServer(): Promise<RunningServer> {
  return new Promise((resolve, reject) => {
    const proc: ChildProcess = spawn(
      "python3",
      ["-m", "memsuite.cli", "serve", "--bind", "127.0.0.1:0"],
      { stdio: ["ignore", "pipe", "pipe"] },
    );
    let buffer = "";
    const onData = (chunk: Buffer) => {
      buffer += chunk.toString();
      const match = buffer.match(/serving on ([\d.]+):(\d+)/);
      if (match) {
        proc.stdout!.off("data", onData);
        resolve({
          host: match[1],
          port: parseInt(match[2], 10),
          stop: () => proc.kill("SIGTERM"),
        });
      }
    };
    proc.stdout!.on("data", onData);
    proc.stderr!.on("data", () => undefined);
    proc.on("error", reject);
    proc.on("exit", (code) => {
      if (!buffer.includes("serving on")) {
        reject(new Error(`server exited early (code ${code}): ${buffer}`));
      }
    });
    setTimeout(() => reject(new Error("server did not come up")), 30_000).unref();
  });
}

export function runPython(code: string): Promise<string> {
  return new Promise((resolve, reject) => {
    const proc = spawn("python3", ["-c", code], { stdio: ["ignore", "pipe", "pipe"] });
    let out = "";
    let err = "";
    proc.stdout.on("data", (c: Buffer) => (out += c.toString()));
    proc.stderr.on("data", (c: Buffer) => (err += c.toString()));
    proc.on("exit", (exitCode) => {
      if (exitCode === 0) {
        resolve(out);
      } else {
        reject(new Error(`python exited ${exitCode}: ${err}`));
      }
    });
    proc.on("error", reject);
  });
}
