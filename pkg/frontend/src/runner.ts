/**
 * Low-level bridge to the `permcount` command line tool.
 *
 * The bindings never import the core library; every call shells out to the
 * CLI and reads its output.  Long sequences travel through temporary files
 * rather than argv, which has a hard per-argument size limit on Linux.
 */

import { spawnSync } from "child_process";
import { mkdtempSync, rmSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";

import { errorForExit } from "./errors.js";

/** Environment override, e.g. PERMCOUNT_CLI="python3 -m permcount.cli". */
export const CLI_ENV = "PERMCOUNT_CLI";

const FALLBACKS = [["permcount"], ["python3", "-m", "permcount.cli"]];

// One resolved command per override value, so flipping the environment
// variable between calls cannot serve a stale command.
const resolvedFor = new Map<string, string[]>();

/** Locate a working CLI command; probes once and remembers the answer. */
export function resolveCli(): string[] {
  const override = (process.env[CLI_ENV] ?? "").trim();
  const hit = resolvedFor.get(override);
  if (hit) {
    return hit;
  }
  const candidates = override ? [override.split(/\s+/)] : FALLBACKS;
  const tried: string[] = [];
  for (const cmd of candidates) {
    const probe = spawnSync(cmd[0], [...cmd.slice(1), "--help"], { encoding: "utf8" });
    if (!probe.error && probe.status === 0) {
      resolvedFor.set(override, cmd);
      return cmd;
    }
    tried.push(cmd.join(" "));
  }
  throw new Error(
    `cannot run the permcount command line tool (tried: ${tried.join(", ")}); ` +
      `install the core package or point ${CLI_ENV} at it`,
  );
}

export interface RunResult {
  stdout: string;
  stderr: string;
}

/** Run one CLI command; returns its output on success, throws a typed error otherwise. */
export function runCli(args: string[]): RunResult {
  const cmd = resolveCli();
  const proc = spawnSync(cmd[0], [...cmd.slice(1), ...args], {
    encoding: "utf8",
    maxBuffer: 64 * 1024 * 1024,
  });
  if (proc.error) {
    throw proc.error;
  }
  if (proc.status !== 0) {
    throw errorForExit(proc.status ?? -1, coreMessage(proc.stderr));
  }
  return { stdout: proc.stdout, stderr: proc.stderr };
}

/** The "error: …" line the core prints, shorn of the prefix; advisory notes are skipped. */
function coreMessage(stderr: string): string {
  const lines = stderr.trim().split("\n");
  for (let i = lines.length - 1; i >= 0; i--) {
    if (lines[i].startsWith("error: ")) {
      return lines[i].slice("error: ".length);
    }
  }
  return stderr.trim();
}

/** Write content to a fresh temporary file and hand its path to `body`. */
export function withTempFile<T>(name: string, content: string, body: (path: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "permcount-"));
  try {
    const file = join(dir, name);
    writeFileSync(file, content);
    return body(file);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}
