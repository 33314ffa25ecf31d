/**
 * Script bindings for the permcount core.
 *
 * Three entry points cover the statistical use case: `count` for one
 * pattern, `profile4` for the full vector of 4-pattern counts, and `tstar`
 * for the t* independence statistic.  Everything else stays on the command
 * line.  Counts are arbitrary precision, so they come back as bigint; exact
 * ratios keep their numerator and denominator.
 *
 * Input sequences are validated on the core side; whatever it rejects
 * surfaces here as a typed error carrying the core's message.  Calls are
 * independent of each other — no state is shared between them.
 *
 * @example
 * import { count, profile4, tstar } from "permcount-bindings";
 *
 * count([1, 3, 2], [2, 3, 6, 4, 7, 5, 1]);    // 7n
 * profile4([5, 1, 2, 3, 4, 6])["3124"];       // 6n
 * tstar([1, 2, 3, 4, 5], [2.5, 1.5, 3.5, 0.5, 4.5]).normalized.toString();
 */

import { Rational } from "./rational.js";
import { runCli, withTempFile } from "./runner.js";

export {
  FastPathUnavailableError,
  InvalidInputError,
  PermcountError,
  TiesPresentError,
} from "./errors.js";
export { Rational } from "./rational.js";
export { CLI_ENV, resolveCli } from "./runner.js";

// Kept in lockstep with the core package.
export const VERSION = "0.1.0";

export type TiePolicy = "strict" | "stable";

export interface TStarResult {
  /** Sample size after rank transformation. */
  n: number;
  /** Total count of the eight extreme 4-patterns, exact. */
  raw: bigint;
  /** raw / C(n, 4), exact and in lowest terms. */
  normalized: Rational;
}

function invariant(check: boolean, message: string): asserts check {
  if (!check) {
    throw new TypeError(message);
  }
}

function oneLine(values: readonly number[]): string {
  return values.join(" ") + "\n";
}

/** Number of occurrences of `pattern` in `perm`. */
export function count(pattern: readonly number[], perm: readonly number[]): bigint {
  invariant(pattern.length > 0, "pattern must be a nonempty integer sequence");
  invariant(perm.length > 0, "perm must be a nonempty integer sequence");
  const result = withTempFile("perm.txt", oneLine(perm), (path) =>
    runCli(["count", pattern.join(" "), "--file", path, "--json"]),
  );
  const payload = JSON.parse(result.stdout) as { count: string };
  return BigInt(payload.count);
}

/** All 24 counts of 4-patterns in `perm`, keyed by pattern digits ("1234"…"4321"). */
export function profile4(perm: readonly number[]): Record<string, bigint> {
  invariant(perm.length > 0, "perm must be a nonempty integer sequence");
  const result = withTempFile("perm.txt", oneLine(perm), (path) =>
    runCli(["profile", "4", "--file", path]),
  );
  const raw = JSON.parse(result.stdout) as Record<string, string>;
  const counts: Record<string, bigint> = {};
  for (const [pat, value] of Object.entries(raw)) {
    counts[pat] = BigInt(value);
  }
  return counts;
}

/**
 * The t* independence statistic of a bivariate sample, exact.
 *
 * Ranks are taken on the core side.  Under the default "strict" policy tied
 * values raise TiesPresentError; under "stable" ties break by sample order.
 */
export function tstar(
  xs: readonly number[],
  ys: readonly number[],
  ties: TiePolicy = "strict",
): TStarResult {
  invariant(
    xs.length === ys.length,
    `xs and ys must have equal length, got ${xs.length} and ${ys.length}`,
  );
  invariant(xs.length > 0, "sample must be nonempty");
  invariant(
    xs.every(Number.isFinite) && ys.every(Number.isFinite),
    "sample values must be finite numbers",
  );
  const rows = xs.map((x, i) => `${x},${ys[i]}`).join("\n") + "\n";
  const result = withTempFile("sample.csv", rows, (path) =>
    runCli(["tstar", "--csv", path, "--ties", ties]),
  );
  const payload = JSON.parse(result.stdout) as {
    n: number;
    tstar_raw: string;
    tstar_normalized: string;
  };
  return {
    n: payload.n,
    raw: BigInt(payload.tstar_raw),
    normalized: Rational.parse(payload.tstar_normalized),
  };
}
