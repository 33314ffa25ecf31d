/**
 * Regenerate vectors/cases.json.
 *
 * For every case this shells the command line directly — the same external
 * interface the bindings use, but none of their parsing — and stores the
 * printed strings untouched.  Run from the package root:
 *
 *   npm run vectors
 */

import { writeFileSync } from "fs";
import { join } from "path";

import { runCli, withTempFile } from "../src/runner.js";
import {
  INLINE_LIMIT,
  buildCases,
  materializePerm,
  sampleOf,
  type VectorCase,
  type VectorExpected,
} from "./vectorlib.js";

function record(c: VectorCase): VectorExpected {
  const perm = materializePerm(c.perm);
  const line = perm.join(" ") + "\n";

  const countOut = withTempFile("perm.txt", line, (path) =>
    runCli(["count", c.pattern.join(" "), "--file", path, "--json"]),
  );
  const count = (JSON.parse(countOut.stdout) as { count: string }).count;

  const profileOut = withTempFile("perm.txt", line, (path) =>
    runCli(["profile", "4", "--file", path]),
  );
  const profile4 = JSON.parse(profileOut.stdout) as Record<string, string>;

  const { xs, ys } = sampleOf(c);
  const csv = xs.map((x, i) => `${x},${ys[i]}`).join("\n") + "\n";
  const tstarOut = withTempFile("sample.csv", csv, (path) =>
    runCli(["tstar", "--csv", path, "--ties", c.ties]),
  );
  const payload = JSON.parse(tstarOut.stdout) as {
    n: number;
    tstar_raw: string;
    tstar_normalized: string;
  };

  return {
    count,
    profile4,
    tstar: { n: payload.n, raw: payload.tstar_raw, normalized: payload.tstar_normalized },
  };
}

function main(): void {
  const out: VectorCase[] = [];
  for (const c of buildCases()) {
    const expected = record(c);
    const perm =
      !Array.isArray(c.perm) && c.perm.n <= INLINE_LIMIT
        ? materializePerm(c.perm)
        : c.perm;
    out.push({ ...c, perm, expected });
    console.log(`${c.id}: count=${expected.count} tstar=${expected.tstar.raw}`);
  }
  const lines = out.map((c) => "    " + JSON.stringify(c));
  const text = '{\n  "cases": [\n' + lines.join(",\n") + "\n  ]\n}\n";
  const file = join(process.cwd(), "vectors", "cases.json");
  writeFileSync(file, text);
  console.log(`wrote ${out.length} cases to ${file}`);
}

main();
