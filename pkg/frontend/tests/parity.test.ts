/**
 * Cross-interface parity: every binding call must reproduce, bit for bit,
 * the strings the command line printed when the vector file was recorded
 * (tools/make-vectors.ts).
 */

import { readFileSync } from "fs";
import { join } from "path";
import { fileURLToPath } from "url";
import { describe, expect, it } from "vitest";

import { count, profile4, tstar } from "../src/index.js";
import { materializePerm, sampleOf, type VectorCase } from "../tools/vectorlib.js";

const here = fileURLToPath(new URL(".", import.meta.url));
const file = join(here, "..", "vectors", "cases.json");
const cases = (JSON.parse(readFileSync(file, "utf8")) as { cases: VectorCase[] }).cases;

describe("recorded vectors", () => {
  it("holds exactly fifty cases, each with expectations", () => {
    expect(cases).toHaveLength(50);
    for (const c of cases) {
      expect(c.expected, c.id).toBeDefined();
    }
  });
});

describe("bindings match the recorded command line outputs", () => {
  for (const c of cases) {
    it(`case ${c.id} (pattern ${c.pattern.join("")})`, () => {
      const expected = c.expected!;
      const perm = materializePerm(c.perm);

      expect(count(c.pattern, perm).toString()).toBe(expected.count);

      const profile = profile4(perm);
      expect(Object.keys(profile)).toEqual(Object.keys(expected.profile4));
      for (const [pat, value] of Object.entries(expected.profile4)) {
        expect(profile[pat].toString(), `${c.id} ${pat}`).toBe(value);
      }

      const { xs, ys } = sampleOf(c);
      const t = tstar(xs, ys, c.ties);
      expect(t.n).toBe(expected.tstar.n);
      expect(t.raw.toString()).toBe(expected.tstar.raw);
      expect(t.normalized.toString()).toBe(expected.tstar.normalized);
    });
  }
});
