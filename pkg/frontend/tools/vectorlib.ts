/**
 * Shared shapes and generators for the cross-interface test vectors.
 *
 * The committed vector file (vectors/cases.json) stores each case's inputs
 * next to the exact strings the command line printed for them; the parity
 * suite replays the inputs through the bindings and compares bit by bit.
 * Small permutations are stored verbatim; the widest ones are stored as a
 * generator spec and rebuilt here, so the file stays reviewable.
 *
 * The PRNG and shuffles below are frozen: the committed file depends on
 * these exact streams.
 */

/** Deterministic 32-bit PRNG (mulberry32); returns floats in [0, 1). */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export interface PermGen {
  /** "random" shuffles 1…n; "sorted"/"reversed" start ordered, then swap. */
  kind: "random" | "sorted" | "reversed";
  n: number;
  seed: number;
  /** Number of random transpositions applied after the ordered start. */
  swaps?: number;
}

export type PermSpec = number[] | PermGen;

export interface VectorTStar {
  n: number;
  raw: string;
  normalized: string;
}

export interface VectorExpected {
  count: string;
  profile4: Record<string, string>;
  tstar: VectorTStar;
}

export interface VectorCase {
  id: string;
  pattern: number[];
  perm: PermSpec;
  /** Explicit bivariate sample; when absent the sample is (i, perm[i]). */
  xs?: number[];
  ys?: number[];
  ties: "strict" | "stable";
  expected?: VectorExpected;
}

export function materializePerm(spec: PermSpec): number[] {
  if (Array.isArray(spec)) {
    return spec;
  }
  const rng = mulberry32(spec.seed);
  const pi = Array.from({ length: spec.n }, (_, i) =>
    spec.kind === "reversed" ? spec.n - i : i + 1,
  );
  if (spec.kind === "random") {
    for (let i = pi.length - 1; i > 0; i--) {
      const j = Math.floor(rng() * (i + 1));
      [pi[i], pi[j]] = [pi[j], pi[i]];
    }
    return pi;
  }
  for (let s = 0; s < (spec.swaps ?? 0); s++) {
    const i = Math.floor(rng() * spec.n);
    const j = Math.floor(rng() * spec.n);
    [pi[i], pi[j]] = [pi[j], pi[i]];
  }
  return pi;
}

/** The bivariate sample a case feeds to tstar. */
export function sampleOf(c: VectorCase): { xs: number[]; ys: number[] } {
  if (c.xs && c.ys) {
    return { xs: c.xs, ys: c.ys };
  }
  const perm = materializePerm(c.perm);
  return { xs: perm.map((_, i) => i + 1), ys: perm };
}

const PAT4 = [
  [1, 2, 3, 4], [1, 2, 4, 3], [1, 3, 2, 4], [1, 3, 4, 2], [1, 4, 2, 3], [1, 4, 3, 2],
  [2, 1, 3, 4], [2, 1, 4, 3], [2, 3, 1, 4], [2, 3, 4, 1], [2, 4, 1, 3], [2, 4, 3, 1],
  [3, 1, 2, 4], [3, 1, 4, 2], [3, 2, 1, 4], [3, 2, 4, 1], [3, 4, 1, 2], [3, 4, 2, 1],
  [4, 1, 2, 3], [4, 1, 3, 2], [4, 2, 1, 3], [4, 2, 3, 1], [4, 3, 1, 2], [4, 3, 2, 1],
];
const PAT3 = [
  [1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1],
];

/** Fixed-grid floats round-trip exactly between JSON, JS doubles, and the core. */
function floats(rng: () => number, n: number): number[] {
  return Array.from({ length: n }, () => Math.round(rng() * 1e6) / 1e6);
}

/**
 * The 50 case inputs behind vectors/cases.json.  Only the generator runs
 * this; the parity suite reads the committed file.
 */
export function buildCases(): VectorCase[] {
  const cases: VectorCase[] = [];
  let serial = 0;
  const push = (c: Omit<VectorCase, "id">) => {
    serial += 1;
    cases.push({ id: `c${String(serial).padStart(2, "0")}`, ...c });
  };

  // every 4-pattern once, over a spread of sizes
  const sizes4 = [10, 14, 18, 24, 30, 36, 44, 52, 60, 75, 90, 110,
                  130, 150, 170, 200, 12, 16, 20, 26, 32, 40, 48, 56];
  PAT4.forEach((pattern, i) => {
    push({
      pattern,
      perm: { kind: "random", n: sizes4[i], seed: 101 + i },
      ties: "strict",
    });
  });

  // every 3-pattern
  const sizes3 = [9, 13, 21, 33, 47, 63];
  PAT3.forEach((pattern, i) => {
    push({
      pattern,
      perm: { kind: "random", n: sizes3[i], seed: 201 + i },
      ties: "strict",
    });
  });

  // pairs
  push({ pattern: [1, 2], perm: { kind: "random", n: 8, seed: 301 }, ties: "strict" });
  push({ pattern: [2, 1], perm: { kind: "random", n: 100, seed: 302 }, ties: "strict" });

  // above the fast range: counted by enumeration on the core side
  push({ pattern: [1, 2, 3, 4, 5], perm: { kind: "random", n: 11, seed: 311 }, ties: "strict" });
  push({ pattern: [3, 5, 1, 4, 2], perm: { kind: "random", n: 13, seed: 312 }, ties: "strict" });

  // real-valued samples exercising the rank transform on both axes
  const floatPatterns = [
    [2, 1, 4, 3], [1, 3, 2, 4], [2, 4, 1, 3], [3, 1, 4, 2],
    [1, 2, 3, 4], [4, 3, 2, 1], [3, 4, 1, 2], [2, 3, 4, 1],
  ];
  const floatSizes = [8, 12, 16, 20, 24, 28, 32, 40];
  floatPatterns.forEach((pattern, i) => {
    const rng = mulberry32(401 + i);
    const n = floatSizes[i];
    const xs = floats(rng, n);
    const ys = floats(rng, n);
    let ties: "strict" | "stable" = "strict";
    if (i >= 6) {
      // deliberate collisions; these two run under the stable policy
      ys[5] = ys[1];
      xs[7] = xs[2];
      ties = "stable";
    }
    push({
      pattern,
      perm: { kind: "random", n: 10 + 2 * i, seed: 421 + i },
      xs,
      ys,
      ties,
    });
  });

  // mid-size, fast-path territory for the whole profile
  const midPatterns = [
    [1, 3, 4, 2], [4, 2, 1, 3], [2, 4, 3, 1], [3, 1, 2, 4], [4, 1, 3, 2],
  ];
  const midSizes = [240, 300, 400, 500, 640];
  midPatterns.forEach((pattern, i) => {
    push({
      pattern,
      perm: { kind: "random", n: midSizes[i], seed: 501 + i },
      ties: "strict",
    });
  });

  // wide inputs; counts here overflow 53-bit doubles, so bigints must carry
  push({
    pattern: [3, 2, 4, 1],
    perm: { kind: "random", n: 3000, seed: 601 },
    ties: "strict",
  });
  push({
    pattern: [1, 2, 3, 4],
    perm: { kind: "sorted", n: 25000, seed: 7, swaps: 40 },
    ties: "strict",
  });
  push({
    pattern: [4, 3, 2, 1],
    perm: { kind: "reversed", n: 2500, seed: 611, swaps: 25 },
    ties: "strict",
  });

  return cases;
}

/** Specs at or below this size are stored verbatim in the vector file. */
export const INLINE_LIMIT = 4000;
