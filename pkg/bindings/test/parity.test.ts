import { spawnSync } from "node:child_process";
import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import {
  AnnotationInput,
  AlphaValue,
  VERSION,
  coreVersion,
  corpusPea,
  directedAgreement,
  jaccard,
  krippendorffAlpha,
  pairScore,
  perItemPea,
  randomBaseline,
  symmetricAgreement,
} from "../src/index";

const CLI = process.env.PLUTCHIK_PEA_CLI ?? "plutchik";

const EMOTIONS = [
  "rage", "anger", "annoyance",
  "vigilance", "anticipation", "interest",
  "ecstasy", "joy", "serenity",
  "admiration", "trust", "acceptance",
  "terror", "fear", "apprehension",
  "amazement", "surprise", "distraction",
  "grief", "sadness", "pensiveness",
  "loathing", "disgust", "boredom",
];

interface Envelope {
  ok: boolean;
  result?: unknown;
  error?: string;
}

/** Feed many requests through one `metric batch` process. */
function rawBatch(requests: Record<string, unknown>[]): Envelope[] {
  const input = requests.map((r) => JSON.stringify(r)).join("\n") + "\n";
  const proc = spawnSync(CLI, ["metric", "batch"], {
    input,
    encoding: "utf8",
    maxBuffer: 256 * 1024 * 1024,
  });
  if (proc.error) throw proc.error;
  expect(proc.status).toBe(0);
  const lines = proc.stdout.split("\n").filter((line) => line.trim() !== "");
  expect(lines).toHaveLength(requests.length);
  return lines.map((line) => JSON.parse(line) as Envelope);
}

function rawEval(request: Record<string, unknown>): Envelope {
  return rawBatch([request])[0];
}

// ------------------------------------------------------------ fixed fixtures

describe("fixtures", () => {
  it("scores same-group, opposite-group, and adjacent-group label pairs", () => {
    expect(pairScore("joy", "ecstasy")).toBe(1.0);
    expect(pairScore("ecstasy", "grief")).toBe(0.0);
    expect(pairScore("anger", "interest")).toBe(0.75);
  });

  it("keeps directed agreement asymmetric", () => {
    expect(directedAgreement(["joy"], ["joy", "grief"])).toBe(1.0);
    expect(directedAgreement(["joy", "grief"], ["joy"])).toBe(0.5);
    expect(symmetricAgreement(["joy"], ["joy", "grief"])).toBe(0.75);
  });

  it("returns an empty report for an empty corpus", () => {
    expect(corpusPea([])).toEqual({
      corpus_mean: null,
      per_worker: {},
      per_item_per_worker: [],
      dropped_workers: [],
      skipped_items: [],
    });
  });

  it("computes the three-worker item fixture", () => {
    const records: AnnotationInput[] = [
      { itemId: "t1", workerId: "w1", emotions: ["joy"] },
      { itemId: "t1", workerId: "w2", emotions: ["joy"] },
      { itemId: "t1", workerId: "w3", emotions: ["grief"] },
    ];
    expect(perItemPea(records)).toEqual({ w1: 0.5, w2: 0.5, w3: 0.0 });
  });

  it("scores identical annotation sets as perfect agreement", () => {
    const records: AnnotationInput[] = [
      { itemId: "t", workerId: "a", emotions: ["fear", "trust"] },
      { itemId: "t", workerId: "b", emotions: ["trust", "fear"] },
    ];
    const report = corpusPea(records);
    expect(report.corpus_mean).toBe(1.0);
    expect(report.per_worker).toEqual({ a: 1.0, b: 1.0 });
  });

  it("rethrows the core's error message verbatim", () => {
    const request = { op: "pair_score", a: "happyness", b: "joy" };
    const raw = rawEval(request);
    expect(raw.ok).toBe(false);
    let thrown: Error | undefined;
    try {
      pairScore("happyness", "joy");
    } catch (error) {
      thrown = error as Error;
    }
    expect(thrown).toBeDefined();
    expect(thrown!.message).toBe(raw.error);
  });

  it("locks the binding version to the core", () => {
    const pkg = JSON.parse(
      readFileSync(join(__dirname, "..", "package.json"), "utf8"),
    ) as { version: string };
    expect(pkg.version).toBe(VERSION);
    expect(coreVersion()).toBe(`plutchik-pea ${VERSION}`);
  });
});

// --------------------------------------------------------- randomized parity

/** Small deterministic PRNG so the 1,000 fixtures are reproducible. */
function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function randInt(rng: () => number, low: number, high: number): number {
  return low + Math.floor(rng() * (high - low + 1));
}

function pick<T>(rng: () => number, items: readonly T[]): T {
  return items[Math.floor(rng() * items.length)];
}

function sampleDistinct<T>(rng: () => number, items: readonly T[], k: number): T[] {
  const pool = [...items];
  const out: T[] = [];
  for (let i = 0; i < k; i++) {
    out.push(pool.splice(Math.floor(rng() * pool.length), 1)[0]);
  }
  return out;
}

interface Fixture {
  request: Record<string, unknown>;
  invoke: () => unknown;
}

function emotionSet(rng: () => number): string[] {
  return sampleDistinct(rng, EMOTIONS, randInt(rng, 1, 4));
}

function annotationRows(rng: () => number): {
  wire: Record<string, unknown>[];
  typed: AnnotationInput[];
} {
  const wire: Record<string, unknown>[] = [];
  const typed: AnnotationInput[] = [];
  const nItems = randInt(rng, 1, 3);
  for (let i = 0; i < nItems; i++) {
    const workers = sampleDistinct(rng, ["w1", "w2", "w3", "w4"], randInt(rng, 1, 3));
    for (const worker of workers) {
      const emotions = emotionSet(rng);
      wire.push({ item_id: `t${i}`, worker_id: worker, emotions });
      typed.push({ itemId: `t${i}`, workerId: worker, emotions });
    }
  }
  return { wire, typed };
}

function makeFixture(rng: () => number): Fixture {
  const roll = rng();
  if (roll < 0.25) {
    const a = pick(rng, EMOTIONS);
    const b = pick(rng, EMOTIONS);
    return { request: { op: "pair_score", a, b }, invoke: () => pairScore(a, b) };
  }
  if (roll < 0.45) {
    const x = emotionSet(rng);
    const y = emotionSet(rng);
    return {
      request: { op: "directed_agreement", x, y },
      invoke: () => directedAgreement(x, y),
    };
  }
  if (roll < 0.6) {
    const x = emotionSet(rng);
    const y = emotionSet(rng);
    return {
      request: { op: "symmetric_agreement", x, y },
      invoke: () => symmetricAgreement(x, y),
    };
  }
  if (roll < 0.75) {
    const alphabet = ["u", "v", "w", "x", "y", "z"];
    const a = sampleDistinct(rng, alphabet, randInt(rng, 1, 4));
    const b = sampleDistinct(rng, alphabet, randInt(rng, 0, 4));
    return { request: { op: "jaccard", a, b }, invoke: () => jaccard(a, b) };
  }
  if (roll < 0.83) {
    const workers = sampleDistinct(rng, ["w1", "w2", "w3", "w4"], randInt(rng, 2, 4));
    const wire: Record<string, unknown>[] = [];
    const typed: AnnotationInput[] = [];
    for (const worker of workers) {
      const emotions = emotionSet(rng);
      wire.push({ item_id: "t", worker_id: worker, emotions });
      typed.push({ itemId: "t", workerId: worker, emotions });
    }
    const symmetric = rng() < 0.5;
    return {
      request: { op: "per_item_pea", records: wire, symmetric },
      invoke: () => perItemPea(typed, { symmetric }),
    };
  }
  if (roll < 0.91) {
    const { wire, typed } = annotationRows(rng);
    const itemWeighted = rng() < 0.5;
    const symmetric = rng() < 0.5;
    return {
      request: {
        op: "corpus_pea",
        records: wire,
        item_weighted: itemWeighted,
        symmetric,
      },
      invoke: () => corpusPea(typed, { itemWeighted, symmetric }),
    };
  }
  if (roll < 0.98) {
    const useSets = rng() < 0.5;
    const items: Record<string, Record<string, AlphaValue>> = {};
    const nItems = randInt(rng, 2, 4);
    const nCoders = randInt(rng, 2, 3);
    for (let i = 0; i < nItems; i++) {
      const row: Record<string, AlphaValue> = {};
      for (let c = 0; c < nCoders; c++) {
        if (i > 0 && rng() < 0.25) continue; // missing annotation
        row[`c${c}`] = useSets
          ? sampleDistinct(rng, ["u", "v", "w"], randInt(rng, 1, 2))
          : pick(rng, ["a", "b", "c"]);
      }
      items[`i${i}`] = row;
    }
    const distance = useSets ? "jaccard" : "nominal";
    return {
      request: { op: "krippendorff_alpha", items, distance },
      invoke: () => krippendorffAlpha(items, { distance }),
    };
  }
  const nAnnotations = randInt(rng, 10, 40);
  const emotionsPerAnnotation = randInt(rng, 1, 4);
  const workersPerItem = randInt(rng, 2, 5);
  const seed = randInt(rng, 0, 999);
  return {
    request: {
      op: "random_baseline",
      n_annotations: nAnnotations,
      emotions_per_annotation: emotionsPerAnnotation,
      workers_per_item: workersPerItem,
      seed,
    },
    invoke: () =>
      randomBaseline({ nAnnotations, emotionsPerAnnotation, workersPerItem, seed }),
  };
}

describe("randomized parity", () => {
  it(
    "matches direct CLI output exactly on 1,000 randomized calls",
    { timeout: 600_000 },
    () => {
      const rng = mulberry32(0xbee5);
      const fixtures = Array.from({ length: 1000 }, () => makeFixture(rng));

      const raw = rawBatch(fixtures.map((f) => f.request));
      for (const [index, envelope] of raw.entries()) {
        expect(envelope.ok, `raw call ${index} failed: ${envelope.error}`).toBe(true);
      }

      fixtures.forEach((fixture, index) => {
        expect(fixture.invoke(), `call ${index}: ${JSON.stringify(fixture.request)}`)
          .toEqual(raw[index].result);
      });
    },
  );
});
