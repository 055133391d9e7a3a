/**
 * Bindings for the plutchik-pea agreement metrics.
 *
 * Every function shells out to the `plutchik metric` JSON bridge, so results
 * are bit-identical to the core package by construction — no metric logic
 * lives here. The executable is resolved from $PLUTCHIK_PEA_CLI, falling
 * back to `plutchik` on the PATH. Failures in the core surface as plain
 * Error objects carrying the core's own message.
 */

import { spawnSync } from "node:child_process";

/** Matches the core package's version string. */
export const VERSION = "0.1.0";

export interface AnnotationInput {
  itemId: string;
  workerId: string;
  emotions: string[];
}

/** Agreement rollup, exactly as the core serializes it. */
export interface AgreementReport {
  corpus_mean: number | null;
  per_worker: Record<string, number>;
  per_item_per_worker: { item_id: string; worker_id: string; score: number }[];
  dropped_workers: string[];
  skipped_items: string[];
}

export interface CalibrationResult {
  scores: number[];
  mean: number;
  histogram: number[];
}

export type AlphaDistance = "nominal" | "jaccard";

/** A coder's value for one item: a plain label or a label set. */
export type AlphaValue = string | string[];

export interface CorpusPeaOptions {
  itemWeighted?: boolean;
  symmetric?: boolean;
}

export interface RandomBaselineOptions {
  nAnnotations?: number;
  emotionsPerAnnotation?: number;
  workersPerItem?: number;
  seed?: number;
  bins?: number;
}

interface BridgeResponse {
  ok: boolean;
  result?: unknown;
  error?: string;
}

function cliPath(): string {
  return process.env.PLUTCHIK_PEA_CLI ?? "plutchik";
}

function runCli(args: string[], input?: string): string {
  const proc = spawnSync(cliPath(), args, {
    input,
    encoding: "utf8",
    maxBuffer: 64 * 1024 * 1024,
  });
  if (proc.error) {
    throw new Error(`could not launch ${cliPath()}: ${proc.error.message}`);
  }
  return proc.stdout;
}

function evalRequest(request: Record<string, unknown>): unknown {
  const stdout = runCli(["metric", "eval"], JSON.stringify(request));
  let response: BridgeResponse;
  try {
    response = JSON.parse(stdout) as BridgeResponse;
  } catch {
    throw new Error(`malformed bridge response: ${stdout.trim() || "(empty)"}`);
  }
  if (!response.ok) {
    throw new Error(response.error ?? "unknown bridge error");
  }
  return response.result;
}

function wireRecords(records: AnnotationInput[]): Record<string, unknown>[] {
  return records.map((r) => ({
    item_id: r.itemId,
    worker_id: r.workerId,
    emotions: r.emotions,
  }));
}

/** Agreement between two single emotion labels, on the quarter-point lattice. */
export function pairScore(a: string, b: string): number {
  return evalRequest({ op: "pair_score", a, b }) as number;
}

/** Mean best-match agreement of x's labels against y's; not symmetric. */
export function directedAgreement(x: string[], y: string[]): number {
  return evalRequest({ op: "directed_agreement", x, y }) as number;
}

/** Average of the two directed agreements. */
export function symmetricAgreement(x: string[], y: string[]): number {
  return evalRequest({ op: "symmetric_agreement", x, y }) as number;
}

/** Per-worker agreement scores for annotations of one shared item. */
export function perItemPea(
  records: AnnotationInput[],
  options: { symmetric?: boolean } = {},
): Record<string, number> {
  const request: Record<string, unknown> = {
    op: "per_item_pea",
    records: wireRecords(records),
  };
  if (options.symmetric !== undefined) request.symmetric = options.symmetric;
  return evalRequest(request) as Record<string, number>;
}

/** Full corpus agreement rollup across items and workers. */
export function corpusPea(
  records: AnnotationInput[],
  options: CorpusPeaOptions = {},
): AgreementReport {
  const request: Record<string, unknown> = {
    op: "corpus_pea",
    records: wireRecords(records),
  };
  if (options.itemWeighted !== undefined) request.item_weighted = options.itemWeighted;
  if (options.symmetric !== undefined) request.symmetric = options.symmetric;
  return evalRequest(request) as AgreementReport;
}

/** Chance-corrected reliability over an item -> coder -> value table. */
export function krippendorffAlpha(
  items: Record<string, Record<string, AlphaValue>>,
  options: { distance?: AlphaDistance } = {},
): number {
  const request: Record<string, unknown> = { op: "krippendorff_alpha", items };
  if (options.distance !== undefined) request.distance = options.distance;
  return evalRequest(request) as number;
}

/** Set overlap |a∩b| / |a∪b|; errors when both sets are empty. */
export function jaccard(a: string[], b: string[]): number {
  return evalRequest({ op: "jaccard", a, b }) as number;
}

/** Seeded agreement distribution for uniformly random annotations. */
export function randomBaseline(
  options: RandomBaselineOptions = {},
): CalibrationResult {
  const request: Record<string, unknown> = { op: "random_baseline" };
  if (options.nAnnotations !== undefined) request.n_annotations = options.nAnnotations;
  if (options.emotionsPerAnnotation !== undefined) {
    request.emotions_per_annotation = options.emotionsPerAnnotation;
  }
  if (options.workersPerItem !== undefined) {
    request.workers_per_item = options.workersPerItem;
  }
  if (options.seed !== undefined) request.seed = options.seed;
  if (options.bins !== undefined) request.bins = options.bins;
  return evalRequest(request) as CalibrationResult;
}

/** The core executable's own version line, e.g. "plutchik-pea 0.1.0". */
export function coreVersion(): string {
  return runCli(["--version"]).trim();
}
