/** Path-document schema (schema_version 1) as served by /api/path. */

export interface DocumentMetadata {
  family: string;
  n: number;
  p: number;
  column_names: string[];
  response_name: string;
  seed: number | null;
  b_replicates: number;
  screening: string;
  use_permutation: boolean;
  degraded_screening: boolean;
  truncated_at: number | null;
}

export interface SelectedModel {
  alpha: number;
  feasible: boolean;
  lambda?: number;
  lambda_index?: number;
  active?: string[];
  coefficients?: Record<string, number>;
  intercept?: number | null;
}

export interface PathDocument {
  schema_version: number;
  metadata: DocumentMetadata;
  lambdas: number[];
  coefficients: number[][];
  intercepts: number[] | null;
  active_sizes: number[];
  fsr: { mean: number[]; per_replicate: number[][] };
  selected: Record<string, SelectedModel>;
  screening: {
    method: string;
    a0_hat: string[];
    r0_hat: number;
    no_feasible_lambda: boolean;
  };
}

/** Per-penalty slice as served by /api/fsr?lambda_index=i. */
export interface FsrSlice {
  lambda_index: number;
  lambda: number;
  coefficients: Record<string, number>;
  active: string[];
  active_size: number;
  fsr_mean: number;
  fsr_min: number;
  fsr_max: number;
  fsr_replicates: number[];
  intercept?: number;
}

export class SchemaError extends Error {}

function fail(msg: string): never {
  throw new SchemaError(msg);
}

/** Structural validation; throws SchemaError with a readable message. */
export function validateDocument(raw: unknown): PathDocument {
  if (typeof raw !== "object" || raw === null) fail("document is not an object");
  const doc = raw as Partial<PathDocument>;
  if (doc.schema_version !== 1) {
    fail(`unsupported schema_version ${String(doc.schema_version)}`);
  }
  const meta = doc.metadata;
  if (!meta || !Array.isArray(meta.column_names) || meta.column_names.length === 0) {
    fail("metadata.column_names missing or empty");
  }
  if (!Array.isArray(doc.lambdas) || doc.lambdas.length === 0) {
    fail("lambdas missing or empty");
  }
  const m = doc.lambdas.length;
  const p = meta.column_names.length;
  if (!Array.isArray(doc.coefficients) || doc.coefficients.length !== m) {
    fail("coefficients row count does not match lambdas");
  }
  for (const row of doc.coefficients) {
    if (!Array.isArray(row) || row.length !== p) {
      fail("coefficient row width does not match column count");
    }
  }
  if (!Array.isArray(doc.active_sizes) || doc.active_sizes.length !== m) {
    fail("active_sizes length does not match lambdas");
  }
  if (!doc.fsr || !Array.isArray(doc.fsr.mean) || doc.fsr.mean.length !== m) {
    fail("fsr.mean length does not match lambdas");
  }
  for (const row of doc.fsr.per_replicate ?? []) {
    if (row.length !== m) fail("fsr.per_replicate row length does not match lambdas");
  }
  if (typeof doc.selected !== "object" || doc.selected === null) {
    fail("selected map missing");
  }
  return doc as PathDocument;
}

/** Interactive view state over one document. */
export interface PathView {
  doc: PathDocument;
  hoverIndex: number;
  pinnedIndices: number[];
}

export function clampIndex(doc: PathDocument, index: number): number {
  return Math.min(Math.max(index, 0), doc.lambdas.length - 1);
}

/** Vertical markers: one per feasible alpha target, at its chosen penalty. */
export function alphaLines(
  doc: PathDocument,
): { alpha: number; lambdaIndex: number; lambda: number }[] {
  return Object.values(doc.selected)
    .filter((s) => s.feasible && s.lambda_index !== undefined)
    .map((s) => ({
      alpha: s.alpha,
      lambdaIndex: s.lambda_index as number,
      lambda: doc.lambdas[s.lambda_index as number],
    }))
    .sort((a, b) => a.alpha - b.alpha);
}
