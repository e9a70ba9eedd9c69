/** Hover readout: the panel model for one grid index.
 *
 * Pure projection of document data; nothing is recomputed beyond sorting
 * and formatting.  The same structure is exported so tests can compare it
 * directly against /api/fsr slices.
 */

import { PathDocument } from "./types.js";
import { formatCoef, formatFsr, formatLambda } from "./format.js";

export interface ReadoutEntry {
  name: string;
  value: number;
  display: string;
}

export interface Readout {
  index: number;
  lambda: number;
  lambdaDisplay: string;
  activeSize: number;
  fsrMean: number;
  fsrDisplay: string;
  fsrMin: number;
  fsrMax: number;
  spreadDisplay: string;
  nonzero: ReadoutEntry[];
  summary: string;
}

export function buildReadout(doc: PathDocument, index: number): Readout {
  if (index < 0 || index >= doc.lambdas.length) {
    throw new RangeError(`lambda index ${index} outside the grid`);
  }
  const names = doc.metadata.column_names;
  const coefs = doc.coefficients[index];
  const nonzero: ReadoutEntry[] = [];
  for (let j = 0; j < names.length; j++) {
    if (coefs[j] !== 0) {
      nonzero.push({ name: names[j], value: coefs[j], display: formatCoef(coefs[j]) });
    }
  }
  nonzero.sort((a, b) => Math.abs(b.value) - Math.abs(a.value));

  const reps = doc.fsr.per_replicate.map((row) => row[index]);
  const fsrMean = doc.fsr.mean[index];
  const fsrMin = reps.length ? Math.min(...reps) : 0;
  const fsrMax = reps.length ? Math.max(...reps) : 0;
  return {
    index,
    lambda: doc.lambdas[index],
    lambdaDisplay: formatLambda(doc.lambdas[index]),
    activeSize: doc.active_sizes[index],
    fsrMean,
    fsrDisplay: formatFsr(fsrMean),
    fsrMin,
    fsrMax,
    spreadDisplay: `${formatFsr(fsrMin)}–${formatFsr(fsrMax)}`,
    nonzero,
    summary: `${doc.active_sizes[index]} variables, FSR ${formatFsr(fsrMean)}`,
  };
}
