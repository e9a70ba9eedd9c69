/** Export of a pinned model as a standalone JSON object. */

import { PathDocument } from "./types.js";

export interface ExportedModel {
  lambda: number;
  alpha_satisfied: number[];
  coefficients: Record<string, number>;
  column_names: string[];
}

export function exportModel(doc: PathDocument, index: number): ExportedModel {
  if (index < 0 || index >= doc.lambdas.length) {
    throw new RangeError(`lambda index ${index} outside the grid`);
  }
  const names = doc.metadata.column_names;
  const coefs = doc.coefficients[index];
  const coefficients: Record<string, number> = {};
  for (let j = 0; j < names.length; j++) {
    if (coefs[j] !== 0) coefficients[names[j]] = coefs[j];
  }
  const fsrHere = doc.fsr.mean[index];
  const alphas = Object.values(doc.selected)
    .map((s) => s.alpha)
    .filter((alpha) => fsrHere <= alpha)
    .sort((a, b) => a - b);
  return {
    lambda: doc.lambdas[index],
    alpha_satisfied: alphas,
    coefficients,
    column_names: [...names],
  };
}

export function exportFilename(index: number): string {
  return `model_lambda_${index}.json`;
}
