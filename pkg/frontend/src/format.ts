/** Display formatting. All statistics come from the document; these only
 * choose digits. */

export function formatFsr(value: number): string {
  return value.toFixed(2);
}

export function formatLambda(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 0.01 && abs < 1000) return value.toPrecision(4);
  return value.toExponential(3);
}

export function formatCoef(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 0.001 && abs < 1000) return value.toFixed(4);
  return value.toExponential(3);
}
