/** Minimal linear/log scales and an SVG polyline generator. */

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  return fn;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  if (domain[0] <= 0 || domain[1] <= 0) {
    throw new Error("log scale needs a positive domain");
  }
  const inner = linearScale([Math.log10(domain[0]), Math.log10(domain[1])], range);
  const fn = ((v: number) => inner(Math.log10(v))) as Scale;
  fn.domain = domain;
  fn.range = range;
  return fn;
}

/** Powers of ten inside the domain, for log-axis ticks. */
export function decadeTicks(domain: [number, number]): number[] {
  const lo = Math.min(domain[0], domain[1]);
  const hi = Math.max(domain[0], domain[1]);
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo) - 1e-9); Math.pow(10, e) <= hi * (1 + 1e-9); e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks;
}

/** Evenly spaced ticks for a linear axis. */
export function linearTicks(domain: [number, number], count: number): number[] {
  const [lo, hi] = domain;
  const step = (hi - lo) / (count - 1);
  return Array.from({ length: count }, (_, i) => lo + i * step);
}

export function polylinePoints(
  xs: number[],
  ys: number[],
  xScale: Scale,
  yScale: Scale,
): string {
  const parts: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    parts.push(`${xScale(xs[i]).toFixed(2)},${yScale(ys[i]).toFixed(2)}`);
  }
  return parts.join(" ");
}

/** Index of the grid value whose scaled x position is nearest to px. */
export function nearestIndex(xs: number[], xScale: Scale, px: number): number {
  let best = 0;
  let bestDist = Infinity;
  for (let i = 0; i < xs.length; i++) {
    const d = Math.abs(xScale(xs[i]) - px);
    if (d < bestDist) {
      bestDist = d;
      best = i;
    }
  }
  return best;
}
