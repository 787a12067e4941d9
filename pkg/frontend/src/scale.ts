/** Linear scales, ticks, and the shared horizontal layout for aligned axes. */

export interface LinearScale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
  invert(px: number): number;
  ticks(count?: number): number[];
}

export function linearScale(domain: [number, number], range: [number, number]): LinearScale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as LinearScale;
  scale.domain = domain;
  scale.range = range;
  scale.invert = (px: number) => d0 + ((px - r0) / (r1 - r0 === 0 ? 1 : r1 - r0)) * span;
  scale.ticks = (count = 5) => niceTicks(d0, d1, count);
  return scale;
}

export function niceTicks(lo: number, hi: number, count: number): number[] {
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / Math.max(1, count);
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 5, 10].map((m) => m * power);
  const step = candidates.find((c) => c >= rawStep) ?? candidates[3];
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

export function padDomain(domain: [number, number], fraction: number): [number, number] {
  const [lo, hi] = domain;
  const pad = (hi - lo || 1) * fraction;
  return [lo - pad, hi + pad];
}

export function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

/**
 * Shared horizontal margins for the network scatterplot and the
 * dual-density view. Both views derive their z-value x-scale from here with
 * the same domain and width, which is what keeps the two axes pixel-aligned
 * at any window size.
 */
export const SHARED_X_MARGINS = { left: 52, right: 20 };

export function zAxisScale(zDomain: [number, number], width: number): LinearScale {
  return linearScale(zDomain, [SHARED_X_MARGINS.left, width - SHARED_X_MARGINS.right]);
}

export interface Projection {
  x(lon: number): number;
  y(lat: number): number;
}

/** Fit planar/geographic bounds into a viewport, preserving aspect, y up. */
export function fitExtent(
  bounds: { minX: number; minY: number; maxX: number; maxY: number },
  width: number,
  height: number,
  padFraction = 0.04,
): Projection {
  const pad = Math.max(width, height) * padFraction;
  const spanX = bounds.maxX - bounds.minX || 1;
  const spanY = bounds.maxY - bounds.minY || 1;
  const k = Math.min((width - 2 * pad) / spanX, (height - 2 * pad) / spanY);
  const cx = (bounds.minX + bounds.maxX) / 2;
  const cy = (bounds.minY + bounds.maxY) / 2;
  return {
    x: (lon: number) => width / 2 + (lon - cx) * k,
    y: (lat: number) => height / 2 - (lat - cy) * k,
  };
}
