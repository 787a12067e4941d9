/** Moran dual-density view: value density on top, permuted density below,
 * the lag-to-statistic segment connecting the two axes. */

import { el, SceneNode } from "../scene.js";
import { extent, linearScale, zAxisScale, LinearScale } from "../scale.js";
import { AUTOCORRELATION_COLORS, DensityCurve, DualDensityPayload } from "../types.js";
import { formatTick } from "./scatter.js";

export interface DualDensityOptions {
  width: number;
  height: number;
  zDomain: [number, number];
  legend: Record<string, string>;
}

const BAND = { densityHeight: 70, axisGap: 18, middle: 56, bottom: 34 };

export function dualDensityLayout(height: number) {
  const topAxisY = BAND.densityHeight + BAND.axisGap;
  const bottomAxisY = Math.max(topAxisY + BAND.middle + BAND.densityHeight, height - BAND.bottom);
  return { topAxisY, bottomAxisY };
}

function densityPath(curve: DensityCurve, x: LinearScale, axisY: number, peak: number): string {
  const [, maxY] = extent(curve.gridY);
  const yScale = maxY > 0 ? peak / maxY : 0;
  const parts = [`M${x(curve.gridX[0]).toFixed(2)},${axisY.toFixed(2)}`];
  for (let i = 0; i < curve.gridX.length; i++) {
    parts.push(
      `L${x(curve.gridX[i]).toFixed(2)},${(axisY - curve.gridY[i] * yScale).toFixed(2)}`,
    );
  }
  parts.push(`L${x(curve.gridX[curve.gridX.length - 1]).toFixed(2)},${axisY.toFixed(2)}Z`);
  return parts.join("");
}

function axisLine(x: LinearScale, y: number, cls: string): SceneNode[] {
  const nodes: SceneNode[] = [
    el("line", { class: `axis-line ${cls}`, x1: x.range[0], x2: x.range[1], y1: y, y2: y }),
  ];
  for (const tick of x.ticks(6)) {
    nodes.push(
      el("line", { class: "tick", x1: x(tick), x2: x(tick), y1: y, y2: y + 5 }),
      el(
        "text",
        { class: "tick-label", x: x(tick), y: y + 17, "text-anchor": "middle" },
        undefined,
        formatTick(tick),
      ),
    );
  }
  return nodes;
}

/** Domain of the bottom (statistic) axis: permuted grid plus markers. */
export function statisticDomain(payload: DualDensityPayload): [number, number] {
  const values = [
    ...payload.permutedDensity.gridX,
    payload.lowThreshold,
    payload.highThreshold,
    payload.statistic,
  ];
  const [lo, hi] = extent(values);
  const pad = (hi - lo || 1) * 0.05;
  return [lo - pad, hi + pad];
}

export function buildDualDensityScene(
  payload: DualDensityPayload,
  opts: DualDensityOptions,
): SceneNode {
  const x = zAxisScale(opts.zDomain, opts.width);
  const { topAxisY, bottomAxisY } = dualDensityLayout(opts.height);
  const statX = linearScale(statisticDomain(payload), [x.range[0], x.range[1]]);
  const children: SceneNode[] = [];

  // Top panel: dataset z-value density with focal, neighbor and lag marks.
  children.push(
    el("path", {
      class: "density value-density",
      d: densityPath(payload.valueDensity, x, topAxisY, BAND.densityHeight),
    }),
    ...axisLine(x, topAxisY, "z-axis"),
    el("line", {
      class: "zero-link",
      x1: x(0), y1: topAxisY, x2: x(payload.focalZ), y2: topAxisY,
    }),
  );
  const maxWeight = Math.max(1e-12, ...payload.neighborPoints.map((p) => p.weight));
  for (const neighbor of payload.neighborPoints) {
    children.push(
      el("line", {
        class: "lag-link",
        x1: x(neighbor.z), y1: topAxisY, x2: x(payload.lag), y2: topAxisY,
      }),
      el("circle", {
        class: "neighbor-point",
        "data-id": neighbor.id,
        cx: x(neighbor.z), cy: topAxisY,
        r: 3 + 4 * (neighbor.weight / maxWeight),
        "data-weight": neighbor.weight,
      }),
    );
  }
  children.push(
    el("circle", { class: "focal-point", cx: x(payload.focalZ), cy: topAxisY, r: 5 }),
    el("circle", { class: "lag-point", cx: x(payload.lag), cy: topAxisY, r: 5 }),
  );

  // Middle segment: the linear relationship between lag and statistic.
  children.push(
    el("line", {
      class: "lag-stat-link",
      x1: x(payload.lag), y1: topAxisY,
      x2: statX(payload.statistic), y2: bottomAxisY,
    }),
  );

  // Bottom panel: permuted statistic density with significance areas.
  for (const area of payload.areaLabels) {
    const lo = area.range[0] === null ? statX.range[0] : statX(area.range[0]);
    const hi = area.range[1] === null ? statX.range[1] : statX(area.range[1]);
    const left = Math.min(lo, hi);
    const width = Math.abs(hi - lo);
    const color =
      payload.colorMode === "label"
        ? opts.legend[area.colorKey] ?? "#cccccc"
        : AUTOCORRELATION_COLORS[area.colorKey] ?? "#cccccc";
    children.push(
      el("rect", {
        class: "significance-area",
        "data-color-key": area.colorKey,
        x: left, y: bottomAxisY - BAND.densityHeight,
        width, height: BAND.densityHeight,
        fill: color, opacity: 0.25,
      }),
      el(
        "text",
        {
          class: "area-label",
          x: left + width / 2, y: bottomAxisY - BAND.densityHeight - 4,
          "text-anchor": "middle", fill: color,
        },
        undefined,
        area.text,
      ),
    );
  }
  children.push(
    el("path", {
      class: "density permuted-density",
      d: densityPath(payload.permutedDensity, statX, bottomAxisY, BAND.densityHeight),
    }),
    ...axisLine(statX, bottomAxisY, "stat-axis"),
    el("circle", {
      class: "stat-point",
      cx: statX(payload.statistic), cy: bottomAxisY, r: 5,
    }),
    el(
      "text",
      { class: "pseudo-p", x: x.range[0], y: opts.height - 6 },
      undefined,
      `pseudo p = ${payload.pseudoP.toPrecision(3)}`,
    ),
    el(
      "text",
      { class: "focal-title", x: x.range[0], y: 14 },
      undefined,
      `region ${payload.focalId}`,
    ),
  );
  return el("g", { class: "dual-density" }, children);
}
