/** Moran network scatterplot: z (x-axis) vs spatial lag (y-axis). */

import { el, SceneNode } from "../scene.js";
import { linearScale, zAxisScale, LinearScale } from "../scale.js";
import type { NetworkEdge, NetworkPayload, NetworkPoint } from "../types.js";

export interface ScatterOptions {
  width: number;
  height: number;
  zDomain: [number, number];
  lagDomain: [number, number];
  legend: Record<string, string>;
  hoveredId?: string | null;
  pinned?: ReadonlySet<string> | null;
}

export const SCATTER_MARGINS = { top: 14, bottom: 30 };

export function scatterScales(opts: ScatterOptions): { x: LinearScale; y: LinearScale } {
  return {
    x: zAxisScale(opts.zDomain, opts.width),
    y: linearScale(opts.lagDomain, [
      opts.height - SCATTER_MARGINS.bottom,
      SCATTER_MARGINS.top,
    ]),
  };
}

function axis(x: LinearScale, y: LinearScale, height: number): SceneNode {
  const [x0, x1] = x.range;
  const baseline = height - SCATTER_MARGINS.bottom;
  const children: SceneNode[] = [
    el("line", { class: "axis-line", x1: x0, x2: x1, y1: baseline, y2: baseline }),
  ];
  for (const tick of x.ticks(6)) {
    children.push(
      el("line", {
        class: "tick",
        x1: x(tick), x2: x(tick), y1: baseline, y2: baseline + 5,
      }),
      el(
        "text",
        { class: "tick-label", x: x(tick), y: baseline + 17, "text-anchor": "middle" },
        undefined,
        formatTick(tick),
      ),
    );
  }
  // Quadrant guides through z = 0 and lag = 0.
  children.push(
    el("line", { class: "guide", x1: x(0), x2: x(0), y1: y.range[1], y2: baseline }),
    el("line", { class: "guide", x1: x0, x2: x1, y1: y(0), y2: y(0) }),
  );
  return el("g", { class: "scatter-axis" }, children);
}

export function formatTick(value: number): string {
  return Math.abs(value) >= 100 ? value.toFixed(0) : value.toPrecision(3).replace(/\.?0+$/, "");
}

/** Static layer: axis plus one circle per non-isolated region. */
export function buildScatterScene(payload: NetworkPayload, opts: ScatterOptions): SceneNode {
  const { x, y } = scatterScales(opts);
  const points = payload.points.map((p) => {
    const pinned = opts.pinned?.has(p.id) ?? false;
    const classes = ["scatter-point", pinned ? "pinned" : ""].join(" ").trim();
    return el("circle", {
      class: classes,
      "data-id": p.id,
      cx: x(p.z),
      cy: y(p.lag),
      r: pinned ? 6 : 4,
      fill: opts.legend[p.label] ?? "#999999",
    });
  });
  return el("g", { class: "scatter" }, [axis(x, y, opts.height), ...points]);
}

function edgesTouching(edges: NetworkEdge[], focalId: string) {
  return edges
    .filter((e) => e.sourceId === focalId || e.targetId === focalId)
    .map((e) => ({
      neighborId: e.sourceId === focalId ? e.targetId : e.sourceId,
      // Thickness uses the row-normalized weight from the hovered point's
      // perspective (the directed pair resolved at render time).
      weight: e.sourceId === focalId ? e.weight : e.reverseWeight,
    }));
}

/**
 * Hover overlay: one edge per neighbor (thickness proportional to the
 * weight, colored by the neighbor's label) and one vertical drop-line from
 * the focal point and from each neighbor down to the shared x-axis.
 */
export function buildScatterHoverScene(
  payload: NetworkPayload,
  focalId: string,
  opts: ScatterOptions,
): SceneNode {
  const { x, y } = scatterScales(opts);
  const byId = new Map<string, NetworkPoint>(payload.points.map((p) => [p.id, p]));
  const focal = byId.get(focalId);
  if (!focal) return el("g", { class: "scatter-hover" });
  const baseline = opts.height - SCATTER_MARGINS.bottom;
  const children: SceneNode[] = [];
  const maxWeight = Math.max(
    1e-12,
    ...edgesTouching(payload.edges, focalId).map((e) => e.weight),
  );
  for (const { neighborId, weight } of edgesTouching(payload.edges, focalId)) {
    const neighbor = byId.get(neighborId);
    if (!neighbor) continue;
    children.push(
      el("line", {
        class: "hover-edge",
        x1: x(focal.z), y1: y(focal.lag),
        x2: x(neighbor.z), y2: y(neighbor.lag),
        stroke: opts.legend[neighbor.label] ?? "#999999",
        "stroke-width": 1 + 4 * (weight / maxWeight),
        "data-weight": weight,
      }),
    );
  }
  const dropIds = [focalId, ...edgesTouching(payload.edges, focalId).map((e) => e.neighborId)];
  for (const id of dropIds) {
    const p = byId.get(id);
    if (!p) continue;
    children.push(
      el("line", {
        class: "drop-line",
        x1: x(p.z), y1: y(p.lag), x2: x(p.z), y2: baseline,
        "data-id": id,
      }),
    );
  }
  children.push(
    el("circle", {
      class: "focal-ring",
      cx: x(focal.z), cy: y(focal.lag), r: 7,
    }),
  );
  return el("g", { class: "scatter-hover" }, children);
}
