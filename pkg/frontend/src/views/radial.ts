/** Spatial lag radial plot: one spoke per neighbor at its compass bearing. */

import { el, SceneNode } from "../scene.js";
import { linearScale, padDomain } from "../scale.js";
import type { RadialPayload } from "../types.js";

export interface RadialOptions {
  size: number;
}

export function buildRadialScene(payload: RadialPayload, opts: RadialOptions): SceneNode {
  const cx = opts.size / 2;
  const cy = opts.size / 2;
  const maxR = opts.size / 2 - 14;
  // 5% render padding; the payload domain itself is exact.
  const r = linearScale(padDomain(payload.radialDomain, 0.05), [0, maxR]);
  const px = (angle: number, radius: number) => cx + radius * Math.cos(angle);
  const py = (angle: number, radius: number) => cy - radius * Math.sin(angle);

  const children: SceneNode[] = [
    el("circle", {
      class: "min-disc", cx, cy, r: Math.max(0, r(payload.minDiscValue)),
    }),
    el("circle", {
      class: "zero-ring", cx, cy, r: Math.max(0, r(payload.zeroRingValue)),
    }),
    el("circle", {
      class: "lag-circle", cx, cy, r: Math.max(0, r(payload.lagRadiusValue)),
    }),
  ];
  const maxWeight = Math.max(1e-12, ...payload.spokes.map((s) => s.weight));
  for (const spoke of payload.spokes) {
    const pointR = r(spoke.z);
    const lagR = r(payload.lagRadiusValue);
    children.push(
      el("line", {
        class: "spoke-axis",
        x1: cx, y1: cy, x2: px(spoke.angle, maxR), y2: py(spoke.angle, maxR),
      }),
      el("line", {
        class: "spoke-link",
        x1: px(spoke.angle, pointR), y1: py(spoke.angle, pointR),
        x2: px(spoke.angle, lagR), y2: py(spoke.angle, lagR),
      }),
      el("circle", {
        class: "spoke",
        "data-id": spoke.neighborId,
        cx: px(spoke.angle, pointR), cy: py(spoke.angle, pointR),
        r: 3 + 4 * (spoke.weight / maxWeight),
        "data-weight": spoke.weight,
      }),
    );
  }
  return el("g", { class: "radial" }, children);
}
