/** Typed fixture payloads mirroring the 5-region path dataset. */

import type {
  ClusterMapPayload,
  DualDensityPayload,
  NetworkPayload,
  RadialPayload,
} from "../src/types.js";

export const Z = [-1.26491, -0.63246, 0.0, 0.63246, 1.26491];
export const LAG = [-0.63246, -0.63246, 0.0, 0.63246, 0.63246];

export const network: NetworkPayload = {
  schemaVersion: 1,
  n: 5,
  points: ["1", "2", "3", "4", "5"].map((id, i) => ({
    id,
    z: Z[i],
    lag: LAG[i],
    label: "not-significant",
    pseudoP: 0.2,
  })),
  edges: [
    { sourceId: "1", targetId: "2", weight: 1.0, reverseWeight: 0.5 },
    { sourceId: "2", targetId: "3", weight: 0.5, reverseWeight: 0.5 },
    { sourceId: "3", targetId: "4", weight: 0.5, reverseWeight: 0.5 },
    { sourceId: "4", targetId: "5", weight: 0.5, reverseWeight: 1.0 },
  ],
};

export const clusterMap: ClusterMapPayload = {
  schemaVersion: 1,
  entries: ["1", "2", "3", "4", "5"].map((id, i) => ({
    id,
    label: "not-significant",
    statistic: Z[i] * LAG[i] * 0.25,
    pseudoP: 0.2,
  })),
  legend: {
    "high-high": "#ca0020",
    "high-low": "#f4a582",
    "low-high": "#92c5de",
    "low-low": "#0571b0",
    "not-significant": "#d9d9d9",
    isolated: "#777777",
  },
};

function curve(lo: number, hi: number, points: number) {
  const gridX: number[] = [];
  const gridY: number[] = [];
  for (let i = 0; i < points; i++) {
    const x = lo + ((hi - lo) * i) / (points - 1);
    gridX.push(x);
    gridY.push(Math.exp(-x * x));
  }
  return { gridX, gridY, bandwidth: 0.4 };
}

/** Focal "2" (negative z): label-mode areas orient low-low up, low-high down. */
export const dualDensity: DualDensityPayload = {
  schemaVersion: 1,
  focalId: "2",
  focalZ: Z[1],
  neighborPoints: [
    { id: "1", z: Z[0], weight: 0.5 },
    { id: "3", z: Z[2], weight: 0.5 },
  ],
  lag: LAG[1],
  statistic: 0.1,
  valueDensity: curve(-2.0, 2.0, 33),
  permutedDensity: curve(-0.45, 0.3, 33),
  lowThreshold: -0.2,
  highThreshold: 0.25,
  pseudoP: 0.177,
  colorMode: "label",
  areaLabels: [
    { range: [0.25, null], text: "low-low", colorKey: "low-low" },
    { range: [null, -0.2], text: "low-high", colorKey: "low-high" },
  ],
  n: 5,
};

export const radial: RadialPayload = {
  schemaVersion: 1,
  focalId: "2",
  spokes: [
    { neighborId: "1", angle: Math.PI, z: Z[0], weight: 0.5 },
    { neighborId: "3", angle: 0.0, z: Z[2], weight: 0.5 },
  ],
  lagRadiusValue: LAG[1],
  zeroRingValue: 0.0,
  minDiscValue: Z[0],
  radialDomain: [Z[0], Z[4]],
};
