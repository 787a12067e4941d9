/** Wire types for the lisakit HTTP API (see the repo README for the schema). */

export type ColorMode = "label" | "autocorrelation";

export interface DensityCurve {
  gridX: number[];
  gridY: number[];
  bandwidth: number;
}

export interface AreaLabel {
  range: [number | null, number | null];
  text: string;
  colorKey: string;
}

export interface NeighborPoint {
  id: string;
  z: number;
  weight: number;
}

export interface DualDensityPayload {
  schemaVersion: number;
  focalId: string;
  focalZ: number;
  neighborPoints: NeighborPoint[];
  lag: number;
  statistic: number;
  valueDensity: DensityCurve;
  permutedDensity: DensityCurve;
  lowThreshold: number;
  highThreshold: number;
  pseudoP: number;
  colorMode: ColorMode;
  areaLabels: AreaLabel[];
  n: number;
}

export interface NetworkPoint {
  id: string;
  z: number;
  lag: number;
  label: string;
  pseudoP: number;
}

export interface NetworkEdge {
  sourceId: string;
  targetId: string;
  weight: number;
  reverseWeight: number;
}

export interface NetworkPayload {
  schemaVersion: number;
  points: NetworkPoint[];
  edges: NetworkEdge[];
  n: number;
}

export interface RadialSpoke {
  neighborId: string;
  angle: number;
  z: number;
  weight: number;
}

export interface RadialPayload {
  schemaVersion: number;
  focalId: string;
  spokes: RadialSpoke[];
  lagRadiusValue: number;
  zeroRingValue: number;
  minDiscValue: number;
  radialDomain: [number, number];
}

export interface ClusterEntry {
  id: string;
  label: string;
  statistic: number | null;
  pseudoP: number | null;
}

export interface ClusterMapPayload {
  schemaVersion: number;
  entries: ClusterEntry[];
  legend: Record<string, string>;
}

export interface ComponentPayload {
  schemaVersion: number;
  focalId: string;
  componentIds: string[];
}

export interface MetaPayload {
  schemaVersion: number;
  datasetName: string;
  config: Record<string, unknown>;
  regionCount: number;
  labelCounts: Record<string, number>;
}

/** Minimal GeoJSON slice: the service only passes polygonal features. */
export type Ring = [number, number][];

export interface Feature {
  type: "Feature";
  properties: Record<string, unknown> | null;
  id?: string | number;
  geometry: {
    type: "Polygon" | "MultiPolygon";
    coordinates: Ring[] | Ring[][];
  };
}

export interface FeatureCollection {
  type: "FeatureCollection";
  features: Feature[];
}

export interface GeometryPayload {
  schemaVersion: number;
  geometry: FeatureCollection;
}

export const ISOLATED_LABEL = "isolated";
export const NOT_SIGNIFICANT_LABEL = "not-significant";

/** Colors for the autocorrelation color mode (labels come from the legend). */
export const AUTOCORRELATION_COLORS: Record<string, string> = {
  positive: "#2166ac",
  negative: "#b2182b",
};
