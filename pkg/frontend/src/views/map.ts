/** LISA cluster map: regions filled by label color, fit to extent. */

import { el, SceneNode } from "../scene.js";
import { fitExtent, Projection } from "../scale.js";
import type { ClusterMapPayload, Feature, FeatureCollection, Ring } from "../types.js";

export interface MapOptions {
  width: number;
  height: number;
  hoveredId?: string | null;
  pinned?: ReadonlySet<string> | null;
}

function featureRings(feature: Feature): Ring[] {
  const geom = feature.geometry;
  if (geom.type === "Polygon") return geom.coordinates as Ring[];
  const rings: Ring[] = [];
  for (const part of geom.coordinates as Ring[][]) rings.push(...part);
  return rings;
}

export function geometryBounds(collection: FeatureCollection) {
  let minX = Infinity, minY = Infinity, maxX = -Infinity, maxY = -Infinity;
  for (const feature of collection.features) {
    for (const ring of featureRings(feature)) {
      for (const [x, y] of ring) {
        if (x < minX) minX = x;
        if (y < minY) minY = y;
        if (x > maxX) maxX = x;
        if (y > maxY) maxY = y;
      }
    }
  }
  return { minX, minY, maxX, maxY };
}

function ringsToPath(rings: Ring[], proj: Projection): string {
  const parts: string[] = [];
  for (const ring of rings) {
    parts.push(
      ring
        .map(([x, y], i) => `${i === 0 ? "M" : "L"}${proj.x(x).toFixed(2)},${proj.y(y).toFixed(2)}`)
        .join(""),
      "Z",
    );
  }
  return parts.join("");
}

export function regionId(feature: Feature, idProperty = "id"): string {
  const fromProps = feature.properties?.[idProperty];
  return String(fromProps ?? feature.id ?? "");
}

export function buildMapScene(
  geometry: FeatureCollection,
  cluster: ClusterMapPayload,
  opts: MapOptions,
): SceneNode {
  const proj = fitExtent(geometryBounds(geometry), opts.width, opts.height);
  const labelById = new Map(cluster.entries.map((e) => [e.id, e.label]));
  const regions = geometry.features.map((feature) => {
    const id = regionId(feature);
    const label = labelById.get(id) ?? "not-significant";
    const pinned = opts.pinned?.has(id) ?? false;
    const hovered = opts.hoveredId === id;
    const classes = ["region", pinned ? "pinned" : "", hovered ? "hovered" : ""]
      .join(" ")
      .trim();
    return el("path", {
      class: classes,
      "data-id": id,
      "data-label": label,
      d: ringsToPath(featureRings(feature), proj),
      fill: cluster.legend[label] ?? "#cccccc",
      "fill-rule": "evenodd",
    });
  });
  return el("g", { class: "cluster-map" }, regions);
}
