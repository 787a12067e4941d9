"""Region geometry: GeoJSON parsing, contiguity weights, centroids, bearings.

Contiguity is detected by snapped-vertex hashing rather than geometric
intersection: coordinates are snapped to a grid of cell size
``snap_tolerance`` and regions sharing a snapped vertex (queen) or a snapped
consecutive-vertex edge (rook) become neighbors. Only outer rings take part;
holes are dropped at parse time.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import (
    CoincidentPoints,
    DegenerateGeometry,
    MalformedDocument,
    MissingId,
    UnsupportedGeometry,
)
from .stats import SpatialWeights

QUEEN = "queen"
ROOK = "rook"

DEFAULT_SNAP_TOLERANCE = 1e-7


@dataclass(eq=False)
class RegionGeometry:
    """A region's outer boundary rings and area-weighted centroid.

    ``rings`` holds one closed coordinate ring per polygon part (first point
    equals the last); multipolygon regions carry several rings.
    """

    id: object
    rings: list
    centroid: tuple


@dataclass(frozen=True)
class ContiguityRule:
    """Neighbor rule: ``queen`` (shared vertex) or ``rook`` (shared edge)."""

    kind: str = QUEEN
    snap_tolerance: float = DEFAULT_SNAP_TOLERANCE

    def __post_init__(self):
        if self.kind not in (QUEEN, ROOK):
            raise ValueError(f"contiguity kind must be queen or rook, got {self.kind}")
        if self.snap_tolerance < 0:
            raise ValueError("snap tolerance must be nonnegative")


def _ring_centroid_area(ring):
    """Shoelace centroid and signed area of one closed ring."""
    a2 = 0.0
    cx = 0.0
    cy = 0.0
    for (x1, y1), (x2, y2) in zip(ring[:-1], ring[1:]):
        det = x1 * y2 - x2 * y1
        a2 += det
        cx += (x1 + x2) * det
        cy += (y1 + y2) * det
    if a2 == 0.0:
        return 0.0, 0.0, 0.0
    return cx / (3.0 * a2), cy / (3.0 * a2), a2 / 2.0


def centroid(region: RegionGeometry) -> tuple:
    """Area-weighted centroid over the region's rings (|area| weights).

    Raises
    ------
    DegenerateGeometry : all rings have zero area.
    """
    total = 0.0
    cxn = 0.0
    cyn = 0.0
    for ring in region.rings:
        cx, cy, a = _ring_centroid_area(ring)
        w = abs(a)
        total += w
        cxn += cx * w
        cyn += cy * w
    if total == 0.0:
        raise DegenerateGeometry(f"region {region.id!r} has zero total area")
    return (cxn / total, cyn / total)


def _close_ring(coords):
    ring = [(float(x), float(y)) for x, y in coords]
    if len(ring) < 3:
        raise MalformedDocument("ring has fewer than 3 points")
    if ring[0] != ring[-1]:
        ring.append(ring[0])
    if len(ring) < 4:
        raise MalformedDocument("closed ring has fewer than 4 points")
    return ring


def _outer_rings(geometry):
    gtype = geometry.get("type")
    coords = geometry.get("coordinates")
    if gtype == "Polygon":
        parts = [coords]
    elif gtype == "MultiPolygon":
        parts = coords
    else:
        raise UnsupportedGeometry(f"geometry type {gtype!r} is not supported")
    if not parts:
        raise MalformedDocument("geometry has no polygon parts")
    return [_close_ring(part[0]) for part in parts]


def parse_regions(document, id_property: str = "id") -> list:
    """Parse a GeoJSON FeatureCollection into :class:`RegionGeometry` list.

    Accepts a parsed dict or a JSON string. Region ids come from the feature
    property named ``id_property`` (falling back to the RFC 7946 top-level
    ``id`` member when the default name is used). Ring closure is enforced;
    hole rings are discarded.

    Raises
    ------
    MalformedDocument : not a FeatureCollection, bad rings, duplicate ids.
    UnsupportedGeometry : a feature is not Polygon/MultiPolygon.
    MissingId : a feature lacks the id property.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict) or document.get("type") != "FeatureCollection":
        raise MalformedDocument("document is not a GeoJSON FeatureCollection")
    features = document.get("features")
    if not isinstance(features, list):
        raise MalformedDocument("FeatureCollection has no features list")

    regions = []
    seen = set()
    for pos, feature in enumerate(features):
        props = feature.get("properties") or {}
        rid = props.get(id_property)
        if rid is None and id_property == "id":
            rid = feature.get("id")
        if rid is None:
            raise MissingId(f"feature {pos} has no {id_property!r} property")
        rid = str(rid)
        if rid in seen:
            raise MalformedDocument(f"duplicate region id {rid!r}")
        seen.add(rid)
        geometry = feature.get("geometry") or {}
        rings = _outer_rings(geometry)
        region = RegionGeometry(rid, rings, (0.0, 0.0))
        region.centroid = centroid(region)
        regions.append(region)
    return regions


def _snap(point, tol):
    if tol <= 0.0:
        return point
    return (round(point[0] / tol), round(point[1] / tol))


def build_contiguity(regions: list, rule: ContiguityRule | None = None) -> SpatialWeights:
    """Binary symmetric contiguity weights from region boundaries.

    Queen: regions sharing at least one snapped vertex. Rook: regions
    sharing at least one snapped edge (two consecutive ring vertices).
    Regions touching nothing get empty rows.
    """
    rule = rule or ContiguityRule()
    keyed = {}
    for idx, region in enumerate(regions):
        for ring in region.rings:
            snapped = [_snap(p, rule.snap_tolerance) for p in ring]
            if rule.kind == QUEEN:
                for key in snapped[:-1]:
                    keyed.setdefault(key, set()).add(idx)
            else:
                for a, b in zip(snapped[:-1], snapped[1:]):
                    if a == b:
                        continue
                    key = (a, b) if a <= b else (b, a)
                    keyed.setdefault(key, set()).add(idx)

    neighbor_sets = [set() for _ in regions]
    for members in keyed.values():
        if len(members) < 2:
            continue
        for i in members:
            for j in members:
                if i != j:
                    neighbor_sets[i].add(j)

    rows = [[(j, 1.0) for j in sorted(s)] for s in neighbor_sets]
    return SpatialWeights(len(regions), rows, normalized=False)


def bearing(focal: tuple, neighbor: tuple, lonlat: bool = False) -> float:
    """Angle from ``focal`` to ``neighbor``, counterclockwise from east.

    Returns radians in ``[0, 2*pi)``. With ``lonlat=True`` the x-difference
    is scaled by the cosine of the mean latitude (local equirectangular
    approximation for degree coordinates).

    Raises
    ------
    CoincidentPoints : the two points are identical.
    """
    dx = neighbor[0] - focal[0]
    dy = neighbor[1] - focal[1]
    if dx == 0.0 and dy == 0.0:
        raise CoincidentPoints(f"identical points {focal}")
    if lonlat:
        mean_lat = math.radians((focal[1] + neighbor[1]) / 2.0)
        dx *= math.cos(mean_lat)
    angle = math.atan2(dy, dx) % (2.0 * math.pi)
    if angle >= 2.0 * math.pi:  # % rounds up for tiny negative angles
        angle = 0.0
    return angle
