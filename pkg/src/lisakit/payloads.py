"""Serializable payloads for the dual-density, network, radial and map views.

Builders copy values straight out of :class:`~lisakit.stats.LocalMoranResult`
objects; they never recompute statistics. Each payload type has a
``to_dict`` emitting the documented JSON schema (camelCase keys, numbers as
IEEE-754 doubles, angles in radians).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .density import DensityCurve, DEFAULT_GRID_SIZE, kde, silverman_bandwidth
from .errors import DegenerateGeometry, IsolatedRegion, UnknownId, ZeroVariance
from .geo import bearing
from .stats import (
    HIGH_HIGH,
    HIGH_LOW,
    ISOLATED,
    LOW_HIGH,
    LOW_LOW,
    NOT_SIGNIFICANT,
    SpatialWeights,
    row_normalize,
)

COLOR_MODE_LABEL = "label"
COLOR_MODE_AUTOCORRELATION = "autocorrelation"

#: Fixed label palette: ColorBrewer RdBu 4-class plus greys.
LABEL_COLORS = {
    HIGH_HIGH: "#ca0020",
    HIGH_LOW: "#f4a582",
    LOW_HIGH: "#92c5de",
    LOW_LOW: "#0571b0",
    NOT_SIGNIFICANT: "#d9d9d9",
    ISOLATED: "#777777",
}

SIGNIFICANT_LABELS = (HIGH_HIGH, LOW_LOW, HIGH_LOW, LOW_HIGH)


def _curve_dict(curve: DensityCurve) -> dict:
    return {
        "gridX": [float(v) for v in curve.grid_x],
        "gridY": [float(v) for v in curve.grid_y],
        "bandwidth": float(curve.bandwidth),
    }


@dataclass(eq=False)
class DualDensityPayload:
    """Single-result view: value density on top, permuted density below."""

    focal_id: object
    focal_z: float
    neighbor_points: list
    lag: float
    statistic: float
    value_density: DensityCurve
    permuted_density: DensityCurve
    low_threshold: float
    high_threshold: float
    pseudo_p: float
    color_mode: str
    area_labels: list
    n: int

    def to_dict(self) -> dict:
        return {
            "focalId": self.focal_id,
            "focalZ": self.focal_z,
            "neighborPoints": [
                {"id": i, "z": z, "weight": w} for i, z, w in self.neighbor_points
            ],
            "lag": self.lag,
            "statistic": self.statistic,
            "valueDensity": _curve_dict(self.value_density),
            "permutedDensity": _curve_dict(self.permuted_density),
            "lowThreshold": self.low_threshold,
            "highThreshold": self.high_threshold,
            "pseudoP": self.pseudo_p,
            "colorMode": self.color_mode,
            "areaLabels": [
                {"range": list(rng), "text": text, "colorKey": key}
                for rng, text, key in self.area_labels
            ],
            "n": self.n,
        }


@dataclass(eq=False)
class NetworkScatterPayload:
    """Moran scatterplot points plus the undirected neighbor edges."""

    points: list
    edges: list
    n: int

    def to_dict(self) -> dict:
        return {
            "points": [
                {"id": i, "z": z, "lag": lag, "label": label, "pseudoP": p}
                for i, z, lag, label, p in self.points
            ],
            "edges": [
                {
                    "sourceId": s,
                    "targetId": t,
                    "weight": w,
                    "reverseWeight": rw,
                }
                for s, t, w, rw in self.edges
            ],
            "n": self.n,
        }


@dataclass(eq=False)
class RadialPayload:
    """Bearing-aligned neighbor spokes around one focal region."""

    focal_id: object
    spokes: list
    lag_radius_value: float
    zero_ring_value: float
    min_disc_value: float
    radial_domain: tuple

    def to_dict(self) -> dict:
        return {
            "focalId": self.focal_id,
            "spokes": [
                {"neighborId": i, "angle": a, "z": z, "weight": w}
                for i, a, z, w in self.spokes
            ],
            "lagRadiusValue": self.lag_radius_value,
            "zeroRingValue": self.zero_ring_value,
            "minDiscValue": self.min_disc_value,
            "radialDomain": list(self.radial_domain),
        }


@dataclass(eq=False)
class ClusterMapPayload:
    """Per-region label entries plus the shared legend."""

    entries: list
    legend: dict

    def to_dict(self) -> dict:
        return {
            "entries": [
                {"id": i, "label": label, "statistic": s, "pseudoP": p}
                for i, label, s, p in self.entries
            ],
            "legend": dict(self.legend),
        }


def _result_index(results, focal_id):
    for i, r in enumerate(results):
        if r.id == focal_id:
            return i
    raise UnknownId(f"no region with id {focal_id!r}")


def _normalized(weights: SpatialWeights) -> SpatialWeights:
    return weights if weights.normalized else row_normalize(weights)


def _dataset_z(results, series=None):
    if series is not None and series.zvalues is not None:
        return np.asarray(series.zvalues, dtype=np.float64)
    return np.asarray([r.z for r in results], dtype=np.float64)


def _permuted_curve(stats_arr, grid_size):
    try:
        h = silverman_bandwidth(stats_arr)
    except ZeroVariance:
        # Degenerate distribution (e.g. focal z exactly 0): nominal width
        # so the spike still renders and integrates to ~1.
        h = 0.01 * max(1.0, abs(float(stats_arr[0])))
    return kde(stats_arr, h, grid_size)


def _area_labels(color_mode, focal_z, low, high):
    if color_mode == COLOR_MODE_AUTOCORRELATION:
        return [
            ((high, None), "positive autocorrelation", "positive"),
            ((None, low), "negative autocorrelation", "negative"),
        ]
    # Label mode: the quadrant reachable on each side of the statistic axis
    # depends on the focal value's sign (z >= 0 orients like z > 0).
    upper = HIGH_HIGH if focal_z >= 0 else LOW_LOW
    lower = HIGH_LOW if focal_z >= 0 else LOW_HIGH
    return [
        ((high, None), upper, upper),
        ((None, low), lower, lower),
    ]


def build_dual_density(
    focal_id,
    results,
    series,
    weights: SpatialWeights,
    color_mode: str = COLOR_MODE_LABEL,
    grid_size: int = DEFAULT_GRID_SIZE,
) -> DualDensityPayload:
    """Dual-density payload for one analyzed, non-isolated region.

    The upper curve is a KDE over every region's z value; the lower curve is
    a KDE over the focal region's permuted statistics. Thresholds, pseudo p
    and the statistic come from the stored result, never recomputed.
    """
    if color_mode not in (COLOR_MODE_LABEL, COLOR_MODE_AUTOCORRELATION):
        raise ValueError(f"unknown color mode {color_mode!r}")
    idx = _result_index(results, focal_id)
    res = results[idx]
    if res.label == ISOLATED or res.permutation is None:
        raise IsolatedRegion(f"region {focal_id!r} has no neighbors")
    wn = _normalized(weights)
    z = _dataset_z(results, series)

    neighbor_points = [
        (results[j].id, float(z[j]), float(w)) for j, w in wn.rows[idx]
    ]
    value_density = kde(z, silverman_bandwidth(z), grid_size)
    permuted_density = _permuted_curve(res.permutation.permuted_statistics, grid_size)
    summary = res.permutation
    return DualDensityPayload(
        focal_id=res.id,
        focal_z=res.z,
        neighbor_points=neighbor_points,
        lag=res.lag,
        statistic=res.statistic,
        value_density=value_density,
        permuted_density=permuted_density,
        low_threshold=summary.low_threshold,
        high_threshold=summary.high_threshold,
        pseudo_p=summary.pseudo_p,
        color_mode=color_mode,
        area_labels=_area_labels(
            color_mode, res.z, summary.low_threshold, summary.high_threshold
        ),
        n=len(results),
    )


def build_network_scatter(results, weights: SpatialWeights) -> NetworkScatterPayload:
    """Scatter points for every non-isolated region plus undirected edges.

    Each unordered neighbor pair appears once, carrying the row-normalized
    weight in both directions (row normalization makes them differ).
    """
    if not results:
        raise ValueError("results must be nonempty")
    wn = _normalized(weights)
    points = [
        (r.id, r.z, r.lag, r.label, r.permutation.pseudo_p)
        for r in results
        if r.permutation is not None
    ]
    directed = {}
    for i, row in enumerate(wn.rows):
        for j, w in row:
            directed[(i, j)] = float(w)
    edges = []
    for (i, j), w in sorted(directed.items()):
        if i < j:
            edges.append((results[i].id, results[j].id, w, directed[(j, i)]))
    return NetworkScatterPayload(points=points, edges=edges, n=len(results))


def same_label_component(focal_id, results, weights: SpatialWeights) -> set:
    """Connected same-label component around ``focal_id``.

    Breadth-first traversal of the neighbor structure restricted to regions
    sharing the focal label. Not-significant and isolated focals never
    traverse; they return just themselves.
    """
    idx = _result_index(results, focal_id)
    label = results[idx].label
    if label not in SIGNIFICANT_LABELS:
        return {results[idx].id}
    component = {idx}
    queue = deque([idx])
    while queue:
        cur = queue.popleft()
        for j, _ in weights.rows[cur]:
            if j not in component and results[j].label == label:
                component.add(j)
                queue.append(j)
    return {results[i].id for i in component}


def build_radial(
    focal_id,
    results,
    series,
    weights: SpatialWeights,
    geometry,
    lonlat: bool = False,
) -> RadialPayload:
    """Radial payload: one spoke per neighbor at its compass bearing.

    ``geometry`` maps region id to :class:`~lisakit.geo.RegionGeometry` (a
    list is also accepted). The radial domain covers the dataset z range,
    widened to include zero and the focal lag.
    """
    idx = _result_index(results, focal_id)
    res = results[idx]
    if res.permutation is None:
        raise IsolatedRegion(f"region {focal_id!r} has no neighbors")
    if not isinstance(geometry, dict):
        geometry = {g.id: g for g in geometry}
    try:
        focal_centroid = geometry[res.id].centroid
    except KeyError:
        raise UnknownId(f"no geometry for region {focal_id!r}") from None
    wn = _normalized(weights)
    z = _dataset_z(results, series)

    spokes = []
    for j, w in wn.rows[idx]:
        nid = results[j].id
        if nid not in geometry:
            raise UnknownId(f"no geometry for region {nid!r}")
        try:
            angle = bearing(focal_centroid, geometry[nid].centroid, lonlat=lonlat)
        except Exception as exc:
            raise DegenerateGeometry(
                f"cannot orient {nid!r} from {res.id!r}: coincident centroids"
            ) from exc
        spokes.append((nid, float(angle), float(z[j]), float(w)))

    lo = min(float(z.min()), 0.0, res.lag)
    hi = max(float(z.max()), 0.0, res.lag)
    return RadialPayload(
        focal_id=res.id,
        spokes=spokes,
        lag_radius_value=res.lag,
        zero_ring_value=0.0,
        min_disc_value=float(z.min()),
        radial_domain=(lo, hi),
    )


def build_cluster_map(results) -> ClusterMapPayload:
    """Cluster-map payload: every region (isolated included) plus legend."""
    if not results:
        raise ValueError("results must be nonempty")
    entries = [
        (
            r.id,
            r.label,
            r.statistic,
            r.permutation.pseudo_p if r.permutation is not None else None,
        )
        for r in results
    ]
    return ClusterMapPayload(entries=entries, legend=dict(LABEL_COLORS))
