"""Analysis bundles: compute, serialize, reload, and serve payload bodies.

A bundle is a single JSON document (gzip-compressed when the path ends in
``.json.gz``) holding the dataset name, the full configuration, every
per-region result including permutation replicates, and the embedded source
geometry. Weights and centroids are rebuilt deterministically from the
geometry at load time, so a reloaded bundle reproduces every payload
field-for-field.
"""

from __future__ import annotations

import gzip
import json
from dataclasses import dataclass, field

import numpy as np

from . import payloads as pl
from .errors import IdMismatch, MalformedDocument
from .geo import (
    DEFAULT_SNAP_TOLERANCE,
    ContiguityRule,
    QUEEN,
    build_contiguity,
    parse_regions,
)
from .stats import (
    AttributeSeries,
    DEFAULT_ALPHA,
    DEFAULT_PERMUTATIONS,
    DEFAULT_SEED,
    LocalMoranResult,
    PermutationSummary,
    analyze,
    row_normalize,
)

SCHEMA_VERSION = 1

PLOT_KINDS = ("dual-density", "network", "radial", "cluster-map")
PER_LOCATION_PLOTS = ("dual-density", "radial")


def canonical_json(body) -> bytes:
    """Compact UTF-8 JSON bytes; the single wire encoding for all payloads."""
    return json.dumps(body, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def result_to_dict(result: LocalMoranResult) -> dict:
    perm = None
    if result.permutation is not None:
        s = result.permutation
        perm = {
            "count": int(s.count),
            "permutedStatistics": [float(v) for v in s.permuted_statistics],
            "pseudoP": float(s.pseudo_p),
            "lowThreshold": float(s.low_threshold),
            "highThreshold": float(s.high_threshold),
            "seed": int(s.seed),
        }
    return {
        "id": result.id,
        "z": float(result.z),
        "lag": None if result.lag is None else float(result.lag),
        "statistic": None if result.statistic is None else float(result.statistic),
        "permutation": perm,
        "label": result.label,
    }


def result_from_dict(data: dict) -> LocalMoranResult:
    perm = None
    if data.get("permutation") is not None:
        p = data["permutation"]
        perm = PermutationSummary(
            count=int(p["count"]),
            permuted_statistics=np.asarray(p["permutedStatistics"], dtype=np.float64),
            pseudo_p=float(p["pseudoP"]),
            low_threshold=float(p["lowThreshold"]),
            high_threshold=float(p["highThreshold"]),
            seed=int(p["seed"]),
        )
    return LocalMoranResult(
        id=data["id"],
        z=float(data["z"]),
        lag=None if data["lag"] is None else float(data["lag"]),
        statistic=None if data["statistic"] is None else float(data["statistic"]),
        permutation=perm,
        label=data["label"],
    )


@dataclass(eq=False)
class AnalysisBundle:
    """Self-contained analysis output: config, results, and geometry."""

    dataset_name: str
    config: dict
    results: list
    geometry_ref: object
    payload_cache: dict | None = None

    def to_dict(self) -> dict:
        return {
            "schemaVersion": SCHEMA_VERSION,
            "datasetName": self.dataset_name,
            "config": dict(self.config),
            "results": [result_to_dict(r) for r in self.results],
            "geometryRef": self.geometry_ref,
            "payloadCache": self.payload_cache,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisBundle":
        try:
            return cls(
                dataset_name=data["datasetName"],
                config=dict(data["config"]),
                results=[result_from_dict(r) for r in data["results"]],
                geometry_ref=data["geometryRef"],
                payload_cache=data.get("payloadCache"),
            )
        except (KeyError, TypeError) as exc:
            raise MalformedDocument(f"not an analysis bundle: {exc}") from exc


def default_config(
    permutations: int = DEFAULT_PERMUTATIONS,
    seed: int = DEFAULT_SEED,
    alpha: float = DEFAULT_ALPHA,
    contiguity: str = QUEEN,
    snap_tolerance: float = DEFAULT_SNAP_TOLERANCE,
    id_property: str = "id",
    lonlat: bool = False,
) -> dict:
    return {
        "permutations": int(permutations),
        "seed": int(seed),
        "alpha": float(alpha),
        "contiguity": contiguity,
        "snapTolerance": float(snap_tolerance),
        "idProperty": id_property,
        "lonlat": bool(lonlat),
    }


def compute_bundle(
    geometry_document,
    values_by_id: dict,
    dataset_name: str,
    config: dict | None = None,
    workers: int | None = None,
) -> AnalysisBundle:
    """Parse geometry, join attribute values by id, analyze, and bundle.

    ``values_by_id`` maps region id (string) to attribute value. Ids must
    match the geometry exactly in both directions.

    Raises
    ------
    IdMismatch : ids present on only one side; the message lists up to ten.
    """
    cfg = dict(default_config())
    if config:
        cfg.update(config)
    if isinstance(geometry_document, (str, bytes)):
        geometry_document = json.loads(geometry_document)
    regions = parse_regions(geometry_document, id_property=cfg["idProperty"])

    geo_ids = [r.id for r in regions]
    data_ids = {str(k): v for k, v in values_by_id.items()}
    missing_values = [i for i in geo_ids if i not in data_ids]
    missing_regions = [i for i in data_ids if i not in set(geo_ids)]
    if missing_values or missing_regions:
        parts = []
        if missing_values:
            parts.append(f"no attribute value for regions {missing_values[:10]}")
        if missing_regions:
            parts.append(f"no geometry for ids {missing_regions[:10]}")
        raise IdMismatch("; ".join(parts))

    series = AttributeSeries(geo_ids, [data_ids[i] for i in geo_ids])
    rule = ContiguityRule(kind=cfg["contiguity"], snap_tolerance=cfg["snapTolerance"])
    weights = build_contiguity(regions, rule)
    results = analyze(
        series,
        weights,
        permutations=cfg["permutations"],
        seed=cfg["seed"],
        alpha=cfg["alpha"],
        workers=workers,
    )
    return AnalysisBundle(
        dataset_name=dataset_name,
        config=cfg,
        results=results,
        geometry_ref=geometry_document,
    )


def write_bundle(bundle: AnalysisBundle, path) -> None:
    raw = canonical_json(bundle.to_dict())
    if str(path).endswith(".json.gz"):
        with gzip.open(path, "wb") as fh:
            fh.write(raw)
    else:
        with open(path, "wb") as fh:
            fh.write(raw)


def read_bundle(path) -> AnalysisBundle:
    opener = gzip.open if str(path).endswith(".json.gz") else open
    try:
        with opener(path, "rb") as fh:
            data = json.loads(fh.read().decode("utf-8"))
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedDocument(f"cannot read bundle {path}: {exc}") from exc
    return AnalysisBundle.from_dict(data)


@dataclass(eq=False)
class Workspace:
    """A loaded bundle plus everything rebuilt from it.

    Both the HTTP service and the export command fetch response bodies from
    here, so a served payload and an exported file are byte-identical.
    """

    bundle: AnalysisBundle
    regions: dict = field(default_factory=dict)
    weights: object = None
    series: AttributeSeries = None

    @classmethod
    def from_bundle(cls, bundle: AnalysisBundle) -> "Workspace":
        cfg = bundle.config
        geometry = bundle.geometry_ref
        if isinstance(geometry, str):
            with open(geometry, "rb") as fh:
                geometry = json.loads(fh.read().decode("utf-8"))
        region_list = parse_regions(geometry, id_property=cfg.get("idProperty", "id"))
        if [g.id for g in region_list] != [r.id for r in bundle.results]:
            raise MalformedDocument("bundle results do not align with geometry features")
        rule = ContiguityRule(
            kind=cfg.get("contiguity", QUEEN),
            snap_tolerance=cfg.get("snapTolerance", DEFAULT_SNAP_TOLERANCE),
        )
        weights = row_normalize(build_contiguity(region_list, rule))
        # Bundles store z values only; payload builders consume zvalues alone,
        # so the raw-value slot carries the same array.
        series = AttributeSeries(
            ids=[r.id for r in bundle.results],
            values=[r.z for r in bundle.results],
            zvalues=[r.z for r in bundle.results],
        )
        return cls(
            bundle=bundle,
            regions={g.id: g for g in region_list},
            weights=weights,
            series=series,
        )

    @property
    def results(self):
        return self.bundle.results

    def _wrap(self, body: dict) -> dict:
        return {"schemaVersion": SCHEMA_VERSION, **body}

    def meta_body(self) -> dict:
        counts = {}
        for r in self.results:
            counts[r.label] = counts.get(r.label, 0) + 1
        return self._wrap(
            {
                "datasetName": self.bundle.dataset_name,
                "config": dict(self.bundle.config),
                "regionCount": len(self.results),
                "labelCounts": counts,
            }
        )

    def results_body(self) -> dict:
        return self._wrap({"results": [result_to_dict(r) for r in self.results]})

    def geometry_body(self) -> dict:
        geometry = self.bundle.geometry_ref
        if isinstance(geometry, str):
            with open(geometry, "rb") as fh:
                geometry = json.loads(fh.read().decode("utf-8"))
        return self._wrap({"geometry": geometry})

    def component_body(self, location_id) -> dict:
        ids = pl.same_label_component(location_id, self.results, self.weights)
        return self._wrap(
            {"focalId": location_id, "componentIds": sorted(ids, key=str)}
        )

    def plot_body(self, kind: str, location_id=None, mode: str = pl.COLOR_MODE_LABEL) -> dict:
        if kind == "network":
            payload = pl.build_network_scatter(self.results, self.weights)
        elif kind == "cluster-map":
            payload = pl.build_cluster_map(self.results)
        elif kind == "dual-density":
            payload = pl.build_dual_density(
                location_id, self.results, self.series, self.weights, color_mode=mode
            )
        elif kind == "radial":
            payload = pl.build_radial(
                location_id,
                self.results,
                self.series,
                self.weights,
                self.regions,
                lonlat=bool(self.bundle.config.get("lonlat", False)),
            )
        else:
            raise ValueError(f"unknown plot kind {kind!r}")
        return self._wrap(payload.to_dict())

    def plot_bytes(self, kind: str, location_id=None, mode: str = pl.COLOR_MODE_LABEL) -> bytes:
        return canonical_json(self.plot_body(kind, location_id, mode))
