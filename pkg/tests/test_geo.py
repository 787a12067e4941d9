"""Geometry parsing, contiguity construction, centroids, bearings."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lisakit import (
    CoincidentPoints,
    ContiguityRule,
    DegenerateGeometry,
    MalformedDocument,
    MissingId,
    RegionGeometry,
    UnsupportedGeometry,
    bearing,
    build_contiguity,
    centroid,
    parse_regions,
)

from conftest import grid_geojson, square_feature


class TestParseRegions:
    def test_two_shared_edge_squares(self):
        doc = {
            "type": "FeatureCollection",
            "features": [square_feature("a", 0, 0), square_feature("b", 1, 0)],
        }
        regions = parse_regions(doc)
        assert [r.id for r in regions] == ["a", "b"]
        assert regions[0].centroid == (0.5, 0.5)
        assert regions[1].centroid == (1.5, 0.5)

    def test_missing_id(self):
        doc = {
            "type": "FeatureCollection",
            "features": [
                {
                    "type": "Feature",
                    "properties": {},
                    "geometry": {
                        "type": "Polygon",
                        "coordinates": [[[0, 0], [1, 0], [1, 1], [0, 0]]],
                    },
                }
            ],
        }
        with pytest.raises(MissingId):
            parse_regions(doc)

    def test_multipolygon_multiple_rings(self):
        doc = {
            "type": "FeatureCollection",
            "features": [
                {
                    "type": "Feature",
                    "properties": {"id": "m"},
                    "geometry": {
                        "type": "MultiPolygon",
                        "coordinates": [
                            [[[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]]],
                            [[[5, 0], [6, 0], [6, 1], [5, 1], [5, 0]]],
                        ],
                    },
                }
            ],
        }
        regions = parse_regions(doc)
        assert len(regions) == 1
        assert len(regions[0].rings) == 2
        assert regions[0].centroid == (3.0, 0.5)

    def test_unsupported_geometry(self):
        doc = {
            "type": "FeatureCollection",
            "features": [
                {
                    "type": "Feature",
                    "properties": {"id": "p"},
                    "geometry": {"type": "Point", "coordinates": [0, 0]},
                }
            ],
        }
        with pytest.raises(UnsupportedGeometry):
            parse_regions(doc)

    def test_unclosed_ring_gets_closed(self):
        doc = {
            "type": "FeatureCollection",
            "features": [
                {
                    "type": "Feature",
                    "properties": {"id": "t"},
                    "geometry": {
                        "type": "Polygon",
                        "coordinates": [[[0, 0], [2, 0], [0, 2]]],
                    },
                }
            ],
        }
        regions = parse_regions(doc)
        ring = regions[0].rings[0]
        assert ring[0] == ring[-1] and len(ring) == 4

    def test_duplicate_ids_rejected(self):
        doc = {
            "type": "FeatureCollection",
            "features": [square_feature("a", 0, 0), square_feature("a", 5, 5)],
        }
        with pytest.raises(MalformedDocument):
            parse_regions(doc)

    def test_json_string_and_custom_property(self):
        doc = {
            "type": "FeatureCollection",
            "features": [square_feature("x", 0, 0)],
        }
        doc["features"][0]["properties"] = {"fips": "48161"}
        regions = parse_regions(json.dumps(doc), id_property="fips")
        assert regions[0].id == "48161"

    def test_not_a_collection(self):
        with pytest.raises(MalformedDocument):
            parse_regions({"type": "Feature"})


class TestCentroid:
    def test_unit_square(self):
        r = RegionGeometry("s", [[(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)]], (0, 0))
        assert centroid(r) == (0.5, 0.5)

    def test_triangle(self):
        r = RegionGeometry("t", [[(0, 0), (2, 0), (0, 2), (0, 0)]], (0, 0))
        cx, cy = centroid(r)
        assert abs(cx - 2.0 / 3.0) < 1e-12 and abs(cy - 2.0 / 3.0) < 1e-12

    def test_zero_area_sliver(self):
        r = RegionGeometry("z", [[(0, 0), (1, 1), (2, 2), (0, 0)]], (0, 0))
        with pytest.raises(DegenerateGeometry):
            centroid(r)

    def test_orientation_independent(self):
        cw = RegionGeometry("c", [[(0, 0), (0, 1), (1, 1), (1, 0), (0, 0)]], (0, 0))
        assert centroid(cw) == (0.5, 0.5)


class TestContiguity:
    def test_grid_rook_and_queen(self):
        regions = parse_regions(grid_geojson(3, 3))
        rook = build_contiguity(regions, ContiguityRule(kind="rook"))
        queen = build_contiguity(regions, ContiguityRule(kind="queen"))
        center = 4  # r1c1 in row-major 3x3
        assert rook.degree(center) == 4
        assert queen.degree(center) == 8

    def test_corner_touch_queen_only(self):
        doc = {
            "type": "FeatureCollection",
            "features": [square_feature("a", 0, 0), square_feature("b", 1, 1)],
        }
        regions = parse_regions(doc)
        queen = build_contiguity(regions, ContiguityRule(kind="queen"))
        rook = build_contiguity(regions, ContiguityRule(kind="rook"))
        assert queen.degree(0) == 1
        assert rook.degree(0) == 0

    def test_disjoint_squares_isolated(self):
        doc = {
            "type": "FeatureCollection",
            "features": [square_feature("a", 0, 0), square_feature("b", 10, 10)],
        }
        regions = parse_regions(doc)
        w = build_contiguity(regions)
        assert w.rows == [[], []]

    def test_rook_subset_of_queen(self):
        regions = parse_regions(grid_geojson(5, 4))
        rook = build_contiguity(regions, ContiguityRule(kind="rook"))
        queen = build_contiguity(regions, ContiguityRule(kind="queen"))
        for i in range(len(regions)):
            rook_set = {j for j, _ in rook.rows[i]}
            queen_set = {j for j, _ in queen.rows[i]}
            assert rook_set <= queen_set

    def test_snap_tolerance_bridges_jitter(self):
        features = [square_feature("a", 0, 0)]
        jittered = square_feature("b", 1 + 3e-8, 0)
        features.append(jittered)
        regions = parse_regions({"type": "FeatureCollection", "features": features})
        w = build_contiguity(regions, ContiguityRule(kind="queen", snap_tolerance=1e-6))
        assert w.degree(0) == 1
        exact = build_contiguity(regions, ContiguityRule(kind="queen", snap_tolerance=0.0))
        assert exact.degree(0) == 0

    def test_translation_invariance(self):
        doc = grid_geojson(4, 3)
        regions = parse_regions(doc)
        shifted_doc = json.loads(json.dumps(doc))
        for f in shifted_doc["features"]:
            f["geometry"]["coordinates"] = [
                [[x + 137.5, y - 42.25] for x, y in ring]
                for ring in f["geometry"]["coordinates"]
            ]
        shifted = parse_regions(shifted_doc)
        for rule in (ContiguityRule(kind="queen"), ContiguityRule(kind="rook")):
            a = build_contiguity(regions, rule)
            b = build_contiguity(shifted, rule)
            assert a.rows == b.rows
        for r1, r2 in zip(regions, shifted):
            assert abs(r1.centroid[0] + 137.5 - r2.centroid[0]) < 1e-9
            assert abs(r1.centroid[1] - 42.25 - r2.centroid[1]) < 1e-9


class TestBearing:
    @pytest.mark.parametrize(
        "neighbor,expected",
        [
            ((1, 0), 0.0),
            ((0, 1), math.pi / 2),
            ((-1, -1), 5 * math.pi / 4),
            ((-1, 0), math.pi),
            ((0, -1), 3 * math.pi / 2),
        ],
    )
    def test_cardinal_angles(self, neighbor, expected):
        assert abs(bearing((0, 0), neighbor) - expected) < 1e-12

    def test_coincident(self):
        with pytest.raises(CoincidentPoints):
            bearing((1, 1), (1, 1))

    def test_lonlat_scaling(self):
        # At 60N, one degree of longitude is half a degree of latitude.
        angle = bearing((0.0, 60.0), (1.0, 61.0), lonlat=True)
        dx = 1.0 * math.cos(math.radians(60.5))
        assert abs(angle - math.atan2(1.0, dx)) < 1e-12

    @given(
        st.tuples(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3)),
        st.tuples(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3)),
    )
    @settings(max_examples=200, deadline=None)
    def test_antipodal_property(self, a, b):
        if a == b:
            return
        fwd = bearing(a, b)
        back = bearing(b, a)
        assert 0.0 <= fwd < 2 * math.pi
        diff = (fwd - back) % (2 * math.pi)
        assert abs(diff - math.pi) < 1e-6


def test_contiguity_symmetry_randomized():
    rng = np.random.default_rng(2)
    for _ in range(10):
        nx, ny = int(rng.integers(2, 7)), int(rng.integers(2, 7))
        regions = parse_regions(grid_geojson(nx, ny))
        kind = "queen" if rng.integers(2) else "rook"
        w = build_contiguity(regions, ContiguityRule(kind=kind))
        pairs = {(i, j) for i, row in enumerate(w.rows) for j, _ in row}
        assert all((j, i) in pairs for i, j in pairs)
