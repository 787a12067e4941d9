"""Shared fixtures: canonical small datasets, geometry builders, oracles."""

import itertools
import os

# Allow up to 8 parallel workers regardless of core count; must be set
# before numba is first imported.
os.environ.setdefault("NUMBA_NUM_THREADS", "8")

import numpy as np
import pytest

from lisakit import AttributeSeries, SpatialWeights


def path_weights(n):
    """Binary path graph 0-1-...-(n-1)."""
    rows = []
    for i in range(n):
        row = []
        if i > 0:
            row.append((i - 1, 1.0))
        if i < n - 1:
            row.append((i + 1, 1.0))
        rows.append(row)
    return SpatialWeights(n, rows)


@pytest.fixture
def fixture_a():
    """Five regions on a path with values 1..5."""
    series = AttributeSeries(["1", "2", "3", "4", "5"], [1.0, 2.0, 3.0, 4.0, 5.0])
    return series, path_weights(5)


@pytest.fixture
def fixture_b():
    """n=4: focal 0 with single neighbor 1; pairs (0,1) and (2,3)."""
    z = np.array([0.70710678118654746, 0.70710678118654746, -1.4142135623730951, 0.0])
    rows = [[(1, 1.0)], [(0, 1.0)], [(3, 1.0)], [(2, 1.0)]]
    return z, SpatialWeights(4, rows, normalized=True)


def square_feature(rid, x0, y0, size=1.0):
    x1, y1 = x0 + size, y0 + size
    return {
        "type": "Feature",
        "properties": {"id": rid},
        "geometry": {
            "type": "Polygon",
            "coordinates": [[[x0, y0], [x1, y0], [x1, y1], [x0, y1], [x0, y0]]],
        },
    }


def grid_geojson(nx, ny):
    """nx*ny unit squares, row-major ids "r{row}c{col}"."""
    features = [
        square_feature(f"r{r}c{c}", float(c), float(r))
        for r in range(ny)
        for c in range(nx)
    ]
    return {"type": "FeatureCollection", "features": features}


def path_geojson(n):
    """n unit squares in a horizontal strip, ids "1".."n" (FIXTURE-A layout)."""
    features = [square_feature(str(i + 1), float(i), 0.0) for i in range(n)]
    return {"type": "FeatureCollection", "features": features}


def random_connected_weights(rng, n, extra_edges=None):
    """Random spanning tree plus extra random edges; binary symmetric."""
    neighbor_sets = [set() for _ in range(n)]
    for i in range(1, n):
        j = int(rng.integers(0, i))
        neighbor_sets[i].add(j)
        neighbor_sets[j].add(i)
    if extra_edges is None:
        extra_edges = n // 2
    for _ in range(extra_edges):
        i = int(rng.integers(0, n))
        j = int(rng.integers(0, n))
        if i != j:
            neighbor_sets[i].add(j)
            neighbor_sets[j].add(i)
    rows = [[(j, 1.0) for j in sorted(s)] for s in neighbor_sets]
    return SpatialWeights(n, rows)


def enumerate_permuted_statistics(focal, z, weights):
    """Every ordered assignment of non-focal values to the focal's slots.

    Independent oracle for the conditional-permutation kernel: the exact
    support and exact tail probabilities come from full enumeration of the
    P(n-1, k) arrangements. Only feasible for small n.
    """
    z = np.asarray(z, dtype=np.float64)
    n = len(z)
    pool = [z[j] for j in range(n) if j != focal]
    row = weights.rows[focal]
    k = len(row)
    slot_weights = [w for _, w in row]
    out = []
    for combo in itertools.permutations(range(n - 1), k):
        lag = sum(w * pool[v] for w, v in zip(slot_weights, combo))
        out.append(z[focal] * lag / (n - 1))
    return np.asarray(out)


def exact_tail_probability(observed, enumerated):
    """Exact one-sided tail mass, same tail and tie conventions as pseudo_p."""
    enumerated = np.asarray(enumerated)
    tol = 1e-12 * max(1.0, abs(observed))
    if observed >= enumerated.mean():
        return float((enumerated >= observed - tol).mean())
    return float((enumerated <= observed + tol).mean())
