"""Unit tests for normalization, lag, local/global Moran, and labeling."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lisakit import (
    AttributeSeries,
    BadAlpha,
    EmptyDistribution,
    IdMismatch,
    IsolatedRegion,
    LengthMismatch,
    NegativeWeight,
    SpatialWeights,
    TooFewValues,
    ZeroVariance,
    analyze,
    assign_label,
    global_moran,
    local_moran,
    pseudo_p,
    row_normalize,
    significance_thresholds,
    spatial_lag,
    zscore_normalize,
)
from lisakit.stats import HIGH_HIGH, HIGH_LOW, ISOLATED, LOW_HIGH, LOW_LOW, NOT_SIGNIFICANT

from conftest import path_weights, random_connected_weights


class TestZscoreNormalize:
    def test_one_to_five(self):
        # Oracle: mean 3, sample std sqrt(2.5).
        out = zscore_normalize([1, 2, 3, 4, 5])
        expected = (np.arange(1.0, 6.0) - 3.0) / np.sqrt(2.5)
        np.testing.assert_allclose(out, expected, atol=1e-12)
        np.testing.assert_allclose(
            out, [-1.26491, -0.63246, 0.0, 0.63246, 1.26491], atol=1e-5
        )

    def test_symmetric_pair(self):
        np.testing.assert_allclose(
            zscore_normalize([-1, 1]), [-0.70711, 0.70711], atol=1e-5
        )

    def test_constant_raises(self):
        with pytest.raises(ZeroVariance):
            zscore_normalize([5, 5, 5])

    def test_too_few(self):
        with pytest.raises(TooFewValues):
            zscore_normalize([1.0])

    def test_large_offset_mean_still_zero(self):
        rng = np.random.default_rng(5)
        out = zscore_normalize(rng.normal(size=3000) + 1e9)
        assert abs(out.mean()) < 1e-12
        assert abs(out.var(ddof=1) - 1.0) < 1e-12

    @given(
        st.lists(
            st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
            min_size=2,
            max_size=200,
        ).filter(lambda v: max(v) - min(v) > 1e-6)
    )
    @settings(max_examples=100, deadline=None)
    def test_moments_property(self, values):
        out = zscore_normalize(values)
        assert abs(out.mean()) < 1e-12
        assert abs(out.var(ddof=1) - 1.0) < 1e-9
        # Order preserved: output position i is the affine image of input i.
        v = np.asarray(values)
        expected = (v - v.mean()) / (v - v.mean()).std(ddof=1)
        np.testing.assert_allclose(out, expected, atol=1e-9)


class TestRowNormalize:
    def test_two_equal_neighbors(self):
        w = SpatialWeights(3, [[(1, 1.0), (2, 1.0)], [(0, 1.0)], [(0, 1.0)]])
        wn = row_normalize(w)
        assert wn.rows[0] == [(1, 0.5), (2, 0.5)]
        assert wn.normalized

    def test_isolated_row_unchanged(self):
        w = SpatialWeights(3, [[(1, 1.0)], [(0, 1.0)], []])
        wn = row_normalize(w)
        assert wn.rows[2] == []

    def test_uniform_nonbinary(self):
        w = SpatialWeights(
            5,
            [
                [(3, 2.0), (4, 2.0)],
                [],
                [],
                [(0, 2.0)],
                [(0, 2.0)],
            ],
        )
        assert row_normalize(w).rows[0] == [(3, 0.5), (4, 0.5)]

    def test_negative_weight(self):
        w = SpatialWeights(2, [[(1, -1.0)], [(0, -1.0)]])
        with pytest.raises(NegativeWeight):
            row_normalize(w)

    def test_row_sums(self):
        rng = np.random.default_rng(3)
        w = random_connected_weights(rng, 40)
        wn = row_normalize(w)
        for row in wn.rows:
            if row:
                assert abs(sum(wt for _, wt in row) - 1.0) < 1e-12


class TestSpatialLag:
    def test_fixture_a_against_dense_oracle(self, fixture_a):
        series, weights = fixture_a
        z = zscore_normalize(series.values)
        wn = row_normalize(weights)
        lag = spatial_lag(z, wn)
        # Oracle: dense matrix-vector product over the explicit 5x5 W'.
        dense = np.zeros((5, 5))
        for i, row in enumerate(wn.rows):
            for j, wt in row:
                dense[i, j] = wt
        np.testing.assert_allclose(lag, dense @ z, atol=1e-15)
        np.testing.assert_allclose(
            lag, [-0.63246, -0.63246, 0.0, 0.63246, 0.63246], atol=1e-5
        )

    def test_zero_values(self):
        wn = row_normalize(path_weights(4))
        np.testing.assert_array_equal(spatial_lag(np.zeros(4), wn), np.zeros(4))

    def test_isolated_is_nan(self):
        w = SpatialWeights(3, [[(1, 1.0)], [(0, 1.0)], []], normalized=True)
        lag = spatial_lag([1.0, -1.0, 5.0], w)
        assert np.isnan(lag[2]) and not np.isnan(lag[0])

    def test_length_mismatch(self):
        wn = row_normalize(path_weights(4))
        with pytest.raises(LengthMismatch):
            spatial_lag(np.zeros(5), wn)

    def test_requires_normalized(self):
        with pytest.raises(ValueError):
            spatial_lag(np.zeros(4), path_weights(4))


class TestLocalMoran:
    def test_fixture_a(self, fixture_a):
        series, weights = fixture_a
        z = zscore_normalize(series.values)
        stats = local_moran(z, row_normalize(weights))
        np.testing.assert_allclose(stats, [0.2, 0.1, 0.0, 0.1, 0.2], atol=1e-10)

    def test_zero_z_gives_zero(self):
        wn = row_normalize(path_weights(3))
        z = np.array([-1.0, 0.0, 1.0])
        assert local_moran(z, wn)[1] == 0.0

    def test_two_mutual_neighbors(self):
        w = SpatialWeights(2, [[(1, 1.0)], [(0, 1.0)]], normalized=True)
        z = zscore_normalize([-1.0, 1.0])
        np.testing.assert_allclose(local_moran(z, w), [-0.5, -0.5], atol=1e-12)

    def test_eq1_identity(self):
        rng = np.random.default_rng(11)
        w = row_normalize(random_connected_weights(rng, 30))
        z = zscore_normalize(rng.normal(size=30))
        lag = spatial_lag(z, w)
        stats = local_moran(z, w)
        np.testing.assert_allclose(stats, z * lag / 29.0, atol=1e-12)


class TestGlobalMoran:
    def test_fixture_a(self, fixture_a):
        series, weights = fixture_a
        z = zscore_normalize(series.values)
        wn = row_normalize(weights)
        assert abs(global_moran(z, wn) - 0.6) < 1e-10

    def test_equals_sum_of_local(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            n = int(rng.integers(5, 60))
            wn = row_normalize(random_connected_weights(rng, n))
            z = zscore_normalize(rng.normal(size=n))
            assert abs(global_moran(z, wn) - local_moran(z, wn).sum()) < 1e-10

    def test_two_node_checkerboard(self):
        w = SpatialWeights(2, [[(1, 1.0)], [(0, 1.0)]], normalized=True)
        z = zscore_normalize([-3.0, 3.0])
        assert abs(global_moran(z, w) - (-1.0)) < 1e-12

    def test_sanity_band_on_random_instances(self):
        rng = np.random.default_rng(19)
        for _ in range(200):
            n = int(rng.integers(5, 80))
            wn = row_normalize(random_connected_weights(rng, n))
            z = zscore_normalize(rng.normal(size=n))
            assert -1.05 <= global_moran(z, wn) <= 1.05

    def test_isolated_rejected(self):
        w = SpatialWeights(3, [[(1, 1.0)], [(0, 1.0)], []], normalized=True)
        with pytest.raises(IsolatedRegion):
            global_moran([1.0, -1.0, 0.0], w)


class TestPseudoP:
    def test_extreme_observation(self):
        assert pseudo_p(10.0, np.arange(99.0) / 100.0) == 0.01

    def test_all_ties(self):
        assert pseudo_p(2.0, np.full(9, 2.0)) == 1.0

    def test_empty(self):
        with pytest.raises(EmptyDistribution):
            pseudo_p(1.0, [])

    def test_lower_tail(self):
        permuted = np.array([1.0, 2.0, 3.0, 4.0])
        assert pseudo_p(0.0, permuted) == 1.0 / 5.0

    @given(
        st.lists(st.floats(-100, 100), min_size=1, max_size=200),
        st.floats(-200, 200),
        st.floats(0.1, 50.0),
    )
    @settings(max_examples=100, deadline=None)
    def test_bounds_and_tail_monotonicity(self, permuted, observed, push):
        arr = np.asarray(permuted)
        p1 = pseudo_p(observed, arr)
        assert 0.0 < p1 <= 1.0
        # Pushing the observation away from the permutation mean (staying
        # in the same tail) never increases p.
        mean = arr.mean()
        further = observed + push if observed >= mean else observed - push
        assert pseudo_p(further, arr) <= p1


class TestSignificanceThresholds:
    def test_nearest_rank_1_to_100(self):
        low, high = significance_thresholds(np.arange(1.0, 101.0), 0.05)
        assert (low, high) == (5.0, 95.0)

    def test_constant(self):
        low, high = significance_thresholds(np.full(50, 7.0), 0.05)
        assert (low, high) == (7.0, 7.0)

    def test_nearest_rank_1_to_1000(self):
        low, high = significance_thresholds(np.arange(1.0, 1001.0), 0.01)
        assert (low, high) == (10.0, 990.0)

    def test_bad_alpha(self):
        with pytest.raises(BadAlpha):
            significance_thresholds(np.arange(100.0), 0.6)
        with pytest.raises(BadAlpha):
            significance_thresholds(np.arange(5.0), 0.05)

    def test_empty(self):
        with pytest.raises(EmptyDistribution):
            significance_thresholds([], 0.05)

    @given(
        st.lists(st.floats(-1e6, 1e6), min_size=25, max_size=500),
        st.floats(0.01, 0.49),
    )
    @settings(max_examples=80, deadline=None)
    def test_low_le_high(self, permuted, alpha):
        if len(permuted) < np.ceil(1.0 / alpha):
            return
        low, high = significance_thresholds(permuted, alpha)
        assert low <= high


class TestAssignLabel:
    @pytest.mark.parametrize(
        "z,lag,p,expected",
        [
            (1.2, 0.8, 0.01, HIGH_HIGH),
            (-0.5, 0.9, 0.02, LOW_HIGH),
            (2.0, 1.0, 0.30, NOT_SIGNIFICANT),
            (-1.0, -1.0, 0.04, LOW_LOW),
            (1.0, -1.0, 0.04, HIGH_LOW),
            (0.0, 1.0, 0.01, NOT_SIGNIFICANT),
            (1.0, 0.0, 0.01, NOT_SIGNIFICANT),
        ],
    )
    def test_quadrants(self, z, lag, p, expected):
        assert assign_label(z, lag, p, 0.05) == expected

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            assign_label(float("nan"), 1.0, 0.01, 0.05)


class TestAnalyze:
    def test_fixture_a_statistics(self, fixture_a):
        series, weights = fixture_a
        results = analyze(series, weights, permutations=999, seed=42)
        stats = [r.statistic for r in results]
        np.testing.assert_allclose(stats, [0.2, 0.1, 0.0, 0.1, 0.2], atol=1e-10)
        for r in results:
            assert r.permutation.count == 999
            assert len(r.permutation.permuted_statistics) == 999
            assert 0.0 < r.permutation.pseudo_p <= 1.0
            assert r.permutation.low_threshold <= r.permutation.high_threshold

    def test_isolated_region_labeled(self):
        series = AttributeSeries(["a", "b", "c"], [1.0, 2.0, 3.0])
        w = SpatialWeights(3, [[(1, 1.0)], [(0, 1.0)], []])
        results = analyze(series, w, permutations=99)
        assert results[2].label == ISOLATED
        assert results[2].permutation is None
        assert results[2].lag is None and results[2].statistic is None
        assert results[0].label != ISOLATED

    def test_rerun_identical(self, fixture_a):
        series, weights = fixture_a
        r1 = analyze(series, weights, permutations=199, seed=9)
        r2 = analyze(series, weights, permutations=199, seed=9)
        for a, b in zip(r1, r2):
            assert a.label == b.label
            assert a.permutation.pseudo_p == b.permutation.pseudo_p
            np.testing.assert_array_equal(
                a.permutation.permuted_statistics, b.permutation.permuted_statistics
            )

    def test_id_mismatch(self, fixture_a):
        series, _ = fixture_a
        with pytest.raises(IdMismatch):
            analyze(series, path_weights(4))

    def test_label_quadrant_consistency(self):
        rng = np.random.default_rng(23)
        n = 80
        series = AttributeSeries([str(i) for i in range(n)], rng.normal(size=n))
        results = analyze(series, random_connected_weights(rng, n), permutations=199)
        for r in results:
            if r.label == HIGH_HIGH:
                assert r.z > 0 and r.lag > 0
            elif r.label == LOW_LOW:
                assert r.z < 0 and r.lag < 0
            elif r.label == HIGH_LOW:
                assert r.z > 0 and r.lag < 0
            elif r.label == LOW_HIGH:
                assert r.z < 0 and r.lag > 0
            if r.label not in (NOT_SIGNIFICANT, ISOLATED):
                assert r.permutation.pseudo_p <= 0.05

    def test_storage_order_equivariance(self):
        # Reordering regions permutes the deterministic fields (up to float
        # summation order, which depends on storage order). Permutation
        # summaries are equivariant in law only: replicate streams are keyed
        # by location index by design.
        rng = np.random.default_rng(31)
        n = 25
        values = rng.normal(size=n)
        w = random_connected_weights(rng, n)
        ids = [f"id{i}" for i in range(n)]
        base = analyze(AttributeSeries(ids, values), w, permutations=49)

        perm = rng.permutation(n)
        inv = np.argsort(perm)
        new_rows = [
            sorted((int(inv[j]), wt) for j, wt in w.rows[int(perm[i])])
            for i in range(n)
        ]
        w2 = SpatialWeights(n, new_rows)
        shuffled = analyze(
            AttributeSeries([ids[int(i)] for i in perm], values[perm]),
            w2,
            permutations=49,
        )
        by_id = {r.id: r for r in shuffled}
        for r in base:
            s = by_id[r.id]
            assert abs(s.z - r.z) < 1e-12
            assert abs(s.lag - r.lag) < 1e-12
            assert abs(s.statistic - r.statistic) < 1e-12
