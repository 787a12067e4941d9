"""Local Moran's I: normalization, spatial lag, permutation inference, labels.

The local statistic for region ``i`` is ``I_i = z_i * lag_i / (n - 1)`` where
``z`` holds z-score normalized attribute values (sample std, ddof=1) and
``lag_i`` is the row-normalized weighted average of neighbor z values. With
sample-std normalization the sum of local statistics equals global Moran's I,
which the test suite uses as a consistency oracle.

Significance is assessed by conditional permutation: the focal value stays
fixed while neighbor slots are refilled with values drawn uniformly without
replacement from the remaining ``n - 1`` observations. Replicate streams are
keyed by ``(seed, location index)``, so results do not depend on the parallel
schedule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import (
    BadAlpha,
    EmptyDistribution,
    IdMismatch,
    IsolatedRegion,
    LengthMismatch,
    NegativeWeight,
    TooFewValues,
    ZeroVariance,
)

HIGH_HIGH = "high-high"
LOW_LOW = "low-low"
HIGH_LOW = "high-low"
LOW_HIGH = "low-high"
NOT_SIGNIFICANT = "not-significant"
ISOLATED = "isolated"

#: The six-label vocabulary used by cluster maps and payloads.
LABELS = (HIGH_HIGH, LOW_LOW, HIGH_LOW, LOW_HIGH, NOT_SIGNIFICANT, ISOLATED)

DEFAULT_PERMUTATIONS = 999
DEFAULT_ALPHA = 0.05
DEFAULT_SEED = 0


@dataclass(eq=False)
class AttributeSeries:
    """Per-region attribute values keyed by region id.

    Parameters
    ----------
    ids : list of region identifiers (unique, order defines row order).
    values : attribute values aligned with ``ids``.
    zvalues : z-score normalized values, populated by :meth:`normalized`.
    """

    ids: list
    values: np.ndarray
    zvalues: np.ndarray | None = None

    def __post_init__(self):
        self.ids = list(self.ids)
        if len(set(self.ids)) != len(self.ids):
            raise IdMismatch("region ids are not unique")
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1 or len(self.values) != len(self.ids):
            raise IdMismatch("ids and values must have equal length")
        if self.zvalues is not None:
            self.zvalues = np.asarray(self.zvalues, dtype=np.float64)

    def normalized(self) -> "AttributeSeries":
        """Return a copy with ``zvalues`` computed (no-op if present)."""
        if self.zvalues is not None:
            return self
        return AttributeSeries(self.ids, self.values, zscore_normalize(self.values))


@dataclass(eq=False)
class SpatialWeights:
    """Sparse region-adjacency operator.

    ``rows[i]`` lists ``(neighbor index, weight)`` pairs for region ``i``.
    The raw form is binary (or nonnegative) and symmetric as a neighbor
    structure; :func:`row_normalize` produces the row-stochastic form used
    by the lag operator. Isolated regions have empty rows.
    """

    n: int
    rows: list
    normalized: bool = False
    _csr: tuple | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise LengthMismatch(f"expected {self.n} rows, got {len(self.rows)}")
        seen = set()
        for i, row in enumerate(self.rows):
            for j, w in row:
                if j == i:
                    raise ValueError(f"self-loop at region index {i}")
                if j < 0 or j >= self.n:
                    raise ValueError(f"neighbor index {j} out of range")
                seen.add((i, j))
        for i, j in seen:
            if (j, i) not in seen:
                raise ValueError(
                    f"neighbor structure not symmetric: {i}->{j} without {j}->{i}"
                )

    def degree(self, i: int) -> int:
        return len(self.rows[i])

    def isolated_indices(self) -> list:
        return [i for i in range(self.n) if not self.rows[i]]

    def csr(self):
        """CSR layout ``(indptr, indices, weights)`` as numpy arrays (cached)."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            for i, row in enumerate(self.rows):
                indptr[i + 1] = indptr[i] + len(row)
            indices = np.empty(indptr[-1], dtype=np.int64)
            weights = np.empty(indptr[-1], dtype=np.float64)
            pos = 0
            for row in self.rows:
                for j, w in row:
                    indices[pos] = j
                    weights[pos] = w
                    pos += 1
            self._csr = (indptr, indices, weights)
        return self._csr


@dataclass(eq=False)
class PermutationSummary:
    """Permutation-inference bundle for one region.

    ``permuted_statistics`` retains all replicate statistics for density
    plotting; ``low_threshold``/``high_threshold`` are the nearest-rank
    empirical quantiles at the configured significance level.
    """

    count: int
    permuted_statistics: np.ndarray
    pseudo_p: float
    low_threshold: float
    high_threshold: float
    seed: int


@dataclass(eq=False)
class LocalMoranResult:
    """Per-region result: value, lag, statistic, inference summary, label.

    ``lag``, ``statistic`` and ``permutation`` are ``None`` for isolated
    regions, which carry the ``"isolated"`` label and take no part in
    inference.
    """

    id: object
    z: float
    lag: float | None
    statistic: float | None
    permutation: PermutationSummary | None
    label: str


def zscore_normalize(values) -> np.ndarray:
    """Z-score normalize with sample standard deviation (ddof=1).

    Centers twice so the output mean is zero to within accumulated rounding
    even for large offsets. Output has sample variance 1.

    Raises
    ------
    TooFewValues : fewer than two observations.
    ZeroVariance : all observations equal.
    """
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("values must be one-dimensional")
    if len(x) < 2:
        raise TooFewValues(f"need at least 2 values, got {len(x)}")
    centered = x - x.mean()
    centered -= centered.mean()
    std = centered.std(ddof=1)
    if std == 0.0 or not np.isfinite(std):
        raise ZeroVariance("attribute values have zero sample variance")
    return centered / std


def row_normalize(weights: SpatialWeights) -> SpatialWeights:
    """Return the row-stochastic form of a raw weight matrix.

    Each non-empty row is divided by its sum; empty rows stay empty and the
    neighbor sets are unchanged.

    Raises
    ------
    NegativeWeight : any input weight is negative.
    """
    rows = []
    for i, row in enumerate(weights.rows):
        for j, w in row:
            if w < 0:
                raise NegativeWeight(f"negative weight {w} at row {i}")
        total = math.fsum(w for _, w in row)
        if row and total == 0.0:
            raise ValueError(f"row {i} has neighbors but zero total weight")
        rows.append([(j, w / total) for j, w in row])
    return SpatialWeights(weights.n, rows, normalized=True)


def _require_normalized(weights: SpatialWeights):
    if not weights.normalized:
        raise ValueError("weights must be row-normalized; call row_normalize first")


def spatial_lag(z, weights: SpatialWeights) -> np.ndarray:
    """Weighted average of neighbor z values, per region.

    Isolated regions get ``nan`` (the lag is undefined there, not zero).
    """
    _require_normalized(weights)
    z = np.asarray(z, dtype=np.float64)
    if len(z) != weights.n:
        raise LengthMismatch(f"{len(z)} values for {weights.n} regions")
    indptr, indices, w = weights.csr()
    counts = np.diff(indptr)
    row_ids = np.repeat(np.arange(weights.n), counts)
    lag = np.bincount(row_ids, weights=w * z[indices], minlength=weights.n)
    lag[counts == 0] = np.nan
    return lag


def local_moran(z, weights: SpatialWeights) -> np.ndarray:
    """Local Moran's I per region: ``z * lag / (n - 1)``; nan when isolated."""
    z = np.asarray(z, dtype=np.float64)
    lag = spatial_lag(z, weights)
    return (z * lag) / (weights.n - 1)


def global_moran(z, weights: SpatialWeights) -> float:
    """Global Moran's I: ``sum(z * lag) / sum(z**2)``.

    With sample-std normalization this equals the sum of the local
    statistics, which makes it a consistency oracle for :func:`local_moran`.

    Raises
    ------
    IsolatedRegion : any region has no neighbors (exclude them first).
    ZeroVariance : the z vector is identically zero.
    """
    _require_normalized(weights)
    z = np.asarray(z, dtype=np.float64)
    if len(z) != weights.n:
        raise LengthMismatch(f"{len(z)} values for {weights.n} regions")
    isolated = weights.isolated_indices()
    if isolated:
        raise IsolatedRegion(f"regions without neighbors: {isolated[:10]}")
    denom = float(np.sum(z * z))
    if denom == 0.0:
        raise ZeroVariance("z values are identically zero")
    lag = spatial_lag(z, weights)
    return float(np.sum(z * lag) / denom)


def conditional_permutation(
    focal_index: int, z, weights: SpatialWeights, permutations: int, seed: int
) -> np.ndarray:
    """Replicate local statistics under conditional permutation.

    Each replicate holds the focal value fixed, fills the focal region's
    neighbor slots with values drawn uniformly without replacement from the
    other ``n - 1`` observations, and evaluates the local statistic. The
    output is a pure function of ``(seed, focal_index, permutations)`` and
    the dataset order; thread count and backend do not affect it.

    Raises
    ------
    IsolatedRegion : the focal region has no neighbors.
    """
    _require_normalized(weights)
    z = np.asarray(z, dtype=np.float64)
    if len(z) != weights.n:
        raise LengthMismatch(f"{len(z)} values for {weights.n} regions")
    if not 0 <= focal_index < weights.n:
        raise ValueError(f"focal index {focal_index} out of range")
    if weights.degree(focal_index) == 0:
        raise IsolatedRegion(f"region index {focal_index} has no neighbors")
    if permutations < 1:
        raise ValueError("permutations must be >= 1")
    indptr, _, w = weights.csr()
    locs = np.asarray([focal_index], dtype=np.int64)
    return _kernels.permuted_statistics(z, indptr, w, locs, permutations, seed)[0]


#: Relative tolerance for tie detection: replicates within a few ulps of the
#: observed value count as "as extreme". Different summation orders produce
#: one-ulp discrepancies on mathematically tied values, and strict comparison
#: would turn those into arbitrary tail counts.
_TIE_RTOL = 1e-12


def pseudo_p(observed: float, permuted) -> float:
    """One-sided pseudo p-value ``(R + 1) / (M + 1)``.

    The tail is chosen relative to the permutation mean: replicates at least
    as extreme as the observed value count toward ``R``, with ties (up to
    float noise) included.
    """
    arr = np.asarray(permuted, dtype=np.float64)
    if arr.size == 0:
        raise EmptyDistribution("no permuted statistics supplied")
    tol = _TIE_RTOL * max(1.0, abs(observed))
    if observed >= arr.mean():
        r = int(np.count_nonzero(arr >= observed - tol))
    else:
        r = int(np.count_nonzero(arr <= observed + tol))
    return (r + 1) / (arr.size + 1)


def significance_thresholds(permuted, alpha: float) -> tuple:
    """Nearest-rank empirical quantiles at ``alpha`` and ``1 - alpha``.

    Uses rank ``ceil(q * M)`` on the ascending sort (rounded at the ninth
    decimal to absorb float noise in ``q * M``).

    Raises
    ------
    BadAlpha : ``alpha`` outside (0, 0.5) or ``M < ceil(1 / alpha)``.
    EmptyDistribution : empty input.
    """
    arr = np.asarray(permuted, dtype=np.float64)
    if arr.size == 0:
        raise EmptyDistribution("no permuted statistics supplied")
    if not 0.0 < alpha < 0.5:
        raise BadAlpha(f"alpha must be in (0, 0.5), got {alpha}")
    if arr.size < math.ceil(1.0 / alpha):
        raise BadAlpha(
            f"need at least {math.ceil(1.0 / alpha)} replicates for alpha={alpha}"
        )
    ordered = np.sort(arr)
    m = arr.size
    low_rank = math.ceil(round(alpha * m, 9))
    high_rank = math.ceil(round((1.0 - alpha) * m, 9))
    return float(ordered[low_rank - 1]), float(ordered[high_rank - 1])


def assign_label(z_i: float, lag_i: float, pseudo_p_value: float, alpha: float) -> str:
    """Quadrant label for a significant result, else ``not-significant``.

    Exact zeros in ``z`` or ``lag`` leave the quadrant undefined and map to
    ``not-significant`` even when significant.
    """
    if not (math.isfinite(z_i) and math.isfinite(lag_i)):
        raise ValueError("z and lag must be finite")
    if pseudo_p_value > alpha:
        return NOT_SIGNIFICANT
    if z_i > 0 and lag_i > 0:
        return HIGH_HIGH
    if z_i < 0 and lag_i < 0:
        return LOW_LOW
    if z_i > 0 and lag_i < 0:
        return HIGH_LOW
    if z_i < 0 and lag_i > 0:
        return LOW_HIGH
    return NOT_SIGNIFICANT


def analyze(
    series: AttributeSeries,
    weights: SpatialWeights,
    permutations: int = DEFAULT_PERMUTATIONS,
    seed: int = DEFAULT_SEED,
    alpha: float = DEFAULT_ALPHA,
    workers: int | None = None,
) -> list:
    """Run the full local Moran workflow over a dataset.

    Normalizes the attribute values, row-normalizes the weights, computes
    lags and statistics, then runs per-region conditional permutation to
    attach pseudo p-values, thresholds and labels. Isolated regions are kept
    in the output with the ``"isolated"`` label and no permutation summary.

    ``workers`` pins the parallel worker count; output is bit-identical for
    any value.
    """
    if len(series.ids) != weights.n:
        raise IdMismatch(
            f"{len(series.ids)} attribute rows for {weights.n} weight rows"
        )
    if permutations < 1:
        raise ValueError("permutations must be >= 1")
    if not 0.0 < alpha < 0.5:
        raise BadAlpha(f"alpha must be in (0, 0.5), got {alpha}")

    series = series.normalized()
    z = series.zvalues
    wn = weights if weights.normalized else row_normalize(weights)
    lag = spatial_lag(z, wn)
    stat = (z * lag) / (wn.n - 1)

    locs = np.asarray(
        [i for i in range(wn.n) if wn.degree(i) > 0], dtype=np.int64
    )
    if locs.size:
        indptr, _, w = wn.csr()
        _kernels.set_parallel_workers(workers)
        perms = _kernels.permuted_statistics(z, indptr, w, locs, permutations, seed)
    else:
        perms = np.empty((0, permutations))

    results = []
    by_loc = {int(i): r for r, i in enumerate(locs)}
    for i, rid in enumerate(series.ids):
        if i not in by_loc:
            results.append(
                LocalMoranResult(rid, float(z[i]), None, None, None, ISOLATED)
            )
            continue
        row = perms[by_loc[i]]
        p = pseudo_p(float(stat[i]), row)
        low, high = significance_thresholds(row, alpha)
        summary = PermutationSummary(
            count=permutations,
            permuted_statistics=row,
            pseudo_p=p,
            low_threshold=low,
            high_threshold=high,
            seed=seed,
        )
        label = assign_label(float(z[i]), float(lag[i]), p, alpha)
        results.append(
            LocalMoranResult(
                rid, float(z[i]), float(lag[i]), float(stat[i]), summary, label
            )
        )
    return results
