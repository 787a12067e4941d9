"""Permutation kernels: numba-accelerated with a pure-numpy fallback.

The conditional-permutation loop dominates runtime (regions x replicates x
draws), so it is implemented twice: a ``numba.njit(parallel=True)`` kernel
and a vectorized numpy fallback. Set ``LISAKIT_NO_NUMBA=1`` to force the
fallback; it is also selected automatically when numba is unavailable.

Both backends draw replicate randomness from a counter-based splitmix64
stream keyed by ``(seed, location index, replicate, step)``. State never
crosses locations or replicates, so output is bit-identical regardless of
thread count, scheduling, or backend. Each replicate consumes exactly
``2k - 1`` draws: ``k`` for a Floyd k-subset selection from the ``n - 1``
non-focal values and ``k - 1`` for a Fisher-Yates shuffle that makes the
slot assignment order-uniform (weights differ per slot, so order matters).
"""

from __future__ import annotations

import os

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)

_flag = os.environ.get("LISAKIT_NO_NUMBA", "").strip().lower()
_numba_wanted = _flag not in {"1", "true", "yes"}

if _numba_wanted:
    try:
        from numba import njit, prange

        HAS_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a hard dep in practice
        HAS_NUMBA = False
else:
    HAS_NUMBA = False


def _mix64_np(x):
    """splitmix64 finalizer over uint64 arrays (wraparound intended)."""
    with np.errstate(over="ignore"):
        x = (x ^ (x >> np.uint64(30))) * _MIX1
        x = (x ^ (x >> np.uint64(27))) * _MIX2
        return x ^ (x >> np.uint64(31))


def permuted_statistics_numpy(z, indptr, weights, locs, permutations, seed):
    """Pure-numpy backend; vectorized over replicates, looped over locations.

    Parameters
    ----------
    z : (n,) float64 array of normalized attribute values.
    indptr, weights : CSR layout of the row-normalized weight matrix.
    locs : int64 array of focal location indices to process (degree >= 1).
    permutations : number of replicates per location.
    seed : master seed; location substreams derive from (seed, index).

    Returns
    -------
    (len(locs), permutations) float64 array of permuted local statistics.
    """
    n = z.shape[0]
    pool = n - 1
    nm1 = float(n - 1)
    m = permutations
    out = np.empty((len(locs), m), dtype=np.float64)
    rows = np.arange(m)
    with np.errstate(over="ignore"):
        reps = np.arange(1, m + 1, dtype=np.uint64) * _GOLDEN
        lks = _mix64_np(
            np.uint64(seed) + (np.asarray(locs, np.uint64) + np.uint64(1)) * _GOLDEN
        )
    for li in range(len(locs)):
        i = int(locs[li])
        start, end = int(indptr[i]), int(indptr[i + 1])
        k = end - start
        with np.errstate(over="ignore"):
            rb = _mix64_np(lks[li] + reps)
        sel = np.empty((m, k), dtype=np.int64)
        for t in range(k):
            j = pool - k + t
            with np.errstate(over="ignore"):
                u = _mix64_np(rb + np.uint64(t + 1) * _GOLDEN)
            v = (u % np.uint64(j + 1)).astype(np.int64)
            if t:
                dup = (sel[:, :t] == v[:, None]).any(axis=1)
                sel[:, t] = np.where(dup, j, v)
            else:
                sel[:, t] = v
        step = k
        for t in range(k - 1, 0, -1):
            with np.errstate(over="ignore"):
                u = _mix64_np(rb + np.uint64(step + 1) * _GOLDEN)
            s = (u % np.uint64(t + 1)).astype(np.int64)
            tv = sel[rows, t].copy()
            sel[rows, t] = sel[rows, s]
            sel[rows, s] = tv
            step += 1
        idx = np.where(sel < i, sel, sel + 1)
        vals = z[idx]
        w = weights[start:end]
        acc = np.zeros(m, dtype=np.float64)
        for t in range(k):
            acc += w[t] * vals[:, t]
        out[li] = (z[i] * acc) / nm1
    return out


if HAS_NUMBA:

    @njit(cache=True)
    def _mix64(x):
        x = (x ^ (x >> np.uint64(30))) * _MIX1
        x = (x ^ (x >> np.uint64(27))) * _MIX2
        return x ^ (x >> np.uint64(31))

    @njit(parallel=True, cache=True)
    def _permuted_statistics_nb(z, indptr, weights, locs, permutations, seed):
        n = z.shape[0]
        pool = n - 1
        nm1 = float(n - 1)
        out = np.empty((len(locs), permutations), dtype=np.float64)
        for li in prange(len(locs)):
            i = locs[li]
            start = indptr[i]
            k = indptr[i + 1] - start
            zi = z[i]
            lk = _mix64(np.uint64(seed) + np.uint64(i + 1) * _GOLDEN)
            sel = np.empty(k, dtype=np.int64)
            for r in range(permutations):
                rb = _mix64(lk + np.uint64(r + 1) * _GOLDEN)
                for t in range(k):
                    j = pool - k + t
                    u = _mix64(rb + np.uint64(t + 1) * _GOLDEN)
                    v = np.int64(u % np.uint64(j + 1))
                    dup = False
                    for q in range(t):
                        if sel[q] == v:
                            dup = True
                            break
                    sel[t] = j if dup else v
                step = k
                for t in range(k - 1, 0, -1):
                    u = _mix64(rb + np.uint64(step + 1) * _GOLDEN)
                    s = np.int64(u % np.uint64(t + 1))
                    tmp = sel[t]
                    sel[t] = sel[s]
                    sel[s] = tmp
                    step += 1
                acc = 0.0
                for t in range(k):
                    v = sel[t]
                    zv = z[v] if v < i else z[v + 1]
                    acc += weights[start + t] * zv
                out[li, r] = (zi * acc) / nm1
        return out

    def permuted_statistics_numba(z, indptr, weights, locs, permutations, seed):
        """numba backend; see :func:`permuted_statistics_numpy`."""
        return _permuted_statistics_nb(
            z, indptr, weights, locs, permutations, np.uint64(seed)
        )

    permuted_statistics = permuted_statistics_numba
else:
    permuted_statistics_numba = None
    permuted_statistics = permuted_statistics_numpy


def backend_name():
    return "numba" if HAS_NUMBA else "numpy"


def set_parallel_workers(workers):
    """Pin the numba thread pool to ``workers`` (clamped to the pool size).

    Returns the effective worker count. The numpy backend is single-threaded,
    so this is a no-op there; results are identical either way by design.
    """
    if not HAS_NUMBA or workers is None:
        return 1 if not HAS_NUMBA else workers
    import numba

    effective = max(1, min(int(workers), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(effective)
    return effective
