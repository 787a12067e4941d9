"""Benchmark the numba permutation kernel against the pure-numpy fallback.

Usage:
    python benchmarks/bench_permutation.py [--permutations 999] [--sizes 500,3000]
"""

import argparse
import time

import numpy as np

from lisakit import _kernels
from lisakit.stats import row_normalize, zscore_normalize, SpatialWeights


def random_weights(rng, n, mean_degree=6):
    neighbor_sets = [set() for _ in range(n)]
    for i in range(1, n):
        j = int(rng.integers(0, i))
        neighbor_sets[i].add(j)
        neighbor_sets[j].add(i)
    edges = n - 1
    while edges < mean_degree * n // 2:
        i, j = int(rng.integers(0, n)), int(rng.integers(0, n))
        if i != j and j not in neighbor_sets[i]:
            neighbor_sets[i].add(j)
            neighbor_sets[j].add(i)
            edges += 1
    rows = [[(j, 1.0) for j in sorted(s)] for s in neighbor_sets]
    return row_normalize(SpatialWeights(n, rows))


def bench(fn, *args, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--permutations", type=int, default=999)
    parser.add_argument("--sizes", default="500,3000")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"active backend: {_kernels.backend_name()}")
    header = f"{'n':>6} {'M':>6} {'numpy (s)':>10} {'numba (s)':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n in (int(s) for s in args.sizes.split(",")):
        weights = random_weights(rng, n)
        z = zscore_normalize(rng.normal(size=n))
        indptr, _, w = weights.csr()
        locs = np.arange(n, dtype=np.int64)

        t_np, out_np = bench(
            _kernels.permuted_statistics_numpy,
            z, indptr, w, locs, args.permutations, args.seed,
        )
        if _kernels.permuted_statistics_numba is not None:
            _kernels.permuted_statistics_numba(  # compile outside timing
                z, indptr, w, locs[:2], 8, args.seed
            )
            t_nb, out_nb = bench(
                _kernels.permuted_statistics_numba,
                z, indptr, w, locs, args.permutations, args.seed,
            )
            assert np.array_equal(out_np, out_nb), "backends disagree"
            print(
                f"{n:>6} {args.permutations:>6} {t_np:>10.3f} {t_nb:>10.3f}"
                f" {t_np / t_nb:>7.1f}x"
            )
        else:
            print(f"{n:>6} {args.permutations:>6} {t_np:>10.3f} {'n/a':>10} {'n/a':>8}")


if __name__ == "__main__":
    main()
