"""Benchmark the alignment-oracle kernel: compiled loops vs. pure numpy.

Times the dynamic-programming linear oracle on square-ish cost matrices of
increasing size and reports both backends plus the speedup.  Run with:

    python3 benchmarks/bench_lmo.py
"""

import argparse
import time

import numpy as np

from seqalign._kernels import HAVE_NUMBA, _dp_align_numpy, dp_align


def bench(fn, cost, repeats):
    fn(cost)  # warm-up (and numba compilation on the first call)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(cost)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    shapes = [(11, 60), (44, 240), (110, 600), (300, 2000), (1000, 5000)]
    print(f"compiled backend available: {HAVE_NUMBA}")
    print(f"{'J x I':>12} {'numpy (ms)':>12} {'selected (ms)':>14} {'speedup':>8}")
    for j, i in shapes:
        cost = np.ascontiguousarray(rng.standard_normal((j, i)))
        t_numpy = bench(_dp_align_numpy, cost, args.repeats)
        t_fast = bench(dp_align, cost, args.repeats)
        v1, p1 = dp_align(cost)
        v2, p2 = _dp_align_numpy(cost)
        assert abs(v1 - v2) < 1e-9 and np.array_equal(p1, p2), "backends disagree"
        print(
            f"{j:>5} x {i:<5} {1e3 * t_numpy:>12.3f} {1e3 * t_fast:>14.3f} "
            f"{t_numpy / t_fast:>7.1f}x"
        )


if __name__ == "__main__":
    main()
