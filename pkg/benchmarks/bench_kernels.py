#!/usr/bin/env python3
"""numba vs numpy backend: Monte Carlo throughput and exhaustive oracle time.

Usage:
    python3 benchmarks/bench_kernels.py [--samples N] [--oracle-n N] [--repeat R]
"""

from __future__ import annotations

import argparse
import time

from approxadd import _kernels, exhaustive_distribution, monte_carlo_distribution, validate_config


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=2_000_000)
    ap.add_argument("--oracle-n", type=int, default=12)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable (or APPROXADD_NO_NUMBA set); numpy only")

    cases = [
        ("monte carlo (64,4,4)", lambda b: monte_carlo_distribution(validate_config(64, 4, 4), args.samples, 1, backend=b)),
        ("monte carlo (32,1,6)", lambda b: monte_carlo_distribution(validate_config(32, 1, 6), args.samples, 1, backend=b)),
        (
            f"exhaustive ({args.oracle_n},2,3)",
            lambda b: exhaustive_distribution(validate_config(args.oracle_n, 2, 3), backend=b),
        ),
    ]
    print(f"{'case':<26}{'backend':<8}{'seconds':>10}{'Mpairs/s':>11}")
    for name, run in cases:
        results = {}
        for b in backends:
            run(b)  # warm-up, includes JIT compile for numba
            sec, emp = best_of(lambda: run(b), args.repeat)
            results[b] = emp.counts
            print(f"{name:<26}{b:<8}{sec:>10.4f}{emp.total / sec / 1e6:>11.1f}")
        if len(results) == 2:
            assert results["numpy"] == results["numba"], "backends disagree"


if __name__ == "__main__":
    main()
