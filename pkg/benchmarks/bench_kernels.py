#!/usr/bin/env python3
"""Benchmark the jitted kernels against the pure-numpy fallback.

Runs every table-scan kernel on heap/multiplication tables of cyclic groups
of growing order and reports best-of-N wall times for both backends plus the
speedup.  The numba path is compiled (and disk-cached) before timing.

Usage: python benchmarks/bench_kernels.py [--sizes 8,16,24] [--repeats 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from trusskit._kernels import numba_backend, numpy_backend


def heap_table(n: int) -> np.ndarray:
    idx = np.arange(n, dtype=np.int64)
    return (idx[:, None, None] - idx[None, :, None] + idx[None, None, :]) % n


def mul_table(n: int) -> np.ndarray:
    idx = np.arange(n, dtype=np.int64)
    return (idx[:, None] * idx[None, :]) % n


KERNELS = [
    ("malcev_left", lambda b, t, m: b.malcev_left(t)),
    ("malcev_right", lambda b, t, m: b.malcev_right(t)),
    ("abelian", lambda b, t, m: b.abelian(t)),
    ("mul_assoc", lambda b, t, m: b.mul_assoc(m)),
    ("assoc", lambda b, t, m: b.assoc(t)),
    ("para_assoc", lambda b, t, m: b.para_assoc(t)),
    ("left_distrib", lambda b, t, m: b.left_distrib(t, m)),
    ("right_distrib", lambda b, t, m: b.right_distrib(t, m)),
]


def best_of(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="8,16,24")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    # trigger compilation outside the timed region
    warm_t, warm_m = heap_table(2), mul_table(2)
    for _, call in KERNELS:
        call(numba_backend, warm_t, warm_m)

    print(f"{'kernel':<14} {'n':>4} {'numba':>12} {'numpy':>12} {'speedup':>9}")
    for n in sizes:
        t, m = heap_table(n), mul_table(n)
        for name, call in KERNELS:
            jit = best_of(lambda: call(numba_backend, t, m), args.repeats)
            plain = best_of(lambda: call(numpy_backend, t, m), args.repeats)
            a = call(numba_backend, t, m)
            b = call(numpy_backend, t, m)
            agree = "" if np.array_equal(a, b) else "  MISMATCH"
            print(f"{name:<14} {n:>4} {jit * 1e3:>10.2f}ms {plain * 1e3:>10.2f}ms "
                  f"{plain / jit:>8.1f}x{agree}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
