"""Compare the compiled and pure-Python chaotic-map kernels.

    python benchmarks/bench_kernels.py [--count N] [--repeat R]
"""
import argparse
import time

import numpy as np

from chaoquant import _backend
from chaoquant.keystream import BURN_IN

KEY = (3.9, 3.7, 3.5, 0.1, 0.2, 0.3)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--bits", type=int, default=12)
    args = ap.parse_args()

    impls = [_backend.python_kernels]
    if _backend.compiled_kernels is not None:
        impls.append(_backend.compiled_kernels)
    else:
        print("compiled kernel not available; timing the fallback only")

    results = {}
    for k in impls:
        t, words = best_of(lambda: k.keystream_words(*KEY, args.count, args.bits, BURN_IN), args.repeat)
        results[k.BACKEND] = (t, words)
        rate = (args.count + BURN_IN) / t / 1e6
        print(f"{k.BACKEND:>8}: {t * 1e3:9.2f} ms for {args.count} words  ({rate:7.2f} M iterations/s)")

    if len(results) == 2:
        (tp, wp), (tc, wc) = results["python"], results["cython"]
        print(f" speedup: {tp / tc:.1f}x, outputs identical: {np.array_equal(wp, wc)}")


if __name__ == "__main__":
    main()
