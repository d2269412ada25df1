"""Benchmark the compiled Aberth kernel against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--degrees 5,10,20,50] [--batch 2000]
"""

import argparse
import time

import numpy as np

from zerocorr import _kernels
from zerocorr._kernels import _fallback


def bench(fn, coeffs, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        _, resid, conv = fn(coeffs, 120, 1e-13)
        best = min(best, time.perf_counter() - t0)
    return best, float(resid.max()), float(conv.mean())


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--degrees", default="5,10,20,50")
    parser.add_argument("--batch", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    impls = [("fallback", _fallback.aberth_roots)]
    if _kernels.implementation() == "compiled":
        from zerocorr._kernels import _core

        impls.append(("compiled", _core.aberth_roots))
    else:
        print("note: compiled kernel unavailable, benchmarking fallback only")

    rng = np.random.default_rng(args.seed)
    print(f"{'degree':>6} {'impl':>9} {'time':>10} {'per-poly':>10} "
          f"{'max resid':>10} {'conv':>6}")
    for deg in (int(d) for d in args.degrees.split(",")):
        coeffs = np.ascontiguousarray(rng.normal(size=(args.batch, deg + 1)))
        times = {}
        for name, fn in impls:
            elapsed, resid, conv = bench(fn, coeffs)
            times[name] = elapsed
            per = elapsed / args.batch * 1e6
            print(f"{deg:>6} {name:>9} {elapsed:>9.3f}s {per:>8.1f}us "
                  f"{resid:>10.1e} {conv:>6.1%}")
        if len(times) == 2:
            print(f"{'':>6} {'speedup':>9} {times['fallback'] / times['compiled']:>9.1f}x")


if __name__ == "__main__":
    main()
