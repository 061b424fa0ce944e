#!/usr/bin/env python3
"""Compare the compiled point-counting kernel against the NumPy fallback.

The a_p sweep is the hot loop of the density sweeps (one Legendre pass per
prime up to the sweep bound), so this is the number that decides whether
the extension is worth building.

Usage: python benchmarks/bench_kernels.py [limit]
"""

import sys
import time

from lcongr import _kernels_py
from lcongr.curves import CurveData, sieve_primes

try:
    from lcongr import _ckernels
except ImportError:
    _ckernels = None


def bench(impl, b2, b4, b6, ps, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        impl.ap_sweep(b2, b4, b6, ps)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    limit = int(sys.argv[1]) if len(sys.argv) > 1 else 50_000
    curve = CurveData("11a1", (0, -1, 1, -10, -20), 11)
    b2, b4, b6, _ = curve.b_invariants
    ps = [p for p in sieve_primes(limit) if p > 2 and curve.is_good(p)]
    print(f"a_p sweep over {len(ps)} primes up to {limit} for {curve.label}")
    t_py = bench(_kernels_py, b2, b4, b6, ps)
    print(f"  numpy fallback : {t_py:8.3f} s")
    if _ckernels is None:
        print("  cython kernel  : not built")
        return
    t_cy = bench(_ckernels, b2, b4, b6, ps)
    print(f"  cython kernel  : {t_cy:8.3f} s  ({t_py / t_cy:.1f}x)")
    a = _ckernels.ap_sweep(b2, b4, b6, ps[:500])
    b = _kernels_py.ap_sweep(b2, b4, b6, ps[:500])
    assert list(a) == list(b), "backends disagree"
    print("  backends agree on the first 500 primes")


if __name__ == "__main__":
    main()
