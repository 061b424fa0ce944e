#!/usr/bin/env python3
"""Vectorized (c4, c6) hunt for curves of a given conductor.

For every candidate discriminant supported on the conductor's primes,
scan c4 and test c4^3 - 1728*disc for being a perfect square (float sqrt
plus exact confirmation).  Survivors are minimized, anchor-filtered, and
functional-equation tested at the target conductor.

Usage: mordell_hunt.py N [count_p count_value] [c4max]
"""

import json
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from lcongr import kernels
from lcongr.curves import CurveData, prime_factors
from lcongr.lseries import minimal_model_from_c4c6
from find_curves import dossier, OUT
from finish_big import fits_conductor

DISC_BOUND = 4 * 10 ** 13


def candidate_discs(N):
    ps = prime_factors(N)
    out = []

    def gen(i, val):
        if i == len(ps):
            if val > 1:
                out.append(val)
            return
        p = ps[i]
        v = p  # at least one power of every bad prime
        while val * v <= DISC_BOUND:
            gen(i + 1, val * v)
            v *= p
        return

    gen(0, 1)
    return out


def models_for(N, c4max=180000):
    discs = candidate_discs(N)
    print(f"{len(discs)} candidate |disc| values", flush=True)
    c4 = np.arange(-31000, c4max + 1, dtype=np.float64)
    c4cube = c4 ** 3
    found = {}
    for d in discs:
        for sign in (1, -1):
            K = 1728 * sign * d
            t = c4cube - K
            mask = t >= 0
            r = np.rint(np.sqrt(t, where=mask, out=np.zeros_like(t)))
            if abs(K) + c4max ** 3 < 9.0e15:
                # r*r and t are exact in float64 below 2^53: equality is exact
                ok = mask & (r * r == t)
            else:
                # beyond 2^53 keep a tight slack and confirm exactly below
                ok = mask & (np.abs(r * r - t) < 1e6)
            for idx in np.nonzero(ok)[0]:
                c4v = int(c4[idx])
                tt = c4v ** 3 - K
                if tt < 0:
                    continue
                import math
                rr = math.isqrt(tt)
                if rr * rr != tt:
                    continue
                for c6v in ({0} if rr == 0 else {rr, -rr}):
                    try:
                        m = minimal_model_from_c4c6(c4v, c6v)
                    except ValueError:
                        continue
                    key = CurveData("x", m, 1).c_invariants
                    found.setdefault(key, m)
    return list(found.values())


def main():
    N = int(sys.argv[1])
    anchor = None
    if len(sys.argv) >= 4:
        anchor = (int(sys.argv[2]), int(sys.argv[3]))
    c4max = int(sys.argv[4]) if len(sys.argv) > 4 else 250000
    results = json.loads(OUT.read_text())
    have = results.setdefault(str(N), {})
    models = models_for(N, c4max)
    print(f"{len(models)} minimal models on the support", flush=True)
    kept = []
    for m in models:
        cd = CurveData("x", m, 1)
        if anchor is not None:
            p, want = anchor
            if cd.disc % p == 0:
                continue
            b2, b4, b6, _ = cd.b_invariants
            if p + 1 - kernels.ap_single(b2, b4, b6, p) != want:
                continue
        kept.append(m)
    print(f"{len(kept)} after anchor filter", flush=True)
    for m in kept:
        key = str(CurveData("x", m, 1).c_invariants)
        if key in have:
            continue
        w = fits_conductor(m, N)
        if w is None:
            continue
        entry = dossier(m, N, w)
        have[key] = entry
        print(f"found {m} w={w} L={entry.get('lratio', '-')}", flush=True)
    OUT.write_text(json.dumps(results, indent=1, sort_keys=True))
    print("done")


if __name__ == "__main__":
    main()
