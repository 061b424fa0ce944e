#!/usr/bin/env python3
"""Reconstruct the bundled curve dataset from printed anchor data.

Minimal models are recovered by (a) a box search over reduced Weierstrass
coefficients filtered by discriminant support and functional-equation
conductor probing, and (b) quadratic twists of curves found at divisor
conductors.  Candidates are then matched against anchors (point counts,
L-ratios, torsion, twisted values) and written to a dossier JSON that the
dataset freezing step consumes.

Usage: python tools/find_curves.py [N ...]   (default: all targets)
"""

import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from lcongr.curves import CurveData, prime_factors, torsion_order, count_points, ap
from lcongr.lseries import (find_conductor, lratio, minimal_model_from_c4c6,
                            quadratic_twist_model, real_period, Inconclusive)

OUT = Path(__file__).resolve().parent / "found_curves.json"

SEEDS = [11, 14, 15, 17, 19, 20, 26, 27, 34, 36, 37, 50, 51, 54, 84, 108, 139,
         192, 291, 307, 339, 432, 544, 714, 885, 1187, 1216, 1356, 1638, 3264,
         3540, 4800]

TWIST_TARGETS = [432, 544, 1216, 1356, 3264, 3540, 4800, 1638]


def support_filtered_models(N, a4lim=256, a6lim=4096):
    """Reduced models whose discriminant support matches the conductor's."""
    ps = prime_factors(N)
    found = {}
    a6 = np.arange(-a6lim, a6lim + 1, dtype=np.int64)
    for a1 in (0, 1):
        for a2 in (-1, 0, 1):
            for a3 in (0, 1):
                b2 = a1 * a1 + 4 * a2
                for a4 in range(-a4lim, a4lim + 1):
                    b4 = 2 * a4 + a1 * a3
                    b6 = a3 * a3 + 4 * a6
                    b8 = (a1 * a1) * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
                    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
                    v = np.abs(disc)
                    ok = v > 0
                    for p in ps:
                        for _ in range(64):
                            div = ok & (v % p == 0)
                            if not div.any():
                                break
                            v = np.where(div, v // p, v)
                    ok &= v == 1
                    for idx in np.nonzero(ok)[0]:
                        model = (a1, a2, a3, a4, int(a6[idx]))
                        cd = CurveData("cand", model, 1)
                        c4c6 = cd.c_invariants
                        if c4c6 in found:
                            continue
                        try:
                            mini = minimal_model_from_c4c6(*c4c6)
                        except ValueError:
                            continue
                        if CurveData("m", mini, 1).c_invariants != c4c6:
                            continue  # model was not minimal
                        found[c4c6] = mini
    return list(found.values())


def dossier(model, N, w):
    cd = CurveData("cand", model, N, root_number=w)
    entry = {
        "ainvs": list(model),
        "conductor": N,
        "root_number": w,
        "disc": cd.disc,
    }
    if w == 1:
        lr = lratio(cd)
        entry["lratio"] = str(lr)
    entry["torsion"] = torsion_order(cd)
    for p in (7, 11, 31):
        if cd.is_good(p):
            entry[f"count_{p}"] = count_points(cd, p)
    return entry


def probe(model):
    try:
        return find_conductor(tuple(model))
    except (Inconclusive, ValueError):
        return None


def search_conductor(N, results, a4lim=256, a6lim=4096):
    print(f"== box search N={N} (|a4|<={a4lim}, |a6|<={a6lim})", flush=True)
    models = support_filtered_models(N, a4lim, a6lim)
    print(f"   {len(models)} support-matching minimal models")
    for model in models:
        got = probe(model)
        if got is None or got[0] != N:
            continue
        key = str(CurveData("x", tuple(model), 1).c_invariants)
        if key in results.get(str(N), {}):
            continue
        entry = dossier(tuple(model), N, got[1])
        results.setdefault(str(N), {})[key] = entry
        print(f"   found {model} w={got[1]} "
              f"L-ratio={entry.get('lratio', '-')} tor={entry['torsion']}")


def twist_search(targets, results):
    fundamental = [d for d in range(-41, 42)
                   if d not in (0, 1) and (d % 4 == 1 or d % 16 in (8, 12))]
    for target in targets:
        have = results.get(str(target), {})
        for seed_n, entries in list(results.items()):
            seed_n = int(seed_n)
            if seed_n == target or target % seed_n != 0:
                continue
            for entry in list(entries.values()):
                base = CurveData("seed", tuple(entry["ainvs"]), seed_n)
                for d in fundamental:
                    if (target * seed_n) % abs(d) not in (0,) and math.gcd(abs(d), target) == 1:
                        continue
                    try:
                        model = quadratic_twist_model(base, d)
                    except ValueError:
                        continue
                    key = str(CurveData("x", model, 1).c_invariants)
                    if key in have:
                        continue
                    disc = CurveData("x", model, 1).disc
                    if any(target % p for p in prime_factors(disc)):
                        continue
                    got = probe(model)
                    if got is None or got[0] != target:
                        continue
                    entry2 = dossier(model, target, got[1])
                    results.setdefault(str(target), {})[key] = entry2
                    have = results[str(target)]
                    print(f"   twist d={d} of {entry['ainvs']}@{seed_n} -> {model} "
                          f"L-ratio={entry2.get('lratio', '-')}")


def main():
    specs = []
    for arg in sys.argv[1:]:
        parts = [int(v) for v in arg.split(":")]
        specs.append((parts[0], parts[1] if len(parts) > 1 else 256,
                      parts[2] if len(parts) > 2 else 4096))
    if not specs:
        specs = [(N, 256, 4096) for N in SEEDS]
    results = json.loads(OUT.read_text()) if OUT.exists() else {}
    for N, a4lim, a6lim in specs:
        search_conductor(N, results, a4lim, a6lim)
        OUT.write_text(json.dumps(results, indent=1, sort_keys=True))
    wanted = [N for N, _, _ in specs]
    twist_search([t for t in TWIST_TARGETS if t in wanted or not sys.argv[1:]], results)
    OUT.write_text(json.dumps(results, indent=1, sort_keys=True))
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
