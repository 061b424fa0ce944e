"""Real-subfield normalization of twisted L-values and its mod-3 residues.

L+ multiplies the twisted value by 1 + conj(chi(N)) when chi(N) != 1,
landing in the real subfield.  Norms are then divided by an empirically
estimated gcd; for cubic characters the resulting integers obey a
three-case prediction driven by #E(F_p) mod 3 and whether p splits
completely in the 3-division field.

Reference gcd values come from data computed with the single-component
real period, so gcd estimation and the normalized residues rescale L+ by
the number of real components; the residues themselves are invariant
under that rescaling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import kernels, lseries
from .characters import DirichletCharacter
from .curves import (CurveData, count_points, sieve_primes,
                     splits_completely_in_K3, three_division_poly)
from .cyclotomic import CycNumber
from .matgrp import DensityProfile

# the three residue cases split the 24 Frobenius classes of SL(2,3) as
# 9 (trace 2) + 14 (trace 1 except -I, plus trace 0) + 1 (-I alone)
DELTA_PRIME_TARGET = (Fraction(9, 24), Fraction(14, 24), Fraction(1, 24))


class AllZero(ValueError):
    pass


class GcdDivisible(ValueError):
    pass


class HypothesisUnverified(ValueError):
    pass


def l_plus(curve: CurveData, chi: DirichletCharacter) -> CycNumber:
    """The real-subfield normalization of the twisted value."""
    value = lseries.algebraic_twisted_lvalue(curve, chi).algebraic
    e = chi.exp_of(curve.conductor)
    q = chi.order
    if e is None:
        raise ValueError("conductor of chi shares a factor with N")
    if e != 0:
        value = value * (CycNumber.one(q) + CycNumber.zeta_pow(q, (-e) % q))
    if not value.is_real():
        raise ValueError(f"L+ not fixed by conjugation: {value}")
    return value


def kn_scale(curve: CurveData) -> int:
    """Real components of E(R): the reference data's period normalization."""
    return 2 if curve.disc > 0 else 1


def norm_plus_scaled(curve: CurveData, chi: DirichletCharacter) -> int:
    """Nm+ of L+ in the single-component-period normalization (q = 3)."""
    if chi.order != 3:
        raise ValueError("the normalized-norm path is cubic-only")
    value = l_plus(curve, chi).as_rational() * kn_scale(curve)
    if value.denominator != 1:
        raise ValueError(f"L+ = {value} is not integral")
    return int(value)


def eligible_conductors(curve: CurveData, limit: int) -> list[int]:
    return [p for p in sieve_primes(limit - 1)
            if p % 3 == 1 and p > 3 and curve.conductor % p != 0]


def estimate_gcd(curve: CurveData, sample: int = 20, stability: int = 10,
                 ) -> int:
    """gcd of |Nm+(L+)| over prime conductors, with a stability check.

    The gcd must not change over the final ``stability`` conductors of the
    sample; vanishing twisted values are skipped.
    """
    g = 0
    stable_for = 0
    used = 0
    p = 5
    while used < sample:
        p += 2
        if not _is_prime(p) or p % 3 != 1 or curve.conductor % p == 0:
            continue
        chi = DirichletCharacter(p, 3, 1)
        value = norm_plus_scaled(curve, chi)
        used += 1
        if value == 0:
            continue
        g2 = math.gcd(g, abs(value))
        stable_for = stable_for + 1 if g2 == g else 0
        g = g2
    if g == 0:
        raise AllZero(f"{curve.label}: all sampled twisted values vanish")
    if stable_for < stability:
        raise ValueError(f"{curve.label}: gcd not stable "
                         f"(changed within the last {stability} samples)")
    return g


def l_tilde_residue(curve: CurveData, chi: DirichletCharacter, gcd: int) -> int:
    """Nm+(L+)/gcd mod 3 for a cubic character (the normalized residue)."""
    if chi.order != 3:
        raise ValueError("normalized residues are cubic-only")
    if gcd % 3 == 0:
        raise GcdDivisible(f"3 | gcd = {gcd}; the congruence method does not apply")
    if curve.manin_c0 % 3 == 0:
        raise GcdDivisible("3 | c0")
    value = norm_plus_scaled(curve, chi)
    if value % gcd != 0:
        raise ValueError(f"{value} not divisible by the estimated gcd {gcd}")
    return (value // gcd) % 3


def certifies_cube_root_field(curve: CurveData) -> bool:
    """Sufficient condition for the cube root of N to live in the 3-division
    field: |disc| is N^n with 3 not dividing n."""
    N, d = curve.conductor, abs(curve.disc)
    if N <= 1:
        return False
    n = 0
    while d % N == 0 and d > 1:
        d //= N
        n += 1
    return d == 1 and n % 3 != 0


def predicted_residue(curve: CurveData, p: int, strict: bool = False) -> int:
    """Three-case prediction for the normalized residue at conductor p."""
    if strict and not certifies_cube_root_field(curve):
        raise HypothesisUnverified(
            f"{curve.label}: disc = +-N^n with 3 | n or not a conductor power")
    npts = count_points(curve, p)
    if npts % 3 == 0:
        return 0
    if npts % 3 == 1 and splits_completely_in_K3(curve, p):
        return 2
    return 1


@dataclass
class KNRecord:
    curve: str
    conductor: int
    chi_n_exponent: int
    l_plus: CycNumber
    norm_plus: int
    residue: Optional[int]
    predicted: Optional[int]
    split_in_k: bool
    hypothesis_certified: bool


def record(curve: CurveData, p: int, gcd: Optional[int] = None) -> KNRecord:
    chi = DirichletCharacter(p, 3, 1)
    lp = l_plus(curve, chi)
    np_scaled = norm_plus_scaled(curve, chi)
    res = None if gcd is None else l_tilde_residue(curve, chi, gcd)
    return KNRecord(curve.label, p, chi.exp_of(curve.conductor) or 0, lp,
                    np_scaled, res, predicted_residue(curve, p),
                    splits_completely_in_K3(curve, p),
                    certifies_cube_root_field(curve))


def delta_prime(curve: CurveData, limit: int) -> DensityProfile:
    """Empirical tally of the predicted residues over p < limit."""
    ps = eligible_conductors(curve, limit)
    b2, b4, b6, _ = curve.b_invariants
    good = [p for p in ps if curve.is_good(p) and curve.disc % p != 0]
    traces = kernels.ap_sweep(b2, b4, b6, good)
    roots = kernels.quartic_root_count_sweep(three_division_poly(curve), good)
    counts = {0: 0, 1: 0, 2: 0}
    for p, tr, nroots in zip(good, traces, roots):
        npts = p + 1 - int(tr)
        if npts % 3 == 0:
            counts[0] += 1
        elif npts % 3 == 1 and nroots == 4:
            counts[2] += 1
        else:
            counts[1] += 1
    total = sum(counts.values())
    return DensityProfile(3, {lam: Fraction(c, total) for lam, c in counts.items()})


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True
