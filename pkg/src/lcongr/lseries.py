"""Numerical L-values and their exact algebraic normalizations.

All series run through the rapidly convergent exponential sums attached to
the (twisted) eigenform, truncated with an explicit |a_n| <= n tail
majorant.  Real periods come from AGM iteration on the completed-square
cubic, doubled when the discriminant is positive (two real components).
Algebraic values are recognized exactly from all conjugate embeddings and
land in CycNumber / Fraction form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath as mp

from . import curves as ec
from .curves import CurveData
from .characters import DirichletCharacter, QuadraticCharacter
from .cyclotomic import CycNumber, recognize

Character = Union[DirichletCharacter, QuadraticCharacter]


class RankPositive(ValueError):
    pass


class Inconclusive(ValueError):
    pass


class ConductorClash(ValueError):
    pass


_COEFF_CACHE: dict = {}


def coefficients(curve: CurveData, nmax: int) -> list[int]:
    """a_1..a_nmax with a grow-only in-memory cache per curve."""
    key = (curve.label, curve.ainvs)
    cached = _COEFF_CACHE.get(key)
    if cached is None or len(cached) < nmax:
        cached = ec.an_table(curve, nmax).values
        _COEFF_CACHE[key] = cached
    return cached[:nmax]


def preload_coefficients(curve: CurveData, values: list[int]):
    key = (curve.label, curve.ainvs)
    cached = _COEFF_CACHE.get(key)
    if cached is None or len(cached) < len(values):
        _COEFF_CACHE[key] = list(values)


# -- real period -------------------------------------------------------------

def real_period(curve: CurveData) -> float:
    """Omega(E) = integral of the Neron differential over E(R).

    AGM on the roots of 4x^3 + b2 x^2 + 2 b4 x + b6; for positive
    discriminant the unbounded-component period is doubled to cover both
    real components.  Relative accuracy ~1e-12 (mpmath at 30 digits).
    """
    b2, b4, b6, _ = curve.b_invariants
    with mp.workdps(30):
        roots = mp.polyroots([4, b2, 2 * b4, b6], maxsteps=100, extraprec=60)
        if curve.disc > 0:
            e1, e2, e3 = sorted((mp.re(r) for r in roots), reverse=True)
            omega = mp.pi / mp.agm(mp.sqrt(e1 - e3), mp.sqrt(e1 - e2))
            return float(2 * omega)
        e1 = max((mp.re(r) for r in roots if abs(mp.im(r)) < 1e-20), default=None)
        if e1 is None:
            raise ValueError(f"{curve.label}: no real root found")
        others = [r for r in roots if abs(r - e1) > 1e-18]
        omega = mp.pi / mp.agm(mp.sqrt(e1 - others[0]), mp.sqrt(e1 - others[1]))
        return float(mp.re(omega))


# -- untwisted value and root number ----------------------------------------

def _partial_sum(an: list[int], scale: float, t: float = 1.0) -> float:
    """S(t) = sum a_n/n exp(-2 pi n t / scale)."""
    import numpy as np

    n = np.arange(1, len(an) + 1, dtype=np.float64)
    weights = np.asarray(an, dtype=np.float64) / n
    return float(weights @ np.exp((-2 * math.pi * t / scale) * n))


def _series_length(scale: float, eps: float) -> int:
    return int(scale * math.log(1 / eps) / (2 * math.pi)) + 20


def _tail_bound(scale: float, nmax: int, t: float = 1.0) -> float:
    # |a_n| <= n majorant: sum_{n > M} x^n = x^(M+1)/(1-x)
    x = math.exp(-2 * math.pi * t / scale)
    return x ** (nmax + 1) / (1 - x)


def fe_mismatch(curve: CurveData, w: int, conductor: Optional[int] = None,
                an: Optional[list[int]] = None, t: float = 1.1) -> float:
    """How far S(t) + w S(1/t) is from being t-independent (0 is perfect)."""
    N = conductor if conductor is not None else curve.conductor
    scale = math.sqrt(N)
    nmax = _series_length(scale * t, 1e-10)
    if an is None:
        an = coefficients(curve, nmax)
    f_at = _partial_sum(an[:nmax], scale, t) + w * _partial_sum(an[:nmax], scale, 1 / t)
    f_at1 = (1 + w) * _partial_sum(an[:nmax], scale, 1.0)
    return abs(f_at - f_at1)


def root_number(curve: CurveData) -> int:
    """Dataset-supplied sign if present, else the t-consistency determination."""
    if curve.root_number is not None:
        return curve.root_number
    tol = 1e-8
    fits = [w for w in (+1, -1) if fe_mismatch(curve, w) < tol]
    if len(fits) != 1:
        raise Inconclusive(f"{curve.label}: functional-equation sign test gives {fits}")
    return fits[0]


def lvalue_untwisted(curve: CurveData, eps: float = 1e-10) -> tuple[float, int, float]:
    """L(E, 1) as (value, terms used, tail bound); requires root number +1."""
    if root_number(curve) != +1:
        raise RankPositive(f"{curve.label}: L(E,1) = 0 (odd functional equation)")
    scale = math.sqrt(curve.conductor)
    nmax = _series_length(scale, eps * 0.1)
    an = coefficients(curve, nmax)
    return 2 * _partial_sum(an, scale), nmax, 2 * _tail_bound(scale, nmax)


def lratio(curve: CurveData, max_denominator: int = 120) -> Fraction:
    """The algebraic L-value L(E,1)/Omega, recognized exactly.

    Checked against the dataset hint when one is present.
    """
    val, _, _ = lvalue_untwisted(curve)
    omega = real_period(curve)
    r = Fraction(val / omega).limit_denominator(max_denominator)
    if abs(float(r) - val / omega) > 1e-6:
        raise ValueError(f"{curve.label}: L/Omega = {val / omega} not near a small rational")
    if curve.lratio_hint is not None and r != curve.lratio_hint:
        raise ValueError(f"{curve.label}: recognized L-ratio {r} != dataset hint {curve.lratio_hint}")
    return r


# -- twisted values -----------------------------------------------------------

def lvalue_twisted(curve: CurveData, chi: Character, eps: float = 1e-9,
                   ) -> tuple[complex, int, float]:
    """L(E, chi, 1) by the level-N c^2 approximate functional equation."""
    N = curve.conductor
    c = chi.conductor
    if math.gcd(c, N) > 1:
        if chi.order == 2:
            return _lvalue_quadratic_overlap(curve, chi, eps)
        raise ConductorClash(f"gcd({c}, {N}) > 1")
    import numpy as np

    w = root_number(curve)
    scale = c * math.sqrt(N)
    nmax = _series_length(scale, eps * 0.01)
    an = coefficients(curve, nmax)
    tau = chi.gauss_sum()
    wchi = w * chi.cvalue(N) * tau * tau / c
    n = np.arange(1, nmax + 1, dtype=np.float64)
    terms = np.asarray(an, dtype=np.float64) / n * np.exp((-2 * math.pi / scale) * n)
    # character values through a residue-class lookup table
    table = np.array([chi.cvalue(r) for r in range(c)], dtype=np.complex128)
    values = table[np.arange(1, nmax + 1) % c]
    s_chi = complex(terms @ values)
    s_bar = complex(terms @ values.conjugate())
    return s_chi + wchi * s_bar, nmax, 2 * _tail_bound(scale, nmax)


@dataclass
class LValueReport:
    curve: str
    character: str
    analytic: complex
    omega: float
    algebraic: CycNumber
    terms: int
    tail_bound: float


def algebraic_twisted_lvalue(curve: CurveData, chi: Character, tol: float = 1e-6,
                             ) -> LValueReport:
    """L(E, sigma chi, 1) * c / (tau(sigma chi) * Omega) over all conjugates,
    recognized to an exact element of Z[zeta_q] (or Q for quadratic chi)."""
    omega = real_period(curve)
    q = chi.order
    c = chi.conductor
    embeddings = {}
    analytic = None
    terms = 0
    tail = 0.0
    for a in range(1, q):
        if math.gcd(a, q) != 1:
            continue
        conj = chi.conjugate_by(a)
        lval, terms, tail = lvalue_twisted(curve, conj)
        embeddings[a] = lval * c / (conj.gauss_sum() * omega)
        if a == 1:
            analytic = lval
    value = recognize(q, embeddings, tol=tol)
    return LValueReport(curve.label, chi.label, analytic, omega, value, terms, tail)


# -- quadratic twist with conductor overlap ----------------------------------

def quadratic_twist_model(curve: CurveData, d: int) -> tuple[int, int, int, int, int]:
    """Minimal model of the twist of E by the quadratic field of discriminant d."""
    c4, c6 = curve.c_invariants
    return minimal_model_from_c4c6(c4 * d * d, c6 * d ** 3)


def minimal_model_from_c4c6(c4: int, c6: int) -> tuple[int, int, int, int, int]:
    """Laska-Kraus-Connell reduction to a minimal model with small a1, a2, a3."""
    num = c4 ** 3 - c6 * c6
    if num == 0 or num % 1728 != 0:
        raise ValueError("invalid invariants")
    disc = num // 1728

    exps = {}
    for p in ec.prime_factors(disc):
        e = min(_ord_of(c4, p) // 4 if c4 else 10 ** 9,
                _ord_of(c6, p) // 6 if c6 else 10 ** 9,
                _ord_of(disc, p) // 12)
        if e:
            exps[p] = e
    # back off at 2 and 3 until an integral model exists (Kraus conditions)
    for d2 in range(0, exps.get(2, 0) + 1):
        for d3 in range(0, exps.get(3, 0) + 1):
            u = 1
            for p, e in exps.items():
                adj = e - (d2 if p == 2 else d3 if p == 3 else 0)
                u *= p ** adj
            model = _model_from_invariants(c4 // u ** 4, c6 // u ** 6)
            if model is not None:
                return model
    raise ValueError(f"no integral model for c4={c4}, c6={c6}")


def _model_from_invariants(c4: int, c6: int):
    """Try to reconstruct a reduced integral model with the given invariants."""
    for b2 in range(-5, 7):
        if (b2 * b2 - c4) % 24 != 0:
            continue
        b4 = (b2 * b2 - c4) // 24
        if (-b2 ** 3 + 36 * b2 * b4 - c6) % 216 != 0:
            continue
        b6 = (-b2 ** 3 + 36 * b2 * b4 - c6) // 216
        a1 = b2 % 2
        if (b2 - a1) % 4 != 0:
            continue
        a2 = (b2 - a1) // 4
        a3 = b6 % 2
        if (b6 - a3) % 4 != 0:
            continue
        a6 = (b6 - a3) // 4
        if (b4 - a1 * a3) % 2 != 0:
            continue
        a4 = (b4 - a1 * a3) // 2
        cand = (a1, a2, a3, a4, a6)
        probe = CurveData("tmp", cand, 1)
        if probe.c_invariants == (c4, c6):
            return cand
    return None


def find_conductor(ainvs: tuple, label: str = "probe") -> tuple[int, int]:
    """Conductor and root number of a minimal model, by functional-equation probing.

    Multiplicative primes contribute exponent 1 and additive primes at
    p >= 5 exactly 2; only the additive exponents at 2 and 3 are probed.
    """
    probe = CurveData(label, ainvs, 1)
    disc = probe.disc
    c4, _ = probe.c_invariants
    fixed = 1
    options = [(1,)]
    for p in ec.prime_factors(disc):
        if c4 % p != 0:
            fixed *= p
        elif p >= 5:
            fixed *= p * p
        else:
            cap = min(_max_additive_exponent(p), _ord_of(disc, p))
            options.append(tuple(p ** e for e in range(2, cap + 1)))
    best = None
    for combo in _products(options):
        N = fixed * combo
        cand = CurveData(label, ainvs, N)
        an = ec.an_table(cand, _series_length(1.1 * math.sqrt(N), 1e-10)).values
        for w in (+1, -1):
            miss = fe_mismatch(cand, w, conductor=N, an=an)
            scale = max(1.0, abs(_partial_sum(an, math.sqrt(N))))
            if miss < 1e-8 * scale:
                if best is not None and best[0] != N:
                    raise Inconclusive(f"conductor probe ambiguous: {best[0]} vs {N}")
                best = (N, w)
    if best is None:
        raise Inconclusive("no conductor candidate satisfies the functional equation")
    return best


def _max_additive_exponent(p: int) -> int:
    return 8 if p == 2 else 5 if p == 3 else 2


def _ord_of(n: int, p: int) -> int:
    e = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        e += 1
    return e


def _products(options):
    if not options:
        yield 1
        return
    head, *rest = options
    for h in head:
        for r in _products(rest):
            yield h * r


def _lvalue_quadratic_overlap(curve: CurveData, chi: Character, eps: float,
                              ) -> tuple[complex, int, float]:
    """L(E, chi, 1) for quadratic chi whose conductor shares a prime with N.

    The twisted representation is the one attached to the quadratic twist
    curve, so the value is computed as L(E', 1) on the minimized twist
    model, with the conductor recovered by functional-equation probing.
    """
    # even quadratic characters correspond to positive fundamental discriminants,
    # so the twisting discriminant is the conductor itself
    c = chi.conductor
    if c % 4 not in (0, 1):
        raise ConductorClash(f"{c} is not the conductor of an even quadratic character")
    ainvs = quadratic_twist_model(curve, c)
    n_twist, w_twist = find_conductor(ainvs, f"{curve.label}(twist)")
    twist = CurveData(f"{curve.label}.twist{c}", ainvs, n_twist, root_number=w_twist)
    if w_twist == -1:
        return 0j, 0, 0.0
    val, terms, tail = lvalue_untwisted(twist, eps)
    return complex(val), terms, tail
