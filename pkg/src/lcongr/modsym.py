"""Numerical modular symbols and the identities they satisfy.

The period integral from 0 to a cusp a/m with gcd(m, N) = 1 closes up in
the quotient, so it equals P(gamma z0) - P(z0) for the exponential
antiderivative P of the eigenform and any base point z0; z0 = (-m + i)/c'
balances the imaginary parts at 1/c'.  Symmetrized symbols round to
integers (times c0/Omega) with the rounding residual always recorded.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from . import lseries
from .characters import DirichletCharacter, QuadraticCharacter
from .curves import CurveData, ap
from .cyclotomic import CycNumber

Character = Union[DirichletCharacter, QuadraticCharacter]

MAX_SERIES_TERMS = 10 ** 6


class BadCusp(ValueError):
    pass


class SlowConvergence(ValueError):
    pass


class NotIntegral(ValueError):
    pass


class ConductorClash(ValueError):
    pass


def gamma_for_cusp(a: int, m: int, N: int) -> tuple[int, int, int, int]:
    """A determinant-1 matrix [[a', a], [c', m]] with N | c' sending 0 to a/m."""
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a}/{m} not in lowest terms")
    if math.gcd(m, N) != 1:
        raise BadCusp(f"denominator {m} shares a factor with the level {N}")
    if a == 0:
        return (1, 0, 0, 1)
    a_prime = pow(m, -1, abs(a) * N)
    c_prime = (a_prime * m - 1) // a
    return (a_prime, a, c_prime, m)


@lru_cache(maxsize=None)
def _omega(curve: CurveData) -> float:
    return lseries.real_period(curve)


def mu(curve: CurveData, a: int, m: int, eps: float = 1e-8) -> complex:
    """Period integral of 2*pi*i*f_E from 0 to a/m (fraction reduced first)."""
    g = math.gcd(a, m)
    a, m = a // g, m // g
    a %= m if m > 1 else 1
    if m == 1:
        return 0j
    ap_, aa, cp, mm = gamma_for_cusp(a, m, curve.conductor)
    nmax = int(cp * math.log(1 / eps) / (2 * math.pi)) + 20
    if nmax > MAX_SERIES_TERMS:
        raise SlowConvergence(f"needs {nmax} terms (conductor*denominator too large)")
    an = lseries.coefficients(curve, nmax)
    z0 = complex(-m, 1) / cp
    z1 = (ap_ * z0 + a) / (cp * z0 + m)

    def antideriv(z: complex) -> complex:
        w = cmath.exp(2j * cmath.pi * z)
        wn = 1.0 + 0j
        total = 0j
        for n, coeff in enumerate(an, start=1):
            wn *= w
            if coeff:
                total += coeff / n * wn
        return total

    return antideriv(z1) - antideriv(z0)


@dataclass
class SymbolValue:
    curve: str
    a: int
    m: int
    raw: complex
    plus: int
    residual: float


def symbol(curve: CurveData, a: int, m: int) -> SymbolValue:
    """mu and its symmetrized integer normalization mu_plus in one record."""
    raw = mu(curve, a, m)
    v = (curve.manin_c0 / _omega(curve)) * 2 * raw.real
    plus = round(v)
    residual = abs(v - plus)
    if residual >= 1e-4:
        raise NotIntegral(f"mu+({a}/{m}) = {v} not within 1e-4 of an integer")
    return SymbolValue(curve.label, a, m, raw, plus, residual)


def mu_plus(curve: CurveData, a: int, m: int) -> int:
    return symbol(curve, a, m).plus


def _sigma1(n: int) -> int:
    return sum(d for d in range(1, n + 1) if n % d == 0)


def _sigma0_even(n: int) -> int:
    return sum(1 for d in range(2, n + 1, 2) if n % d == 0)


def _count_f2(curve: CurveData) -> int:
    return 2 + 1 - ap(curve, 2)


def hecke_lhs(curve: CurveData, n: int) -> Fraction:
    """c0 * L-ratio * (a_n - sigma_1(n) + #E(F_2) * sigma_0^+(n)), exact."""
    lr = lseries.lratio(curve)
    an = lseries.coefficients(curve, n)[n - 1]
    return curve.manin_c0 * lr * (an - _sigma1(n) + _count_f2(curve) * _sigma0_even(n))


@dataclass
class HeckeReport:
    curve: str
    n: int
    lhs: Fraction
    rhs: Optional[int]
    lhs_integral: bool
    holds: Optional[bool]
    note: str = ""


def hecke_identity(curve: CurveData, n: int) -> HeckeReport:
    """Both sides of the divisor-sum identity, computed independently.

    When gcd(n, N) > 1 the symbol sum is not defined; the report then only
    documents whether the left side is integral (it need not be: that is
    the identity's failure mode).
    """
    lhs = hecke_lhs(curve, n)
    if math.gcd(n, curve.conductor) > 1:
        return HeckeReport(curve.label, n, lhs, None, lhs.denominator == 1, None,
                           note="n shares a factor with the conductor; symbol sum undefined")
    rhs = 0
    for m in range(1, n + 1):
        if n % m:
            continue
        for a in range(1, (m - 1) // 2 + 1):
            rhs += mu_plus(curve, a, m)
    return HeckeReport(curve.label, n, lhs, rhs, lhs.denominator == 1, lhs == rhs)


def birch_sum(curve: CurveData, chi: Character) -> CycNumber:
    """c0 * L(E, chi) as the exact character-weighted symbol sum."""
    n = chi.conductor
    if math.gcd(n, curve.conductor) > 1:
        raise ConductorClash(
            f"conductor {n} shares a factor with the level {curve.conductor}")
    q = chi.order
    total = CycNumber.zero(q)
    for a in range(1, (n - 1) // 2 + 1):
        e = chi.exp_of(a)
        if e is None:
            continue
        total = total + CycNumber.zeta_pow(q, (-e) % q) * mu_plus(curve, a, n)
    return total


def epsilon_term(curve: CurveData, n: int) -> int:
    """Extraneous-symbol error term for composite conductor n coprime to N."""
    if math.gcd(n, curve.conductor) > 1:
        raise BadCusp(f"gcd({n}, {curve.conductor}) > 1")
    total = 0
    for a in range(1, (n - 1) // 2 + 1):
        if math.gcd(a, n) != 1:
            total += mu_plus(curve, a, n)
    for m in range(1, n):
        if n % m:
            continue
        for a in range(1, (m - 1) // 2 + 1):
            total += mu_plus(curve, a, m)
    return total


def rational_mod(x: Fraction, q: int) -> int:
    """x mod q with the denominator inverted (must be prime to q)."""
    if x.denominator % q == 0:
        raise NotIntegral(f"{x} has denominator divisible by {q}")
    return (x.numerator * pow(x.denominator, -1, q)) % q


@dataclass
class CongruenceReport:
    curve: str
    character: str
    lhs_residue: int
    rhs_residue: int
    match: bool
    lvalue: CycNumber
    rhs_exact: Fraction


def congruence_check(curve: CurveData, chi: Character) -> CongruenceReport:
    """Twisted vs untwisted residues mod <1 - zeta_q>.

    The right-hand side is c0 * Lratio * (a_n - sigma_1 + #E(F_2) sigma_0^+)
    minus the extraneous-symbol term; for prime conductor that collapses to
    -c0 * Lratio * #E(F_p).
    """
    n = chi.conductor
    q = chi.order
    c0 = curve.manin_c0
    report = lseries.algebraic_twisted_lvalue(curve, chi)
    lhs = (report.algebraic * c0).reduce_mod_lambda()
    rhs_exact = hecke_lhs(curve, n)
    if not _is_prime(n):
        rhs_exact -= epsilon_term(curve, n)
    rhs = rational_mod(rhs_exact, q)
    return CongruenceReport(curve.label, chi.label, lhs, rhs, lhs == rhs,
                            report.algebraic, rhs_exact)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass
class ParityReport:
    curve: str
    conductor: int
    lhs_residue: int
    rhs_residue: int
    epsilon: int
    match: bool
    epsilon_even: bool


def quadratic_parity_check(curve: CurveData, kind: str, p1: int = 0, p2: int = 0,
                           ) -> ParityReport:
    """Mod-2 congruences for quadratic twists of composite conductor.

    kind 'p1p2' uses the even Jacobi character of conductor p1*p2 (needs
    p1 = p2 mod 4); kind 'eight' uses the conductor-8 character (needs odd
    level).  Both sides are reduced mod 2 and the extraneous term is
    checked to be even.
    """
    N = curve.conductor
    if kind == "p1p2":
        if p1 == p2 or math.gcd(p1 * p2, N) > 1:
            raise BadCusp("need distinct odd primes coprime to the conductor")
        chi = QuadraticCharacter(p1 * p2)
        n = p1 * p2
        a_vals = lseries.coefficients(curve, max(p1, p2))
        factor = a_vals[p1 - 1] * a_vals[p2 - 1] - n - p1 - p2 - 1
    elif kind == "eight":
        if N % 2 == 0:
            raise BadCusp("conductor-8 parity check needs odd level")
        chi = QuadraticCharacter(8)
        n = 8
        a2 = ap(curve, 2)
        factor = (a2 + 1) * (a2 + 2) * (a2 - 3)
    else:
        raise ValueError(f"unknown parity check kind {kind!r}")
    c0 = curve.manin_c0
    lvalue = lseries.algebraic_twisted_lvalue(curve, chi).algebraic
    lhs = rational_mod(c0 * lvalue.as_rational(), 2)
    rhs = rational_mod(c0 * lseries.lratio(curve) * factor, 2)
    eps = epsilon_term(curve, n)
    return ParityReport(curve.label, n, lhs, rhs, eps, lhs == rhs, eps % 2 == 0)
