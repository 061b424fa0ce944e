"""Elliptic curve data model and pointwise arithmetic.

Curves are integral Weierstrass models [a1, a2, a3, a4, a6], trusted to be
minimal as given (Cremona-label data is minimal; there is no minimization
pass on ingest).  Point counting is Legendre-symbol summation on the
completed-square model, O(p) per prime, which is the hot loop backed by
the compiled kernel when available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from . import kernels

AP_PRIME_LIMIT = 10 ** 7  # desk scale; O(p) summation beyond this is unreasonable


class BadReduction(ValueError):
    pass


class Overflow(ValueError):
    pass


class BadPrime(ValueError):
    pass


class ValidationError(ValueError):
    pass


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def sieve_primes(n: int) -> list[int]:
    if n < 2:
        return []
    s = bytearray([1]) * (n + 1)
    s[0] = s[1] = 0
    for i in range(2, int(n ** 0.5) + 1):
        if s[i]:
            s[i * i:: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(2, n + 1) if s[i]]


@dataclass(frozen=True)
class CurveData:
    """An elliptic curve over Q given by a minimal integral model."""

    label: str
    ainvs: tuple[int, int, int, int, int]
    conductor: int
    root_number: Optional[int] = None
    manin_c0: int = 1
    lratio_hint: Optional[Fraction] = None
    galois3: Optional[str] = None
    no_isogeny: frozenset = frozenset()
    bsd_quotient: Optional[Fraction] = None
    kn_supported: bool = True

    def __post_init__(self):
        if len(self.ainvs) != 5:
            raise ValidationError(f"{self.label}: need 5 a-invariants")
        if self.disc == 0:
            raise ValidationError(f"{self.label}: singular model (disc = 0)")
        for p in prime_factors(self.conductor):
            if self.disc % p != 0:
                raise ValidationError(
                    f"{self.label}: conductor prime {p} does not divide disc {self.disc}")
        if self.manin_c0 < 1:
            raise ValidationError(f"{self.label}: manin_c0 must be positive")

    @cached_property
    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @cached_property
    def c_invariants(self) -> tuple[int, int]:
        b2, b4, b6, _ = self.b_invariants
        return b2 * b2 - 24 * b4, -b2 ** 3 + 36 * b2 * b4 - 216 * b6

    @cached_property
    def disc(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def is_good(self, p: int) -> bool:
        return self.disc % p != 0

    def __repr__(self):
        return f"CurveData({self.label}, {list(self.ainvs)}, N={self.conductor})"


@dataclass
class CoefficientTable:
    """Dirichlet coefficients a_1..a_nmax of the curve's eigenform."""

    label: str
    values: list[int] = field(repr=False)

    def __len__(self):
        return len(self.values)

    def a(self, n: int) -> int:
        return self.values[n - 1]


def count_points_naive(curve: CurveData, p: int) -> int:
    """Double-loop oracle over the full Weierstrass equation; any p."""
    a1, a2, a3, a4, a6 = curve.ainvs
    n = 1
    for x in range(p):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y) % p == rhs:
                n += 1
    return n


def count_points(curve: CurveData, p: int) -> int:
    """#E(F_p) for an odd prime p of good reduction, by Legendre sums."""
    if p == 2 or not _is_prime_small(p):
        raise BadPrime(f"{p} is not an odd prime")
    if not curve.is_good(p):
        raise BadReduction(f"{curve.label} has bad reduction at {p}")
    if p >= AP_PRIME_LIMIT:
        raise Overflow(f"p = {p} beyond supported desk scale {AP_PRIME_LIMIT}")
    b2, b4, b6, _ = curve.b_invariants
    return int(p + 1 - kernels.ap_single(b2, b4, b6, p))


def _is_prime_small(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def ap(curve: CurveData, p: int) -> int:
    """Trace of Frobenius; handles good and bad primes.

    Bad multiplicative primes give +1 (split) or -1 (non-split) by whether
    the tangent directions at the node are rational; additive primes give 0.
    """
    if curve.is_good(p):
        if p == 2:
            return 2 + 1 - count_points_naive(curve, 2)
        return p + 1 - count_points(curve, p)
    c4, _ = curve.c_invariants
    if c4 % p == 0:
        return 0  # additive
    a1, a2, a3, a4, a6 = curve.ainvs
    b2, b4, b6, _ = curve.b_invariants
    if p == 2:
        # find the singular point and test whether the tangent cone splits
        for x0 in range(2):
            for y0 in range(2):
                f = (y0 * y0 + a1 * x0 * y0 + a3 * y0 - x0 ** 3 - a2 * x0 * x0 - a4 * x0 - a6) % 2
                fx = (a1 * y0 - 3 * x0 * x0 - 2 * a2 * x0 - a4) % 2
                fy = (2 * y0 + a1 * x0 + a3) % 2
                if f == 0 and fx == 0 and fy == 0:
                    return 1 if (3 * x0 + a2) % 2 == 0 else -1
        raise BadReduction(f"{curve.label}: no singular point mod 2")
    # odd p: complete the square; the node is the double root x0 of g,
    # split iff x0 - x1 is a square mod p (x1 the simple root)
    for x0 in range(p):
        if (4 * x0 ** 3 + b2 * x0 * x0 + 2 * b4 * x0 + b6) % p == 0 \
                and (12 * x0 * x0 + 2 * b2 * x0 + 2 * b4) % p == 0:
            break
    else:
        raise BadReduction(f"{curve.label}: no double root mod {p}")
    inv4 = pow(4, -1, p)
    x1 = (-b2 * inv4 - 2 * x0) % p
    d = (x0 - x1) % p
    return 1 if pow(d, (p - 1) // 2, p) == 1 else -1


def an_table(curve: CurveData, nmax: int) -> CoefficientTable:
    """a_1..a_nmax via multiplicativity and the Hecke recurrences."""
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    a = [0] * (nmax + 1)
    a[1] = 1
    ps = sieve_primes(nmax)
    N = curve.conductor
    good_odd = [p for p in ps if p > 2 and curve.is_good(p) and p < AP_PRIME_LIMIT]
    b2, b4, b6, _ = curve.b_invariants
    traces = dict(zip(good_odd, kernels.ap_sweep(b2, b4, b6, good_odd)))
    for p in ps:
        apv = int(traces[p]) if p in traces else ap(curve, p)
        prev2, prev1 = 1, apv
        pk = p
        while pk <= nmax:
            a[pk] = prev1
            pk *= p
            if pk <= nmax:
                cur = apv * prev1 - (0 if N % p == 0 else p) * prev2
                prev2, prev1 = prev1, cur
    # multiplicative fill over smallest prime factors
    spf = list(range(nmax + 1))
    for p in ps:
        for m in range(p, nmax + 1, p):
            if spf[m] == m:
                spf[m] = p
    for n in range(2, nmax + 1):
        p = spf[n]
        if p == n:
            continue
        m, pk = n, 1
        while m % p == 0:
            m //= p
            pk *= p
        if m > 1:
            a[n] = a[pk] * a[m]
    return CoefficientTable(curve.label, a[1:])


# -- integer polynomial helpers (dense, ascending coefficients) -------------

def _poly_mul(f: Sequence[int], g: Sequence[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                out[i + j] += fi * gj
    return out


def _poly_sub(f: Sequence[int], g: Sequence[int]) -> list[int]:
    n = max(len(f), len(g))
    return [(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)]


def _poly_pow(f: Sequence[int], k: int) -> list[int]:
    out = [1]
    for _ in range(k):
        out = _poly_mul(out, f)
    return out


def quartic_model(curve: CurveData) -> list[int]:
    """g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 (the square of the y-coordinate)."""
    b2, b4, b6, _ = curve.b_invariants
    return [b6, 2 * b4, b2, 4]


def three_division_poly(curve: CurveData) -> tuple[int, int, int, int, int]:
    """psi_3 = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8, descending coefficients."""
    b2, b4, b6, b8 = curve.b_invariants
    return (3, b2, 3 * b4, 3 * b6, b8)


def division_poly(curve: CurveData, ell: int) -> list[int]:
    """Univariate division polynomial for odd ell in {3, 5, 7} (ascending)."""
    b2, b4, b6, b8 = curve.b_invariants
    g = quartic_model(curve)  # = psi_2^2
    psi3 = [b8, 3 * b6, 3 * b4, b2, 3]
    if ell == 3:
        return psi3
    # psi_4 / psi_2
    w4 = [b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2]
    if ell == 5:
        return _poly_sub(_poly_mul(w4, _poly_pow(g, 2)), _poly_pow(psi3, 3))
    if ell == 7:
        psi5 = division_poly(curve, 5)
        return _poly_sub(_poly_mul(psi5, _poly_pow(psi3, 3)),
                         _poly_mul(_poly_pow(g, 2), _poly_pow(w4, 3)))
    raise ValueError(f"division_poly only implemented for ell in 3,5,7 (got {ell})")


def splits_completely_in_K3(curve: CurveData, p: int) -> bool:
    """Whether psi_3 has four distinct roots mod p (trivial Frobenius in K)."""
    if p % 2 == 0 or (3 * curve.disc) % p == 0:
        raise BadPrime(f"p = {p} divides 3*disc for {curve.label}")
    c = three_division_poly(curve)
    roots = 0
    for x in range(p):
        v = ((((c[0] * x + c[1]) * x + c[2]) * x + c[3]) * x + c[4]) % p
        if v == 0:
            roots += 1
    return roots == 4


# -- exact rational points and torsion ---------------------------------------

def point_neg(curve: CurveData, P):
    if P is None:
        return None
    a1, _, a3, _, _ = curve.ainvs
    x, y = P
    return (x, -y - a1 * x - a3)


def point_add(curve: CurveData, P, Q):
    """Exact addition on the long Weierstrass model over Q."""
    if P is None:
        return Q
    if Q is None:
        return P
    a1, a2, a3, a4, a6 = curve.ainvs
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and y1 + y2 + a1 * x2 + a3 == 0:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / Fraction(2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / Fraction(x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return (x3, y3)


def point_mul(curve: CurveData, n: int, P):
    out = None
    add = P
    while n:
        if n & 1:
            out = point_add(curve, out, add)
        add = point_add(curve, add, add)
        n >>= 1
    return out


def point_order(curve: CurveData, P, bound: int = 16) -> Optional[int]:
    Q = P
    for n in range(1, bound + 1):
        if Q is None:
            return n
        Q = point_add(curve, Q, P)
    return None


def _square_divisor_roots(n: int) -> list[int]:
    """All d >= 1 with d^2 | n."""
    n = abs(n)
    fac = {}
    for p in prime_factors(n):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        fac[p] = e // 2
    out = [1]
    for p, e in fac.items():
        out = [d * p ** k for d in out for k in range(e + 1)]
    return sorted(out)


def torsion_points(curve: CurveData) -> list:
    """All rational torsion points (excluding infinity), exactly.

    Works on the scaled model Y^2 = X^3 - 27 c4 X - 54 c6 (X = 36x + 3b2),
    where torsion is integral with Y = 0 or Y^2 dividing the scaled
    discriminant, then maps back and certifies each point's finite order.
    """
    import numpy as np

    c4, c6 = curve.c_invariants
    A, B = -27 * c4, -54 * c6
    scaled_disc = -16 * (4 * A ** 3 + 27 * B ** 2)
    b2 = curve.b_invariants[0]
    a1, _, a3, _, _ = curve.ainvs
    pts = []
    seen = set()
    for Y in [0] + _square_divisor_roots(scaled_disc):
        # integer roots of X^3 + A X + (B - Y^2)
        for r in np.roots([1, 0, A, B - Y * Y]):
            if abs(r.imag) > 0.5:
                continue
            for X in {round(r.real) + d for d in (-1, 0, 1)}:
                if X ** 3 + A * X + B - Y * Y != 0:
                    continue
                for Ys in ({0} if Y == 0 else {Y, -Y}):
                    x = Fraction(X - 3 * b2, 36)
                    y = Fraction(Ys, 216) - Fraction(a1 * x + a3, 2)
                    P = (x, y)
                    if P in seen:
                        continue
                    seen.add(P)
                    if point_order(curve, P) is not None:
                        pts.append(P)
    return pts


def torsion_order(curve: CurveData) -> int:
    """#tor(E): gcd-of-counts upper bound, confirmed by exact point search."""
    bound = 0
    good = 0
    p = 5
    while good < 20:
        if _is_prime_small(p) and curve.is_good(p):
            bound = math.gcd(bound, count_points(curve, p))
            good += 1
            if bound == 1:
                break
        p += 2
    confirmed = 1 + len(torsion_points(curve))
    if bound % confirmed != 0:
        raise ValidationError(
            f"{curve.label}: torsion {confirmed} incompatible with gcd bound {bound}")
    return confirmed


def rational_roots(coeffs_desc: Sequence[int]) -> list[Fraction]:
    """Rational roots of an integer polynomial (descending coefficients)."""
    c = list(coeffs_desc)
    while c and c[0] == 0:
        c.pop(0)
    while c and c[-1] == 0:
        c.pop()  # drop root at 0; caller rarely cares, but record it
        return sorted(set(rational_roots(c) + [Fraction(0)]))
    if len(c) <= 1:
        return []
    lead, const = abs(c[0]), abs(c[-1])
    roots = set()
    for r in _divisors(const):
        for s in _divisors(lead):
            for cand in (Fraction(r, s), Fraction(-r, s)):
                if sum(ci * cand ** (len(c) - 1 - i) for i, ci in enumerate(c)) == 0:
                    roots.add(cand)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.extend([d, n // d])
        d += 1
    return sorted(set(out))
