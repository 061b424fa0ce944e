import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcongr.curves import (BadPrime, BadReduction, CurveData, Overflow,
                           ValidationError, an_table, ap, count_points,
                           count_points_naive, division_poly, point_add,
                           point_mul, rational_roots, sieve_primes,
                           splits_completely_in_K3, three_division_poly,
                           torsion_order, torsion_points)

E11 = CurveData("11a1", (0, -1, 1, -10, -20), 11)
E11A3 = CurveData("11a3", (0, -1, 1, 0, 0), 11)
E19 = CurveData("19a1", (0, 1, 1, -9, -15), 19)
E37A = CurveData("37a1", (0, 0, 1, -1, 0), 37)


def test_invariants_of_11a1():
    assert E11.b_invariants == (-4, -20, -79, -21)
    assert E11.disc == -(11 ** 5)


def test_validation_rejects_singular():
    with pytest.raises(ValidationError):
        CurveData("sing", (0, 0, 0, 0, 0), 1)


def test_validation_rejects_foreign_conductor_prime():
    with pytest.raises(ValidationError):
        CurveData("bad", (0, -1, 1, -10, -20), 22)  # 2 does not divide 11^5


def test_count_points_examples():
    assert count_points(E11, 7) == 10
    assert count_points(CurveData("1356d1", (0, 1, 0, -1, -4), 1356), 7) == 11
    assert count_points(CurveData("307a1", (0, 0, 1, -8, -9), 307), 11) == 9


def test_count_points_against_naive_oracle():
    for curve in (E11, E19, E37A):
        for p in (3, 5, 7, 13, 31, 61, 101):
            if curve.is_good(p):
                assert count_points(curve, p) == count_points_naive(curve, p)


def test_count_points_errors():
    with pytest.raises(BadReduction):
        count_points(E11, 11)
    with pytest.raises(Overflow):
        count_points(E11, 10 ** 7 + 19)


def test_ap_examples():
    assert ap(E11, 7) == -2
    assert ap(E11, 11) == 1          # split multiplicative
    assert ap(CurveData("20a1", (0, 1, 0, 4, 4), 20), 2) == 0  # additive
    assert ap(CurveData("14a1", (1, 0, 1, 4, -6), 14), 2) == -1  # non-split at 2
    assert ap(CurveData("14a1", (1, 0, 1, 4, -6), 14), 7) == 1


def test_hasse_bound_over_good_primes():
    for p in sieve_primes(1000):
        if p > 2 and E11.is_good(p):
            assert abs(ap(E11, p)) <= 2 * math.isqrt(p) + 1


def test_an_table_basics():
    t = an_table(E11, 77)
    assert t.a(1) == 1
    assert t.a(4) == t.a(2) ** 2 - 2
    assert t.a(77) == t.a(7) * t.a(11)
    known = [1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2, 4, 4, -1]
    assert t.values[:15] == known


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 200), st.integers(2, 200))
def test_an_multiplicative(m, n):
    if math.gcd(m, n) != 1:
        return
    t = an_table(E11, m * n)
    assert t.a(m * n) == t.a(m) * t.a(n)


def test_torsion_examples():
    assert torsion_order(E11) == 5
    assert torsion_order(E11A3) == 5
    assert torsion_order(CurveData("1356d1", (0, 1, 0, -1, -4), 1356)) == 1
    assert torsion_order(CurveData("15a1", (1, 1, 1, -10, -10), 15)) == 8


def test_torsion_divides_counts():
    for p in sieve_primes(1000):
        if p > 3 and E11.is_good(p):
            assert count_points(E11, p) % 5 == 0


def test_three_division_poly_leading_and_value():
    psi = three_division_poly(E11)
    assert psi[0] == 3
    assert psi == (3, -4, -60, -237, -21)
    # rational 3-torsion: psi vanishes at its x-coordinate (19a1 has a 3-torsion point)
    pts = [P for P in torsion_points(E19) if point_mul(E19, 3, P) is None
           and P is not None]
    assert pts
    x0 = pts[0][0]
    c = three_division_poly(E19)
    assert sum(Fraction(ci) * x0 ** (4 - i) for i, ci in enumerate(c)) == 0


def test_three_division_roots_are_3_torsion_over_C():
    # numeric oracle: each root x of psi_3 gives a point with x(2P) = x(P)
    a1, a2, a3, a4, a6 = E11.ainvs
    b2, b4, b6, b8 = E11.b_invariants
    for x in np.roots(three_division_poly(E11)):
        y = (-(a1 * x + a3) + np.sqrt(complex(4 * (x ** 3 + a2 * x ** 2 + a4 * x + a6)
                                              + (a1 * x + a3) ** 2))) / 2
        lam = (3 * x * x + 2 * a2 * x + a4 - a1 * y) / (2 * y + a1 * x + a3)
        x2 = lam * lam + a1 * lam - a2 - 2 * x
        assert abs(x2 - x) < 1e-6


def test_division_poly_5_7_vanish_on_torsion():
    # 11a1 has a rational 5-torsion point: psi_5 picks it up, psi_7 does not
    psi5 = division_poly(E11, 5)
    roots5 = rational_roots(list(reversed(psi5)))
    assert Fraction(5) in roots5  # x = 5 is the x-coordinate of a 5-torsion point
    psi7 = division_poly(E11, 7)
    assert not rational_roots(list(reversed(psi7)))


def test_splits_completely_examples():
    assert splits_completely_in_K3(E11, 337) is True
    assert splits_completely_in_K3(E11, 19) is False
    assert splits_completely_in_K3(E11, 193) is True
    with pytest.raises(BadPrime):
        splits_completely_in_K3(E11, 3)
    with pytest.raises(BadPrime):
        splits_completely_in_K3(E11, 11)


def test_point_arithmetic_torsion_cycle():
    pts = torsion_points(E11)
    assert len(pts) == 4  # five points with infinity
    P = pts[0]
    acc = P
    for _ in range(4):
        acc = point_add(E11, acc, P)
    assert acc is None
