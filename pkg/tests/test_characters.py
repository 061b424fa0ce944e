import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcongr.characters import (DirichletCharacter, NoSuchCharacter,
                               QuadraticCharacter, by_value, characters, parse,
                               primitive_root)
from lcongr.cyclotomic import CycNumber


def test_characters_of_conductor_7_order_3():
    chis = characters(7, 3)
    assert len(chis) == 2
    exps = sorted(chi.exp_of(3) for chi in chis)
    assert exps == [1, 2]


def test_characters_of_conductor_11_order_5():
    chis = characters(11, 5)
    assert len(chis) == 4
    assert any(chi.exp_of(2) == 1 for chi in chis)


def test_no_such_character():
    with pytest.raises(NoSuchCharacter):
        characters(7, 5)


def test_conjugation_closure():
    chis = set(characters(11, 5))
    for chi in list(chis):
        for a in range(1, 5):
            assert chi.conjugate_by(a) in chis


def test_evaluate_examples():
    chi = by_value(7, 3, 3, 2)
    assert chi(3) == CycNumber.zeta_pow(3, 2)
    assert chi(-1) == CycNumber.one(3)
    assert chi(14).is_zero()


def test_parse_label_round_trip():
    chi = parse("7:3:chi(3)=z2")
    assert (chi.conductor, chi.order, chi.exp_of(3)) == (7, 3, 2)
    chi2 = parse(chi.label)
    assert chi2 == chi


def test_gauss_sum_magnitude():
    for p, q in ((7, 3), (11, 5), (13, 3)):
        chi = DirichletCharacter(p, q, 1)
        assert abs(chi.gauss_sum()) ** 2 == pytest.approx(p, rel=1e-10)


def test_gauss_sum_conjugate_identity():
    chi = DirichletCharacter(7, 3, 1)
    prod = chi.gauss_sum() * chi.bar().gauss_sum()
    assert prod == pytest.approx(7, abs=1e-9)  # even character: tau * conj-tau = p


def test_value_sum_vanishes():
    for chi in characters(7, 3) + characters(11, 5):
        total = CycNumber.zero(chi.order)
        for a in range(chi.conductor):
            total = total + chi(a)
        assert total.is_zero()


@settings(max_examples=50)
@given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6))
def test_multiplicative(a, b):
    chi = DirichletCharacter(11, 5, 2)
    assert chi(a * b) == chi(a) * chi(b)


def test_twist_exponent_periodicity():
    chi = DirichletCharacter(11, 5, 2)
    same = DirichletCharacter(11, 5, 2 + 5 - 5)
    for a in range(1, 11):
        assert chi.exp_of(a) == same.exp_of(a)


def test_primitive_root_least():
    assert primitive_root(7) == 3
    assert primitive_root(11) == 2
    assert primitive_root(31) == 3


def test_quadratic_conductor_15_is_odd():
    with pytest.raises(NoSuchCharacter):
        QuadraticCharacter(15)


def test_quadratic_conductor_21_even_primitive():
    chi = QuadraticCharacter(21)
    assert chi.sign_of(-1) == chi.sign_of(20) == 1
    assert chi.sign_of(3) == 0 and chi.sign_of(7) == 0
    # multiplicative on a few pairs
    for a, b in ((2, 5), (4, 11), (8, 13)):
        assert chi.sign_of(a * b) == chi.sign_of(a) * chi.sign_of(b)
    assert abs(chi.gauss_sum() - math.sqrt(21)) < 1e-9


def test_quadratic_conductor_8():
    chi = QuadraticCharacter(8)
    assert [chi.sign_of(a) for a in (1, 3, 5, 7)] == [1, -1, -1, 1]
    assert abs(chi.gauss_sum() - math.sqrt(8)) < 1e-9


def test_legendre_character_order_two():
    chi = DirichletCharacter(5, 2, 1)
    vals = [chi.sign_of(a) if hasattr(chi, "sign_of") else None for a in range(5)]
    assert [chi.exp_of(a) for a in range(1, 5)] == [0, 1, 1, 0]
    assert abs(chi.gauss_sum() - math.sqrt(5)) < 1e-9
