from fractions import Fraction

import pytest

from lcongr import checks
from lcongr.characters import DirichletCharacter, parse
from lcongr.checks import (BoundViolated, HypothesisFailed, NotUnit,
                           norm_identity_check, sign_determination,
                           unit_congruence_check, valuation_check)
from lcongr.curves import CurveData


def test_valuation_boundary_11a1(curves):
    rep = valuation_check(curves["11a1"], 5)
    assert rep.ord == -1 and rep.bound_satisfied


def test_valuation_manin_exceptions(curves):
    # c0 = 5 for 11a3: ord_5(c0 * 1/25) = -1
    rep = valuation_check(curves["11a3"], 5)
    assert rep.ord == -1
    for label in ("27a3", "27a4", "54a3"):
        rep = valuation_check(curves[label], 3)
        assert rep.ord == -1 and rep.bound_satisfied


def test_valuation_strict_when_no_isogeny(curves):
    rep = valuation_check(curves["11a1"], 3)
    assert rep.no_isogeny and rep.ord >= 0


def test_valuation_unit_case(curves):
    rep = valuation_check(curves["1356d1"], 3)
    assert rep.ord == 0


def test_norm_identity_121(curves):
    chi = parse("31:5:chi(3)=z3")
    for label in ("291d1", "139a1"):
        rep = norm_identity_check(curves[label], chi)
        assert rep.norm == 121 and rep.match
        assert rep.real_part_check
        assert rep.observed_residue == 2


def test_norm_identity_unit_case(curves):
    chi = parse("7:3:chi(3)=z2")
    rep = norm_identity_check(curves["1356d1"], chi)
    assert rep.norm == 1 and rep.real_part_check


def test_sign_determination_table(curves):
    chi = parse("7:3:chi(3)=z2")
    for label, count, sign in (("1356d1", 11, 1), ("1356f1", 7, -1),
                               ("3540b1", 11, 1)):
        rep = sign_determination(curves[label], chi)
        assert rep.match, label
        assert rep.predicted_residue == (-count) % 3
        expected_sign = 1 if (-count) % 3 == 1 else -1
        assert expected_sign == sign


def test_sign_determination_requires_hypotheses(curves):
    # p = 19: #E(F_19) of 1356d1 is 12, divisible by 3
    chi19 = DirichletCharacter(19, 3, 1)
    with pytest.raises(HypothesisFailed):
        sign_determination(curves["1356d1"], chi19)


def test_unit_congruence_quintic_table(curves):
    chi = parse("11:5:chi(2)=z1")
    for label, count in (("307c1", 16), ("714b1", 9), ("1216k1", 7)):
        rep = unit_congruence_check(curves[label], chi)
        assert rep.match, label
        assert rep.observed_residue == (-count) % 5


def test_unit_congruence_rejects_nonunit(curves):
    chi = parse("31:5:chi(3)=z3")
    with pytest.raises(NotUnit):
        unit_congruence_check(curves["291d1"], chi)


def test_realness_of_zeta_normalized_values(curves):
    chi = parse("11:5:chi(2)=z1")
    for label in ("307a1", "307c1", "432g1", "432h1"):
        rep = norm_identity_check(curves[label], chi)
        assert rep.real_part_check, label
