import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cotkahler.curvature import cn_at
from cotkahler.exceptions import DomainError, InvalidCaseParams, SingularProfile
from cotkahler.profiles import (Case, a1_second_from_cn, check_singularity, coefficients_at,
                                custom_profile, derivative_consistency, flat_identity_profile,
                                make_case_profile, profile_from_config, validate_profile,
                                with_b1_offset, with_mu_offset)

EXAMPLE_A1 = "B+sqrt(B**2+2*c*t)"


def test_flat_identity_coefficients(flat):
    d = coefficients_at(flat, 2.0)
    assert (d.b1, d.a2, d.b2, d.c1, d.c2, d.d1, d.d2, d.mu) == (0, 1, 0, 1, 1, 0, 0, 0)


def test_case1_at_zero(case1):
    d = coefficients_at(case1, 0.0)
    got = [d.a1, d.a1_p, d.b1, d.a2, d.b2, d.lam, d.mu, d.c1, d.c2, d.d1, d.d2]
    want = [2, 1, 0.5, 0.5, -0.125, 1, -1, 2, 0.5, -1.5, -0.625]
    assert got == pytest.approx(want, abs=1e-14)


def test_case1_at_one(case1):
    d = coefficients_at(case1, 1.0)
    r3 = math.sqrt(3)
    assert d.a1 == pytest.approx(1 + r3, abs=1e-12)
    assert d.b1 == pytest.approx((r3 - 1) / 2, abs=1e-12)
    assert d.a1 + 2 * d.b1 == pytest.approx(2 * r3, abs=1e-12)
    assert d.lam == pytest.approx(1 / r3, abs=1e-12)
    # a1 + 2t b1 = (a1^2 - 2ct) / (a1 - 2t a1')
    assert d.a1 + 2 * d.b1 == pytest.approx((d.a1**2 - 2) / (d.a1 - 2 * d.a1_p), abs=1e-12)


def test_singular_denominator_a1_minus_2t_a1p():
    P = custom_profile("sqrt(t)", 1, c=1.0)
    with pytest.raises(SingularProfile) as exc:
        coefficients_at(P, 1.0)
    assert exc.value.t == 1.0
    assert exc.value.which == "a1-2t*a1'"


def test_singular_denominator_a1sq_minus_2ct():
    P = custom_profile(2, 1, c=2.0)
    with pytest.raises(SingularProfile) as exc:
        coefficients_at(P, 1.0)
    assert exc.value.which == "a1^2-2ct"
    assert check_singularity(P, 0.5)["a1^2-2ct"] == pytest.approx(2.0)


def test_case_constructors():
    assert make_case_profile("case1", c=1, B=1, k=2).lam(0.0) == pytest.approx(1.0)
    assert make_case_profile("case2", c=1, B=1, k=2).lam(0.0) == pytest.approx(1.0)
    P = make_case_profile("case3", c=1, k=1, lam="0.7")
    assert P.a1(0.0) == 0.0
    assert P.a1(2.0) == pytest.approx(1.4)
    assert P.case_tag is Case.CASE3


@pytest.mark.parametrize("case, kw, match", [
    ("case1", dict(c=0.0, k=1.0), "c != 0"),
    ("case1", dict(c=1.0, k=-2.0), "c/k > 0"),
    ("case2", dict(c=1.0, k=0.0), "k > 0"),
    ("case3", dict(c=1.0, k=-1.0), "k > 0"),
    ("case3", dict(c=1.0, k=1.0, lam="-1"), "positive lambda"),
])
def test_case_sign_violations(case, kw, match):
    with pytest.raises(InvalidCaseParams, match=match):
        make_case_profile(case, **kw)


def test_case1_valid_on_long_range(case1):
    assert validate_profile(case1, np.linspace(0, 10, 41)).ok


def test_negative_radicand_is_a_domain_failure():
    P = custom_profile(EXAMPLE_A1, 1, c=-1.0, B=1.0)
    with pytest.raises(DomainError):
        P.a1(0.6)
    rep = validate_profile(P, [0.1, 0.6])
    assert rep.records[0].ok
    assert not rep.records[1].ok and rep.records[1].error
    assert not rep.ok


def test_case3_zero_section_flagged(case3):
    rep = validate_profile(case3, [0.0, 0.5, 1.0])
    assert not rep.ok
    assert rep.zero_section_excluded
    assert not rep.records[0].a1_pos
    assert rep.records[1].ok and rep.records[2].ok


def test_case3_loses_validity_past_t2(case3):
    # a1^2 - 2ct = t^2 - 2t changes sign at t = 2 for c = k = lambda = 1
    rep = validate_profile(case3, [0.5, 1.5, 2.5])
    assert [r.ok for r in rep.records] == [True, True, False]


def test_a1pp_relation_flat(flat):
    assert a1_second_from_cn(flat, 3.0) == 0.0 == flat.a1_pp(3.0)


def test_a1pp_relation_case1(case1):
    assert a1_second_from_cn(case1, 1.0) == pytest.approx(-1 / 3**1.5, abs=1e-9)
    assert case1.a1_pp(1.0) == pytest.approx(-1 / 3**1.5, abs=1e-12)


def test_a1pp_relation_lambda_one_profile():
    # with lambda = 1 the bracket of C_n reduces to a1 a1'' + 2 a1'^2 - 2t a1'^3/a1,
    # which vanishes identically for the example a1, so the relation still holds
    P = custom_profile(EXAMPLE_A1, 1, c=1.0, B=1.0)
    assert abs(a1_second_from_cn(P, 1.0) - P.a1_pp(1.0)) < 1e-12


def test_a1pp_relation_detects_other_lambda():
    P = custom_profile(EXAMPLE_A1, "1+t", c=1.0, B=1.0)
    assert abs(a1_second_from_cn(P, 1.0) - P.a1_pp(1.0)) > 1e-3
    assert abs(cn_at(P, 1.0)) > 1e-6


@pytest.mark.parametrize("make", [
    lambda: make_case_profile("case1", c=1, B=1, k=2),
    lambda: make_case_profile("case1", c=-1, B=1, k=-2),
    lambda: make_case_profile("case2", c=1, B=0.5, k=3),
    lambda: make_case_profile("case3", c=1, k=1, lam="1+t/4"),
    lambda: custom_profile(EXAMPLE_A1, "exp(t/5)", c=1.0, B=1.0),
])
def test_analytic_derivatives_match_finite_differences(make):
    P = make()
    grid = np.linspace(0.1, 1.5, 20)
    first, second = derivative_consistency(P, grid)
    assert first < 1e-6
    assert second < 1e-5


def test_profile_from_config():
    P = profile_from_config({"case": "case1", "c": "1", "B": "1", "k": "2"})
    assert P.case_tag is Case.CASE1 and P.lam(0.0) == pytest.approx(1.0)
    Q = profile_from_config({"case": "case1", "c": 1, "k": 2, "b1_offset": "0.1"})
    assert not Q.integrable_by_construction
    assert coefficients_at(Q, 0.0).b1 == pytest.approx(0.6)
    R = profile_from_config({"case": "custom", "c": 1, "B": 1, "a1": EXAMPLE_A1, "lambda": "1"})
    assert R.a1(0.0) == pytest.approx(2.0)
    assert profile_from_config({"case": "flat"}).c == 0.0


def test_offsets_break_only_their_relation(case1):
    P = with_mu_offset(case1, 1)
    d0, d = coefficients_at(case1, 1.0), coefficients_at(P, 1.0)
    assert d.mu == pytest.approx(d0.mu + 1)
    assert d.b1 == pytest.approx(d0.b1)
    Q = with_b1_offset(case1, "0.3*t")
    assert coefficients_at(Q, 1.0).b1 == pytest.approx(d0.b1 + 0.3)
    # a2, b2 stay tied to a1, b1 so J^2 = -I survives
    dq = coefficients_at(Q, 1.0)
    assert (dq.a1 + 2 * dq.b1) * (dq.a2 + 2 * dq.b2) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=80, deadline=None)
@given(case=st.sampled_from(["case1", "case2"]), B=st.floats(0.2, 3.0), k=st.floats(0.5, 4.0),
       t=st.floats(0.0, 8.0))
def test_structure_identities(case, B, k, t):
    d = coefficients_at(make_case_profile(case, c=1.0, B=B, k=k), t)
    assert abs(d.a1 * d.a2 - 1) < 1e-12
    assert abs((d.a1 + 2 * t * d.b1) * (d.a2 + 2 * t * d.b2) - 1) < 1e-12
    assert abs(d.c1 - d.lam * d.a1) < 1e-12 * max(1, abs(d.c1))
    assert abs(d.c2 - d.lam * d.a2) < 1e-12 * max(1, abs(d.c2))
    lm = d.lam + 2 * t * d.mu
    assert abs(d.c1 + 2 * t * d.d1 - lm * (d.a1 + 2 * t * d.b1)) < 1e-12 * max(1, abs(d.c1))
    assert abs(d.c2 + 2 * t * d.d2 - lm * (d.a2 + 2 * t * d.b2)) < 1e-12 * max(1, abs(d.c2))
