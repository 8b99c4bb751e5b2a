import random
from fractions import Fraction as F

import pytest

from preproj.series import (ExponentProfile, TruncatedSeries, b_closed_form, coxeter_det,
                            euler_identity_check, hc_series, n_case_formula, n_closed_form,
                            nk_closed_form_check, one_minus, p_series, palindrome, q_and_qstar,
                            rs_factorization_check, series_det)

PROFILES = [("A", n) for n in range(1, 9)] + [("D", n) for n in range(4, 9)] + [
    ("E", 6), ("E", 7), ("E", 8)]


def test_inverse_round_trip():
    rng = random.Random(0)
    for _ in range(10):
        s = TruncatedSeries([1] + [F(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(20)], 20)
        assert s * s.inverse() == TruncatedSeries.one(20)


def test_geometric_series():
    assert one_minus(1, 6).inverse().to_dict() == {k: 1 for k in range(7)}
    assert (one_minus(2, 6) ** -1).to_dict() == {0: 1, 2: 1, 4: 1, 6: 1}


def test_series_det():
    t = TruncatedSeries.monomial(1, 8)
    one = TruncatedSeries.one(8)
    assert series_det([[one, t], [t, one]]) == one - t * t


def test_a2_coxeter_det():
    q = ExponentProfile.of("A", 2).quiver()
    assert coxeter_det(q, 10).to_dict() == {0: 1, 2: 1, 4: 1}


@pytest.mark.parametrize("t,r", PROFILES)
def test_profile_invariants(t, r):
    pr = ExponentProfile.of(t, r)
    q, qs = q_and_qstar(pr)
    assert sum(qs.to_dict().values()) == sum(m - 1 for m in pr.exponents) == r * (pr.h - 2) // 2
    assert palindrome(qs, 2 * pr.h - 4) == q
    hc = hc_series(pr)
    assert hc["b"] == hc["b_closed_form"]
    assert euler_identity_check(pr, 40).ok


def test_p_series_examples():
    assert p_series(ExponentProfile.of("A", 3)).to_dict() == {0: 3, 2: 2, 4: 1}


def test_nk_examples():
    a4 = ExponentProfile.of("A", 4)
    assert [n for n in n_closed_form(a4, 10)[1:]] == [-1, -1, -1, -1, 0, -1, -1, -1, -1, 0]
    d4 = ExponentProfile.of("D", 4)  # h = 6, exponents 1, 3, 3, 5
    assert n_closed_form(d4, 12)[1:] == [-1, 0, -2, 0, -1, 0, -1, 0, -2, 0, -1, 0]
    d5 = ExponentProfile.of("D", 5)  # h = 8, exponents 1, 3, 4, 5, 7
    assert n_closed_form(d5, 8)[1:] == [-1, 0, -1, -1, -1, 0, -1, 0]
    assert all(n_closed_form(d5, 40)[k] == n_case_formula(d5, k) for k in range(1, 41))
    assert b_closed_form(a4, 12)[0] == 0


@pytest.mark.parametrize("t,r", PROFILES)
def test_nk_and_rs(t, r):
    assert nk_closed_form_check(t, r, 60).ok
    assert rs_factorization_check(ExponentProfile.of(t, r)).ok


def test_bad_profile():
    with pytest.raises(ValueError):
        ExponentProfile("A", 2, 3, (1, 1))
