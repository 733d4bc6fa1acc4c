from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dioquint.alpha import (
    VIOLATION_STEP,
    all_case_coefficients,
    analytic_limit,
    compute_lambda,
    is_admissible,
    is_violated,
    max_alpha,
    m_lower_coeff,
)
from dioquint.arith import DomainError
from dioquint.interval import Interval
from dioquint.params import CaseParams

ROWS = ["AI", "AII", "BI", "BII", "CI", "CII", "D"]


@pytest.mark.parametrize("tag", ROWS)
def test_published_alpha_admissible(config, tag):
    row = config.rows[tag]
    assert is_admissible(row, row.alpha)


@pytest.mark.parametrize("tag", ROWS)
def test_max_alpha_is_sharp(config, tag):
    row = config.rows[tag]
    sol = max_alpha(row)
    assert is_admissible(row, sol.alpha_max)
    assert is_violated(row, sol.alpha_max + VIOLATION_STEP)
    assert sol.alpha_max.ge(row.alpha)
    assert sol.alpha_max.le(sol.limit)


@pytest.mark.parametrize(
    "tag,binding", [("AI", "first"), ("BI", "second"), ("D", "second")]
)
def test_binding_inequality(config, tag, binding):
    assert max_alpha(config.rows[tag]).binding == binding


def test_lambda_domain():
    with pytest.raises(DomainError):
        compute_lambda(0, Interval(4))
    with pytest.raises(DomainError):
        compute_lambda(5, Interval(1))


@given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=2, max_value=10**4))
def test_lambda_below_one(A0, rho):
    assert compute_lambda(A0, Interval(rho)).lt(1)


def _row(B0, C0):
    return CaseParams("AX", 1, B0, Interval(C0), Interval(146), Interval(20).sqrt(), Fraction(1, 2), Interval(1))


def test_alpha_grows_with_lower_bounds():
    # larger B0, C0 loosen both inequalities
    a = [max_alpha(_row(B, C)).alpha_max.lo for B, C in [(10, 100), (100, 10**4), (4095, 10**8), (10**6, 10**12)]]
    assert a == sorted(a)


def test_limit_values(config):
    assert abs(float(analytic_limit(config.rows["AI"]).mid) - 1.5615528) < 1e-6
    assert abs(float(analytic_limit(config.rows["D"]).mid) - 1.366025) < 1e-6


@pytest.mark.parametrize("case,published", [("A", "3.3022"), ("C", "2.0604"), ("D", "1.0080")])
def test_coefficients_truncate_to_published(config, case, published):
    cc = all_case_coefficients(config)[case]
    assert not cc.flagged
    assert cc.weakest == Fraction(published)


def test_case_b_discrepancy_flagged(config):
    cc = all_case_coefficients(config)["B"]
    assert cc.flagged
    assert cc.published_row == "BI"
    assert cc.weakest_row == "BII"
    assert cc.weakest == Fraction("1.3457")
    assert "BII" in cc.note()


def test_m_exponent(config):
    assert m_lower_coeff(config.rows["BI"])[1] == Fraction(2, 7)
