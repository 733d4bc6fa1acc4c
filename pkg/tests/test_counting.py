from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dioquint.counting import (
    PUBLISHED_ETA,
    PUBLISHED_M,
    IncompleteReportError,
    case_C_branches,
    count_case_A,
    count_case_B,
    count_case_C,
    count_case_D,
    m_split_thresholds,
    omega_cap,
    optimize_eta,
    total_count,
)
from dioquint.interval import Interval


@pytest.fixture(scope="module")
def UD(config):
    return config.published_d


@pytest.mark.parametrize("b_max,cap", [("1.9011e33", 23), ("2.35e22", 17), (6, 2), (30, 3), (29, 2)])
def test_omega_cap(b_max, cap):
    assert omega_cap(Interval(b_max)) == cap


def test_m1_m2_exact(UD):
    t = m_split_thresholds(UD["A"])
    assert t[0].exact == 177
    assert t[1].exact == 499686


def test_thresholds_monotone(UD):
    t = m_split_thresholds(UD["A"])
    assert [x.exact for x in t] == sorted(x.exact for x in t)


def test_threshold_definition(UD):
    # m is the largest integer with m^2 UD < 16 P^4
    from dioquint.arith import primorial
    from dioquint.interval import to_fraction

    ud = to_fraction(UD["A"].hi)
    for t in m_split_thresholds(UD["A"]):
        P4 = 16 * primorial(t.omega + 1) ** 4
        assert t.exact**2 * ud < P4 <= (t.exact + 1) ** 2 * ud


def test_case_a_terms(UD):
    r = count_case_A(UD["A"])
    assert r.omega_cap == 22
    assert r.term("refined").lt(r.term("unrefined"))


def test_no_prime_swap_raises_only_last_range(UD):
    on, off = count_case_A(UD["A"]), count_case_A(UD["A"], prime_swap=False)
    assert off.omega_cap == on.omega_cap + 1
    for j in range(8):
        assert off.term(f"range{j}").contains(on.term(f"range{j}"))
    last = off.term("range8") / on.term("range8")
    assert last.contains(Interval(2))


def test_m_override_length_checked(UD):
    with pytest.raises(ValueError):
        count_case_A(UD["A"], m_values=[1, 2])


def test_coarser_split_points_cost_more(UD):
    # collapsing all ranges onto omega = 22 can only increase the total
    base = count_case_A(UD["A"]).subtotal
    crude = count_case_A(UD["A"], m_values=[Fraction(4)] * 8).subtotal
    assert crude.gt(base)


@given(st.integers(min_value=45, max_value=70))
def test_counts_monotone_in_ud(k):
    lo, hi = Interval(10) ** k, Interval(10) ** (k + 1)
    assert count_case_B(lo).subtotal.lt(count_case_B(hi).subtotal)
    assert count_case_D(lo).subtotal.lt(count_case_D(hi).subtotal)


def test_case_c_branches_cross(UD):
    a_lo, b_lo, _ = case_C_branches(UD["C"], Fraction(10**9))
    a_hi, b_hi, _ = case_C_branches(UD["C"], Fraction(10**12))
    assert a_lo.gt(b_lo) and b_hi.gt(a_hi)


def test_optimized_eta_near_published(UD):
    eta = optimize_eta(UD["C"])
    assert abs(float(eta) / float(PUBLISHED_ETA) - 1) < 0.01
    assert count_case_C(UD["C"], eta).subtotal.le(count_case_C(UD["C"], PUBLISHED_ETA).subtotal * Interval("1.0001"))


def test_total_requires_all_cases(UD):
    with pytest.raises(IncompleteReportError):
        total_count({"A": count_case_A(UD["A"])})


def test_total_is_sum(UD):
    reps = {"A": count_case_A(UD["A"]), "B": count_case_B(UD["B"]),
            "C": count_case_C(UD["C"], PUBLISHED_ETA), "D": count_case_D(UD["D"])}
    tot = total_count(reps).total
    assert tot.contains(sum((r.subtotal for r in reps.values()), Interval(0)))
    assert tot.le(Interval("1.18e27"))


def test_published_split_points_are_below_exact(UD):
    for t, pub in zip(m_split_thresholds(UD["A"]), PUBLISHED_M):
        assert pub <= t.exact
