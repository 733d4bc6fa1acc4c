from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dioquint.interval import Interval, pow10
from dioquint.logforms import (
    CertificationError,
    DivergenceError,
    absorption_margin,
    aleksentsev_constant,
    case_a_max_a,
    g_values,
    iterate_d_bound,
    solve_j_bound,
    trial_case_a_row,
)

ROWS = ["AI", "AII", "BI", "BII", "CI", "CII", "D"]


def test_aleksentsev_value():
    v = aleksentsev_constant(3, 4)
    assert v.ge(Interval("1.50125e11")) and v.lt(Interval("1.50135e11"))


def test_aleksentsev_grows_in_d():
    vals = [aleksentsev_constant(3, d) for d in range(1, 8)]
    assert all(a.lt(b) for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("tag", ROWS)
def test_side_conditions_at_seed(config, tag):
    p = config.rows[tag]
    gv = g_values(p, p.C0, pow10(Fraction("72.188")))
    assert gv.all_certified()


@pytest.mark.parametrize("tag", ROWS)
@pytest.mark.parametrize("log_c1", [30, 50, 72])
def test_g_sandwich(config, tag, log_c1):
    # each g tends to its leading constant as C1 grows; both variants agree closely
    p = config.rows[tag]
    C1 = pow10(log_c1)
    a = g_values(p, p.C0, C1, "displayed")
    b = g_values(p, p.C0, C1, "derived")
    assert abs(float(a.g6.mid) - float(b.g6.mid)) < 1e-6
    assert a.g2.lt(a.g4)


def test_c0_must_be_below_c1(config):
    p = config.rows["AI"]
    with pytest.raises(CertificationError):
        g_values(p, Interval(10**9), Interval(10**8))


@pytest.mark.parametrize("tag", ["AI", "BII", "D"])
def test_j_bound_is_a_crossing(config, tag):
    p = config.rows[tag]
    C1 = pow10(60)
    j = solve_j_bound(p, p.C0, C1)
    assert j.hi / j.lo < 1 + 2e-6
    j2 = solve_j_bound(p, p.C0, pow10(61))
    assert j2.lo > j.hi  # j bound grows with C


@given(st.sampled_from(["A", "B", "C", "D"]), st.integers(min_value=0, max_value=3))
def test_iteration_is_monotone(config, case, bump):
    res = iterate_d_bound(config, case, Fraction("72.188") + bump)
    outs = [b for _, _, b, _ in res.iterations]
    assert outs == sorted(outs, reverse=True)
    assert res.converged


def test_seed_independence(config):
    a = iterate_d_bound(config, "D", Fraction("72.188")).log10_d_bound
    b = iterate_d_bound(config, "D", Fraction("80")).log10_d_bound
    assert abs(a - b) < Fraction(1, 100)


def test_seed_below_fixed_point_diverges(config):
    with pytest.raises(DivergenceError):
        iterate_d_bound(config, "A", Fraction(20))


def test_per_row_mode_is_weaker_for_b(config):
    published = iterate_d_bound(config, "B").log10_d_bound
    own = iterate_d_bound(config, "B", mode="per-row").log10_d_bound
    assert own > published


def test_trial_row(config):
    row = trial_case_a_row(74_000_000)
    assert row.B0 ** 2 > 4 * 74_000_000**3
    assert row.alpha.gt(1.5)


def test_smallest_entry_closes():
    r = case_a_max_a()
    assert r.closes
    assert r.a_bound.lt(Interval("7.29e7"))


def test_absorption(config):
    p = config.rows["AI"]
    slack, extra = absorption_margin(p, p.C0, pow10(68))
    assert slack.ge(extra)
