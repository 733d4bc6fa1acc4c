import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dioquint.interval import Interval, ival, pow10, precision, to_fraction

fracs = st.fractions(min_value=Fraction(1, 10**6), max_value=10**6, max_denominator=10**6)


def encloses(iv, q: Fraction) -> bool:
    return to_fraction(iv.lo) <= q <= to_fraction(iv.hi)


@given(fracs, fracs)
def test_arithmetic_encloses_exact(x, y):
    X, Y = Interval(x), Interval(y)
    assert encloses(X + Y, x + y)
    assert encloses(X - Y, x - y)
    assert encloses(X * Y, x * y)
    assert encloses(X / Y, x / y)


@given(fracs)
def test_sqrt_square_encloses(x):
    r = Interval(x).sqrt()
    assert encloses(r * r, x)


@given(fracs)
def test_log_exp_roundtrip(x):
    assert encloses(Interval(x).log().exp(), x)


@pytest.mark.parametrize("text", ["0.1", "1.5013e11", "7.228e67", "3.35e8"])
def test_decimal_strings_are_enclosed(text):
    assert encloses(Interval(text), Fraction(text))


def test_float_input_is_exact():
    assert Interval(0.1).width == 0
    assert to_fraction(Interval(0.1).lo) == Fraction(0.1)


def test_certified_comparisons_are_strict():
    a = Interval(1, 2)
    assert Interval(0).lt(a)
    assert not a.lt(Interval("1.5"))
    assert not a.gt(Interval("1.5"))
    assert a.le(2) and a.ge(1)


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        Interval(2, 1)


def test_pow10_matches_integer_powers():
    for k in (0, 5, 33):
        assert encloses(pow10(k), Fraction(10**k))


def test_precision_context_widens_and_restores():
    narrow = Interval(2).sqrt().width
    with precision(64):
        wide = Interval(2).sqrt().width
    assert wide > narrow
    assert Interval(2).sqrt().width == narrow


def test_ival_passthrough():
    x = Interval(3)
    assert ival(x) is x
    assert math.isclose(float(ival("2.5")), 2.5)
