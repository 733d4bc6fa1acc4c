import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dioquint.arith import (
    DomainError,
    count_divisors_upto,
    divisor_count_table,
    divisors,
    factorize,
    is_perfect_square,
    nth_prime,
    omega,
    omega_segments,
    omega_table,
    primes_up_to,
    primorial,
    sieve_primes,
)


def naive_omega(n):
    return sum(1 for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, math.isqrt(p) + 1)))


def test_first_primes():
    assert primes_up_to(10) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert nth_prime(24) == 89


def test_primes_up_to_rejects_zero():
    with pytest.raises(DomainError):
        primes_up_to(0)


@pytest.mark.parametrize("k,value", [(1, 2), (5, 2310), (10, 6469693230)])
def test_primorial(k, value):
    assert primorial(k) == value


def test_primorial_23_exceeds_window_lower_end():
    assert 1e32 < primorial(23) < 1e33


@given(st.integers(min_value=1, max_value=10**12))
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f.items()) == n
    assert omega(n) == len(f)


@given(st.integers(min_value=1, max_value=5000))
def test_divisors_brute(n):
    assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]


@given(st.integers(min_value=1, max_value=5000), st.integers(min_value=1, max_value=6000))
def test_count_divisors_upto(n, H):
    assert count_divisors_upto(n, H) == sum(1 for d in range(1, min(n, H) + 1) if n % d == 0)


@given(st.integers(min_value=0, max_value=10**30))
def test_perfect_square(n):
    r = math.isqrt(n)
    assert is_perfect_square(n) == (r * r == n)
    assert is_perfect_square(r * r)


def test_sieve_matches_trial_division():
    ps = sieve_primes(1000).tolist()
    assert ps == [p for p in range(2, 1001) if all(p % q for q in range(2, math.isqrt(p) + 1))]


def test_omega_table_against_naive():
    tab = omega_table(500)
    assert [int(tab[n]) for n in range(2, 501)] == [naive_omega(n) for n in range(2, 501)]


@pytest.mark.parametrize("segment", [7, 64, 1 << 20])
def test_omega_segments_independent_of_segment_size(segment):
    got = np.concatenate([om for _, om in omega_segments(1, 3000, segment=segment)])
    assert got.tolist() == [omega(n) for n in range(1, 3001)]


def test_divisor_count_table():
    tab = divisor_count_table(300)
    assert [int(tab[n]) for n in range(1, 301)] == [len(divisors(n)) for n in range(1, 301)]
