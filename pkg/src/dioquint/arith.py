"""Exact integer number theory on Python ints.

Primes, primorials, omega, bounded divisor counts and square tests, plus
numpy sieves (smallest prime factor, segmented omega) for the desk-scale
oracles.  Python ints are arbitrary precision, so nothing here overflows.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator

import numpy as np

# Trial division covers every integer below TRIAL_LIMIT**2.
TRIAL_LIMIT = 10**7


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


def sieve_primes(limit: int) -> np.ndarray:
    """All primes ``<= limit`` as an int64 array (sieve of Eratosthenes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    is_p[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if is_p[p]:
            is_p[p * p :: 2 * p] = False
    return np.flatnonzero(is_p).astype(np.int64)


@lru_cache(maxsize=None)
def _trial_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in sieve_primes(TRIAL_LIMIT))


@lru_cache(maxsize=None)
def _prime_prefix(limit: int) -> tuple[int, ...]:
    return tuple(int(p) for p in sieve_primes(limit))


def primes_up_to(k: int) -> list[int]:
    """The first ``k`` primes, ascending (not the primes below ``k``)."""
    if k <= 0:
        raise DomainError("empty request: k must be >= 1")
    if k > 10_000:
        raise DomainError("k > 10^4 is outside the supported range")
    # p_k < k (log k + log log k) for k >= 6
    bound = 15 if k < 6 else int(k * (math.log(k) + math.log(math.log(k)))) + 1
    return list(_prime_prefix(bound)[:k])


def nth_prime(k: int) -> int:
    """``p_k`` with 1-based indexing (p_1 = 2)."""
    return primes_up_to(k)[-1]


def primorial(k: int) -> int:
    """Product of the first ``k`` primes; ``primorial(0) == 1``."""
    if k < 0:
        raise DomainError("k must be non-negative")
    if k == 0:
        return 1
    return math.prod(primes_up_to(k))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division over the sieve prefix."""
    if n < 1:
        raise DomainError("factorize needs n >= 1")
    out: dict[int, int] = {}
    m = n
    for p in _trial_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
    if m > 1:
        if m >= TRIAL_LIMIT * TRIAL_LIMIT:
            raise DomainError(
                f"cofactor {m} exceeds the trial-division range; "
                "supply the factorization explicitly"
            )
        out[m] = out.get(m, 0) + 1
    return out


def omega(n: int) -> int:
    """Number of distinct prime factors; ``omega(1) == 0``."""
    if n < 1:
        raise DomainError("omega is defined for n >= 1")
    return len(factorize(n))


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n`` in ascending order."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def count_divisors_upto(n: int, H: int) -> int:
    """``d_H(n)``: the number of divisors ``e`` of ``n`` with ``e <= H``."""
    if n < 1 or H < 1:
        raise DomainError("count_divisors_upto needs n >= 1 and H >= 1")
    return sum(1 for e in divisors(n) if e <= H)


def isqrt(n: int) -> int:
    if n < 0:
        raise DomainError("isqrt of a negative number")
    return math.isqrt(n)


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def spf_sieve(limit: int) -> np.ndarray:
    """Smallest prime factor of every integer in ``[0, limit]``.

    ``spf[0] = 0``, ``spf[1] = 1`` and ``spf[p] = p`` for primes.
    """
    spf = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 1:
        spf[1] = 1
    for p in sieve_primes(math.isqrt(limit)):
        p = int(p)
        block = spf[p * p :: p]
        block[block == 0] = p
    unset = spf == 0
    unset[:2] = False
    spf[unset] = np.flatnonzero(unset)
    return spf


def factor_with_spf(n: int, spf: np.ndarray) -> dict[int, int]:
    out: dict[int, int] = {}
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


def omega_segments(
    lo: int, hi: int, segment: int = 1 << 20
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(start, omega[start:start+len])`` blocks covering ``[lo, hi]``.

    Segmented so that ranges up to ~10^8 fit in modest memory.
    """
    if lo < 1:
        raise DomainError("omega is defined for n >= 1")
    small = sieve_primes(math.isqrt(hi))
    start = lo
    while start <= hi:
        stop = min(hi, start + segment - 1)
        rem = np.arange(start, stop + 1, dtype=np.int64)
        om = np.zeros(rem.size, dtype=np.int8)
        for p in small:
            p = int(p)
            if p * p > stop:
                break
            first = (-start) % p
            if first >= rem.size:
                continue
            om[first::p] += 1
            # strip every power of p from the multiples of p
            view = rem[first::p]
            mask = np.ones(view.size, dtype=bool)
            while mask.any():
                view[mask] //= p
                mask = view % p == 0
        om[rem > 1] += 1
        yield start, om
        start = stop + 1


def omega_table(limit: int) -> np.ndarray:
    """``omega(n)`` for ``n`` in ``[0, limit]`` (entry 0 is unused)."""
    out = np.zeros(limit + 1, dtype=np.int8)
    for start, block in omega_segments(1, limit):
        out[start : start + block.size] = block
    return out


def divisor_count_table(limit: int) -> np.ndarray:
    """``d(n)`` for ``n`` in ``[0, limit]`` via the divisor-sum sieve."""
    d = np.zeros(limit + 1, dtype=np.int64)
    for k in range(1, limit + 1):
        d[k::k] += 1
    return d
