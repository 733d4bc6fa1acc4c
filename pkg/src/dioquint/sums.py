"""Sums of 2^omega(n) and of d_H(n^2 - 1): exact evaluation and explicit bounds.

    E(x) = sum_{n<=x} 2^omega(n)
    F(x) = sum_{n<=x} 2^omega(n) / n
    G(x) = sum_{n<=x} 2^omega(2n-1) / (2n-1)

and d_H(n) = #{e | n : e <= H}.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .arith import DomainError, divisor_count_table, factor_with_spf, omega_segments, spf_sieve
from .interval import PI, Interval, ival

EXACT_SUM_LIMIT = 10**8
DH_LIMIT = 10**6
EXACT_RATIONAL_LIMIT = 10**4

# zeta'(2) and Euler's gamma to 20+ digits; enclosures are +-1e-20.
ZETA_PRIME_2 = Interval("-0.93754825431584375371", "-0.93754825431584375369")
EULER_GAMMA = Interval("0.57721566490153286060", "0.57721566490153286062")


def _float_sum_enclosure(total: float, n_terms: int) -> Interval:
    # each term 2^k/n is a correctly rounded quotient (rel. error <= 2^-53) and
    # each segment is summed with fsum (one more rounding per segment)
    err = Fraction(total) * Fraction(1, 2**51)
    return Interval(Fraction(total) - err, Fraction(total) + err)


@dataclass(frozen=True)
class ExactSums:
    x: int
    E: int
    F: Interval
    G: Interval


def exact_sums(x) -> ExactSums:
    """Exact ``E(x)`` and enclosures of ``F(x)``, ``G(x)`` by sieving omega."""
    X = math.floor(x)
    if X < 1:
        raise DomainError("x must be >= 1")
    if X > EXACT_SUM_LIMIT:
        raise DomainError(f"x = {X} exceeds the {EXACT_SUM_LIMIT} sieve guard")
    E = 0
    if X <= EXACT_RATIONAL_LIMIT:
        F_exact = Fraction(0)
        G_exact = Fraction(0)
        for start, om in omega_segments(1, 2 * X - 1):
            for i, w in enumerate(om.tolist()):
                n = start + i
                if n <= X:
                    E += 1 << w
                    F_exact += Fraction(1 << w, n)
                if n % 2 == 1:
                    G_exact += Fraction(1 << w, n)
        return ExactSums(X, E, Interval(F_exact), Interval(G_exact))
    F_parts = []
    G_parts = []
    for start, om in omega_segments(1, 2 * X - 1):
        n = np.arange(start, start + om.size, dtype=np.int64)
        pw = np.left_shift(1, om.astype(np.int64))
        keep = n <= X
        E += int(pw[keep].sum())
        F_parts.append(math.fsum((pw[keep] / n[keep]).tolist()))
        odd = (n & 1) == 1
        G_parts.append(math.fsum((pw[odd] / n[odd]).tolist()))
    F = sum((Interval(Fraction(v)) for v in F_parts), Interval(0))
    G = sum((Interval(Fraction(v)) for v in G_parts), Interval(0))
    F = F + _float_sum_enclosure(float(F.mid), X) - Interval(F.mid)
    G = G + _float_sum_enclosure(float(G.mid), X) - Interval(G.mid)
    return ExactSums(X, E, F, G)


def EF_bounds(x) -> tuple[Interval, Interval]:
    """Closed-form upper bounds ``(E_bound, F_bound)`` valid for x >= 1."""
    x = ival(x)
    if x.lt(1) or x.lo < 1:
        raise DomainError("x must be >= 1")
    L = x.log()
    pi2 = PI() ** 2
    F_b = 3 / pi2 * L**2 + Interval("1.3948") * L + Interval("0.4107") + Interval("3.253") * x ** Fraction(-1, 3)
    E_b = 6 / pi2 * x * L + Interval("0.787") * x + Interval("8.14") * x ** Fraction(2, 3) - Interval("0.3762")
    return E_b, F_b


def G_bound(x) -> Interval:
    """Closed-form upper bound on ``G(x)`` for x >= 1."""
    x = ival(x)
    if x.lo < 1:
        raise DomainError("x must be >= 1")
    L = x.log()
    return 3 / (2 * PI() ** 2) * L**2 + Interval("3.1227147") * L + Interval("3.56851") + Interval("0.525") / x


def _G_bound_or_zero(x: Interval) -> Interval:
    # G(x) is an empty sum below 1
    if x.hi < 1:
        return Interval(0)
    if x.lo < 1:
        raise DomainError("argument straddles 1; G bound undefined")
    return G_bound(x)


def milk_bound(N, H) -> Interval:
    """``2N G((H+1)/2) + N G((H+4)/8) + N G((H+2)/4) + N G(H/8)``."""
    N, H = ival(N), ival(H)
    if H.lo < 1:
        raise DomainError("H must be >= 1")
    return N * (
        2 * _G_bound_or_zero((H + 1) / 2)
        + _G_bound_or_zero((H + 4) / 8)
        + _G_bound_or_zero((H + 2) / 4)
        + _G_bound_or_zero(H / 8)
    )


def dH_coefficient(H) -> Interval:
    """Per-n factor of the closed-form bound on the d_H(n^2 - 1) sum."""
    H = ival(H)
    if H.lo < 1:
        raise DomainError("H must be >= 1")
    L = H.log()
    pi2 = PI() ** 2
    return 9 / pi2 * L**2 + Interval("11.1468") * L - Interval("0.957") + 24 * L / (pi2 * H) + Interval("44.14") / H


def dH_sum_bound(N, H) -> Interval:
    N = ival(N)
    if N.lo < 2:
        raise DomainError("N must be >= 2")
    return N * dH_coefficient(H)


def _shifted_square_divisors(N: int) -> Iterable[tuple[int, list[int]]]:
    """``(n, sorted divisors of n^2 - 1)`` for 2 <= n <= N."""
    spf = spf_sieve(N + 1)
    for n in range(2, N + 1):
        f = factor_with_spf(n - 1, spf) if n > 2 else {}
        for p, e in factor_with_spf(n + 1, spf).items():
            f[p] = f.get(p, 0) + e
        divs = [1]
        for p, e in f.items():
            divs = [d * p**k for d in divs for k in range(e + 1)]
        divs.sort()
        yield n, divs


def dH_sum_exact(N: int, H: int) -> int:
    """``sum_{n=2}^{N} d_H(n^2 - 1)`` by factoring (n-1)(n+1)."""
    return dH_sum_grid([N], [H])[(N, H)]


def dH_sum_grid(Ns: Sequence[int], Hs: Sequence[int]) -> dict[tuple[int, int], int]:
    """Exact sums for every (N, H) pair from one pass over n."""
    if not Ns:
        return {}
    Nmax = max(Ns)
    if min(Ns) < 2:
        raise DomainError("N must be >= 2")
    if Nmax > DH_LIMIT:
        raise DomainError(f"N = {Nmax} exceeds the {DH_LIMIT} guard")
    Hs = sorted(set(Hs))
    totals = [0] * len(Hs)
    wanted = set(Ns)
    out = {}
    for n, divs in _shifted_square_divisors(Nmax):
        for i, H in enumerate(Hs):
            totals[i] += bisect.bisect_right(divs, H)
        if n in wanted:
            for i, H in enumerate(Hs):
                out[(n, H)] = totals[i]
    return out


def shifted_square_divisor_counts(R: int) -> np.ndarray:
    """``d(r^2 - 1)`` for r in [0, R] (entries 0, 1 unused)."""
    tau = divisor_count_table(R + 1)
    idx = np.arange(R + 2, dtype=np.int64)
    v2 = np.zeros(R + 2, dtype=np.int64)
    m = idx.copy()
    m[0] = 1
    while True:
        even = (m % 2 == 0)
        if not even.any():
            break
        v2[even] += 1
        m[even] //= 2
    odd_tau = tau // (v2 + 1)
    r = np.arange(R + 1, dtype=np.int64)
    out = np.zeros(R + 1, dtype=np.int64)
    ev = r[(r >= 2) & (r % 2 == 0)]
    out[ev] = tau[ev - 1] * tau[ev + 1]
    od = r[(r >= 3) & (r % 2 == 1)]
    u, w = (od - 1) // 2, (od + 1) // 2
    # r^2 - 1 = 4uw with u, w consecutive and coprime
    out[od] = (v2[u] + v2[w] + 3) * odd_tau[u] * odd_tau[w]
    return out


@dataclass(frozen=True)
class AsymptoticConstants:
    E_leading: Interval  # 6/pi^2
    F_leading: Interval  # 3/pi^2
    E_second: Interval  # 6/pi^4 (pi^2 (2 gamma - 1) - 12 zeta'(2))
    F_second: Interval  # 12/pi^4 (pi^2 gamma - 6 zeta'(2))
    G_leading: Interval  # 1/pi^2
    G_log: Interval  # 2/(3 pi^4) (pi^2 (6 gamma + 7 log 2) - 36 zeta'(2))


def asymptotic_constants() -> AsymptoticConstants:
    pi2 = PI() ** 2
    pi4 = pi2**2
    g, z = EULER_GAMMA, ZETA_PRIME_2
    return AsymptoticConstants(
        E_leading=6 / pi2,
        F_leading=3 / pi2,
        E_second=6 / pi4 * (pi2 * (2 * g - 1) - 12 * z),
        F_second=12 / pi4 * (pi2 * g - 6 * z),
        G_leading=1 / pi2,
        G_log=2 / (3 * pi4) * (pi2 * (6 * g + 7 * Interval(2).log()) - 36 * z),
    )


def G_asymptotic(x) -> Interval:
    c = asymptotic_constants()
    L = ival(x).log()
    return c.G_leading * L**2 + c.G_log * L
