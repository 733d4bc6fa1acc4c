"""Rule out omega(b) = 23 for case (A) by enumerating prime swaps.

With b < (UD/20)^(1/2) and omega(b) = 23, the smallest primes are forced
to divide b, a is small, and b arises from b1(a) by swapping some of the
remaining primes p_i (i <= 23) for larger ones, times a multiplier q built
from primes already present.  Every such b is listed and tested.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import DomainError, is_perfect_square, nth_prime, primes_up_to, primorial
from .interval import Interval, ival, pow10, to_fraction

NUM_PRIMES = 23
DEFAULT_LOG10_UD = Fraction("67.859")
INDEX_CAP = 10_000


def b0() -> int:
    return primorial(NUM_PRIMES)


def _p(i: int) -> int:
    return nth_prime(i)


def _default_ud(UD) -> Interval:
    return pow10(DEFAULT_LOG10_UD) if UD is None else ival(UD)


def ub_of(a: int, UD) -> Interval:
    """``UD^(1/2) (16 a^2 + 4 a)^(-1/2)``."""
    if a < 1:
        raise DomainError("a must be >= 1")
    return ival(UD).sqrt() / Interval(16 * a * a + 4 * a).sqrt()


def window_hi(UD) -> Interval:
    """``(UD/20)^(1/2)``, the cap on b; equal to UB(1)."""
    return ub_of(1, UD)


def b1_of(a: int) -> int:
    """Smallest b with omega(b) = 23 and 8 | ab."""
    if a < 1:
        raise DomainError("a must be >= 1")
    v2 = (a & -a).bit_length() - 1
    return b0() * 2 ** max(0, 2 - v2)


def max_a(UD) -> int:
    """Largest a with 4a(4a+1) b0^2 < UD."""
    a = 0
    while Interval(4 * (a + 1) * (4 * (a + 1) + 1) * b0() ** 2).lt(UD):
        a += 1
    if not Interval(4 * (a + 1) * (4 * (a + 1) + 1) * b0() ** 2).gt(UD):
        raise ArithmeticError("cannot decide the a cutoff")
    return a


def forced_small_primes(UD=None) -> list[int]:
    """Primes p_i (i <= 23) that must divide b: b0/p_i * p_24 already exceeds the window."""
    hi = window_hi(_default_ud(UD))
    B = b0()
    out = []
    for p in primes_up_to(NUM_PRIMES):
        swapped = Interval(Fraction(B * _p(NUM_PRIMES + 1), p))
        if swapped.gt(hi):
            out.append(p)
        elif not swapped.le(hi):
            raise ArithmeticError(f"cannot decide whether {p} is forced")
    if out and out != primes_up_to(len(out)):
        raise ArithmeticError("forced primes are not an initial segment")
    return out


def first_swappable(UD=None) -> int:
    return len(forced_small_primes(UD)) + 1


def _ratio_below(num: int, den: int, bound: Interval) -> bool:
    r = Interval(Fraction(num, den))
    if r.lt(bound):
        return True
    if r.ge(bound):
        return False
    raise ArithmeticError(f"cannot decide {num}/{den} < {bound}")


def swap_ratio(a: int, UD) -> Interval:
    return ub_of(a, UD) / b1_of(a)


def max_v(a: int, UD, first: Optional[int] = None) -> int:
    """Largest v with p_24..p_(23+v) / (p_(24-v)..p_23) < UB/b1."""
    first = first_swappable(UD) if first is None else first
    bound = swap_ratio(a, UD)
    v = 0
    while v < NUM_PRIMES - first + 1:
        n = v + 1
        num = math.prod(_p(NUM_PRIMES + i) for i in range(1, n + 1))
        den = math.prod(_p(NUM_PRIMES + 1 - i) for i in range(1, n + 1))
        if not _ratio_below(num, den, bound):
            break
        v = n
    return v


def K_of(u: int, bound: Interval) -> int:
    """Largest K with p_24..p_(22+u) p_K / (p_(24-u)..p_23) < bound."""
    head = math.prod(_p(NUM_PRIMES + i) for i in range(1, u))
    den = math.prod(_p(NUM_PRIMES + 1 - i) for i in range(1, u + 1))
    K = NUM_PRIMES + u - 1
    while _ratio_below(head * _p(K + 1), den, bound):
        K += 1
        if K >= INDEX_CAP:
            raise ArithmeticError(f"K search hit the index cap {INDEX_CAP}")
    return K


def J_of(u: int, bound: Interval, first: int) -> int:
    """Smallest J >= first with p_24..p_(23+u) / (p_(25-u)..p_23 p_J) < bound."""
    num = math.prod(_p(NUM_PRIMES + i) for i in range(1, u + 1))
    den_head = math.prod(_p(NUM_PRIMES + 1 - i) for i in range(1, u))
    J = NUM_PRIMES - u + 1
    while J - 1 >= first and _ratio_below(num, den_head * _p(J - 1), bound):
        J -= 1
    return J


def smooth_multipliers(primes, q_max: int) -> list[int]:
    """All q <= q_max whose prime factors lie in ``primes`` (q = 1 included)."""
    out = [1]
    for p in sorted(set(primes)):
        if p > q_max:
            break
        more = []
        for q in out:
            q *= p
            while q <= q_max:
                more.append(q)
                q *= p
        out += more
    return sorted(out)


@dataclass(frozen=True)
class SwapCandidate:
    a: int
    base: int
    removed: tuple  # prime indices j, descending
    added: tuple  # prime indices k, ascending
    value: int
    q: int = 1

    def record(self) -> dict:
        return {
            "a": self.a,
            "removed": [_p(j) for j in self.removed],
            "added": [_p(k) for k in self.added],
            "q": self.q,
            "b": str(self.value),
        }


def _prime_support(removed, added) -> list[int]:
    keep = [p for i, p in enumerate(primes_up_to(NUM_PRIMES), start=1) if i not in removed]
    return keep + [_p(k) for k in added]


def enumerate_candidates(a: int, UD=None) -> list[SwapCandidate]:
    """All b <= UB(a) with omega(b) = 23 reachable from b1(a) by swaps and a multiplier q.

    ``u = 0`` (b1 itself, times q) is included when it fits below UB.
    """
    UD = _default_ud(UD)
    first = first_swappable(UD)
    bound = swap_ratio(a, UD)
    base = b1_of(a)
    ub = ub_of(a, UD)
    out = []

    def emit(js, ks, num, den):
        v = base // den * num
        q_max = math.floor(ub.hi / v) if Interval(v).le(ub) else 0
        for q in smooth_multipliers(_prime_support(js, ks), q_max):
            if Interval(q * v).le(ub):
                out.append(SwapCandidate(a, base, js, ks, q * v, q))
            elif not Interval(q * v).gt(ub):
                raise ArithmeticError("undecidable comparison with UB")

    emit((), (), 1, 1)
    for u in range(1, max_v(a, UD, first) + 1):
        for js, ks, num, den in _swaps(u, bound, first):
            if _ratio_below(num, den, bound):
                emit(js, ks, num, den)
    return sorted(out, key=lambda c: (c.a, len(c.removed), c.value))


def _swaps(u: int, bound: Interval, first: int):
    """Index sets (js, ks) of size u that might satisfy p_ks / p_js < bound.

    Depth-first with product pruning: a prefix is dropped once even the most
    favourable completion reaches ``bound.hi``.  K(u) and J(u) cap the
    indices as a consistency check.
    """
    hi = to_fraction(bound.hi)
    K, J = K_of(u, bound), J_of(u, bound, first)
    top = math.prod(_p(NUM_PRIMES + i) for i in range(1, u + 1))
    out = []

    def add(start, ks, num, den, js):
        if len(ks) == u:
            out.append((js, tuple(ks), num, den))
            return
        r = u - len(ks)
        k = start
        while Fraction(num * math.prod(_p(i) for i in range(k, k + r)), den) < hi:
            if k > K:
                raise ArithmeticError(f"u={u}: added index {k} beyond K = {K}")
            add(k + 1, ks + [k], num * _p(k), den, js)
            k += 1

    def remove(start, js, den):
        if len(js) == u:
            add(NUM_PRIMES + 1, [], 1, den, tuple(js))
            return
        r = u - len(js)
        for j in range(start, first + r - 2, -1):
            best = den * math.prod(_p(i) for i in range(j, j - r, -1))
            if Fraction(top, best) >= hi:
                break
            if j < J:
                raise ArithmeticError(f"u={u}: removed index {j} below J = {J}")
            remove(j - 1, js + [j], den * _p(j))

    remove(NUM_PRIMES, [], 1)
    return out


def brute_force_candidates(a: int, UD=None) -> list[int]:
    """Every b <= UB(a) with 23 distinct primes, the forced ones among them, and 8 | ab.

    Independent of the swap structure: a depth-first search over prime
    subsets pruned only by the product bound, then every cofactor q found
    by trial division.
    """
    UD = _default_ud(UD)
    ub = ub_of(a, UD)
    forced = forced_small_primes(UD)
    first = len(forced) + 1
    base = b1_of(a)
    fixed = base // math.prod(_p(i) for i in range(first, NUM_PRIMES + 1))
    # any added prime p satisfies p / p_23 < UB/b1, so p < p_23 * UB/b1
    limit = math.floor(_p(NUM_PRIMES) * swap_ratio(a, UD).hi) + 1
    pool = [p for p in primes_up_to(INDEX_CAP) if _p(first) <= p <= limit]
    need = NUM_PRIMES - first + 1
    found = []

    def finish(prod: int, chosen: list[int]) -> None:
        support = forced + chosen
        q = 1
        while Interval(q * prod).le(ub):
            m = q
            for p in support:
                while m % p == 0:
                    m //= p
            if m == 1:
                found.append(q * prod)
            q += 1
        if not Interval(q * prod).gt(ub):
            raise ArithmeticError("undecidable comparison with UB")

    def dfs(start: int, chosen: list[int], prod: int) -> None:
        if len(chosen) == need:
            finish(prod, chosen)
            return
        left = need - len(chosen)
        for i in range(start, len(pool) - left + 1):
            # smallest completion uses the next `left` primes
            if Interval(prod * math.prod(pool[i : i + left])).gt(ub):
                break
            dfs(i + 1, chosen + [pool[i]], prod * pool[i])

    dfs(0, [], fixed)
    return sorted(found)


@dataclass
class DischargeReport:
    a: int
    checked: int
    survivors: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.survivors


def discharge_candidates(a: int, candidates: list[SwapCandidate]) -> DischargeReport:
    """Pair test: ab + 1 must be a square for {a, b} to start a quintuple."""
    survivors = [c for c in candidates if is_perfect_square(a * c.value + 1)]
    return DischargeReport(a, len(candidates), survivors)


def check_candidate(c: SwapCandidate, UD=None) -> list[str]:
    """Recompute every invariant of a candidate from scratch; return failures."""
    UD = _default_ud(UD)
    errors = []
    b = c.value
    if not (b0() <= b and Interval(b).lt(window_hi(UD))):
        errors.append("outside window")
    if not Interval(b).le(ub_of(c.a, UD)):
        errors.append("above UB")
    m, distinct = b, 0
    for p in primes_up_to(NUM_PRIMES + 200):
        if m % p == 0:
            distinct += 1
            while m % p == 0:
                m //= p
    if m != 1 or distinct != NUM_PRIMES:
        errors.append("omega != 23")
    if any(b % p for p in forced_small_primes(UD)):
        errors.append("missing a forced prime")
    if (c.a * b) % 8:
        errors.append("ab not divisible by 8")
    return errors


@dataclass
class PrimeSwapReport:
    log10_UD: Fraction
    a_max: int
    forced: list
    v: dict
    candidates: dict
    discharge: dict

    @property
    def omega_le_22(self) -> bool:
        return all(d.ok for d in self.discharge.values())

    @property
    def q_max(self) -> int:
        return max((c.q for cs in self.candidates.values() for c in cs), default=1)

    def census(self) -> list[dict]:
        return [c.record() for a in sorted(self.candidates) for c in self.candidates[a]]

    def census_json(self) -> str:
        """One candidate per line, stable for golden-file comparison."""
        return "[\n" + ",\n".join(json.dumps(r) for r in self.census()) + "\n]\n"


def run_prime_swap(log10_UD=DEFAULT_LOG10_UD, a_values: Optional[list[int]] = None) -> PrimeSwapReport:
    UD = pow10(log10_UD)
    a_cap = max_a(UD)
    a_values = list(range(1, a_cap + 1)) if a_values is None else a_values
    if any(not 1 <= a <= a_cap for a in a_values):
        raise DomainError(f"a must lie in 1..{a_cap}")
    cands, disc, v = {}, {}, {}
    for a in a_values:
        v[a] = max_v(a, UD)
        cands[a] = enumerate_candidates(a, UD)
        disc[a] = discharge_candidates(a, cands[a])
    return PrimeSwapReport(Fraction(log10_UD), a_cap, forced_small_primes(UD), v, cands, disc)
