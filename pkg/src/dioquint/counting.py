"""Per-case quintuple counts and the grand total.

Each case turns an upper bound UD on d into a bound on the number of doubles
{a, b}, then multiplies by the number of ways a double can grow into a
quintuple.  Multipliers are configuration (:class:`Multipliers`) with their
provenance attached to every term of the report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arith import primorial
from .interval import Interval, ival, to_fraction
from .sums import EF_bounds, dH_coefficient, dH_sum_bound

PUBLISHED_M = (
    177,
    499686,
    Fraction("1.7e9"),
    Fraction("6.4e12"),
    Fraction("2.9e16"),
    Fraction("1.4e20"),
    Fraction("7.8e23"),
    Fraction("4.8e27"),
)
SPLIT_OMEGA = tuple(range(14, 22))
PUBLISHED_ETA = Fraction("6.76e10")


class IncompleteReportError(RuntimeError):
    pass


@dataclass(frozen=True)
class Multipliers:
    """Extension factors applied to double counts."""

    a_choices: int = 3  # 3 * 4 * 2^(omega+1) in the unrefined case-A count
    a_extend: int = 4
    a_split: int = 2  # 3 * 2 * 2^(w+1) per range in the refined count
    b_extend: int = 4
    c_triples: tuple = (8, 5, 4)  # (N/6)(log N + 2)^3 * 8 * 5 * 4
    c_small_a: tuple = (4, 5, 4)  # 4 * 2^omega * 5 * 4
    d_doubles: int = 2
    d_extend: int = 4


@dataclass
class Term:
    name: str
    value: Interval
    provenance: str

    def record(self) -> dict:
        return {"name": self.name, "value": self.value, "provenance": self.provenance}


@dataclass
class CountReport:
    case_tag: str
    radius: Interval
    omega_cap: Optional[int]
    subtotal: Interval
    detail: list = field(default_factory=list)

    def term(self, name: str) -> Interval:
        for t in self.detail:
            if t.name == name:
                return t.value
        raise KeyError(name)


def omega_cap(b_max) -> int:
    """Largest k with primorial(k) <= b_max (certified)."""
    b = ival(b_max)
    if b.hi < 2:
        raise ValueError("b_max must be >= 2")
    k = 0
    while True:
        nxt = Interval(primorial(k + 1))
        if nxt.le(b):
            k += 1
        elif nxt.gt(b):
            return k
        else:
            raise ArithmeticError(f"cannot decide primorial({k + 1}) <= {b}")


def _exact(ud) -> Fraction:
    if isinstance(ud, Interval):
        return to_fraction(ud.hi)
    return Fraction(ud)


@dataclass(frozen=True)
class Threshold:
    omega: int
    exact: int  # largest integer m keeping omega(b) <= omega
    two_sig: int  # exact, floored to two significant figures


def _floor_sig(n: int, digits: int = 2) -> int:
    if n < 10**digits:
        return n
    scale = 10 ** (len(str(n)) - digits)
    return n // scale * scale


def m_split_thresholds(UD_A, omega_targets: Sequence[int] = SPLIT_OMEGA) -> list[Threshold]:
    """Largest m with primorial(w+1) > UD^(1/4) m^(1/2) / 2, per target w.

    Squared twice this is m^2 UD < 16 primorial(w+1)^4: exact in rationals.
    """
    ud = _exact(UD_A)
    out = []
    for w in omega_targets:
        P = primorial(w + 1)
        rhs = Fraction(16 * P**4) / ud
        m = math.isqrt(math.floor(rhs))
        while Fraction(m * m) >= rhs:
            m -= 1
        out.append(Threshold(w, m, _floor_sig(m)))
    return out


def count_case_A(
    UD_A,
    m_values: Optional[Sequence] = None,
    prime_swap: bool = True,
    mult: Multipliers = Multipliers(),
) -> CountReport:
    UD = ival(UD_A)
    R = (UD / 16) ** Fraction(1, 4)
    b_max = (UD / 20).sqrt()
    cap = omega_cap(b_max)
    doubles = dH_sum_bound(R, R) / 2
    unrefined = mult.a_choices * mult.a_extend * Interval(2) ** (cap + 1) * doubles
    ms = list(PUBLISHED_M if m_values is None else m_values)
    if len(ms) != len(SPLIT_OMEGA):
        raise ValueError(f"need {len(SPLIT_OMEGA)} split points, got {len(ms)}")
    last_cap = cap - 1 if prime_swap else cap
    bounds = [Fraction(4)] + [Fraction(m) for m in ms]
    omegas = list(SPLIT_OMEGA) + [last_cap]
    detail = [
        Term("R", R, "r < (d/16)^(1/4)"),
        Term("b_max", b_max, "b < (d/20)^(1/2)"),
        Term("doubles", doubles, "(1/2) * closed-form d_H sum at N = H = R"),
        Term("unrefined", unrefined, f"{mult.a_choices}*{mult.a_extend}*2^{cap + 1} * doubles"),
    ]
    refined = Interval(0)
    for j, (m, w) in enumerate(zip(bounds, omegas)):
        H = R / Interval(m).sqrt()
        t = mult.a_choices * mult.a_split * Interval(2) ** (w + 1) * dH_sum_bound(R, H)
        refined = refined + t
        detail.append(
            Term(f"range{j}", t, f"{mult.a_choices}*{mult.a_split}*2^{w + 1} * d_H sum at H = R/sqrt({m})")
        )
    detail.append(Term("refined", refined, "sum of ranges"))
    return CountReport("A", R, last_cap, refined, detail)


def count_case_B(UD_B, mult: Multipliers = Multipliers()) -> CountReport:
    UD = ival(UD_B)
    R = (UD / 16) ** Fraction(1, 3)
    doubles = dH_sum_bound(R, R) / 2
    total = mult.b_extend * doubles
    detail = [
        Term("R", R, "d > 16 r^3"),
        Term("doubles", doubles, "(1/2) * closed-form d_H sum at N = H = R"),
        Term("total", total, f"{mult.b_extend} extensions per quadruple"),
    ]
    return CountReport("B", R, None, total, detail)


def case_C_branches(UD_C, eta, mult: Multipliers = Multipliers()) -> tuple[Interval, Interval, int]:
    UD, eta = ival(UD_C), ival(eta)
    N3a = (UD / (4 * eta)) ** Fraction(2, 5)
    a1, a2, a3 = mult.c_triples
    branch_a = N3a / 6 * (N3a.log() + 2) ** 3 * (a1 * a2 * a3)
    cap = omega_cap((UD / 4) ** Fraction(2, 5))
    N3b = (1 + (eta**3 * UD**2 / 16) ** Fraction(1, 5)).sqrt()
    b1, b2, b3 = mult.c_small_a
    branch_b = b1 * Interval(2) ** cap * (b2 * b3) * N3b * dH_coefficient(eta)
    return branch_a, branch_b, cap


def optimize_eta(
    UD_C,
    lo=Fraction(10**5),
    hi=Fraction(10**15),
    iterations: int = 40,
    mult: Multipliers = Multipliers(),
) -> Fraction:
    """Golden-section search on log(eta) for the smallest max of the two branches."""

    def f(le: float) -> float:
        a, b, _ = case_C_branches(UD_C, Fraction(math.exp(le)), mult)
        return max(float(a.hi), float(b.hi))

    invphi = (math.sqrt(5) - 1) / 2
    x0, x3 = math.log(lo), math.log(hi)
    x1 = x3 - invphi * (x3 - x0)
    x2 = x0 + invphi * (x3 - x0)
    f1, f2 = f(x1), f(x2)
    for _ in range(iterations):
        if f1 <= f2:  # ties move toward smaller eta
            x3, x2, f2 = x2, x1, f1
            x1 = x3 - invphi * (x3 - x0)
            f1 = f(x1)
        else:
            x0, x1, f1 = x1, x2, f2
            x2 = x0 + invphi * (x3 - x0)
            f2 = f(x2)
    best = x1 if f1 <= f2 else x2
    return Fraction(math.exp(best))


def count_case_C(UD_C, eta=None, mult: Multipliers = Multipliers()) -> CountReport:
    if eta is None:
        eta = optimize_eta(UD_C, mult=mult)
    eta = Fraction(eta)
    a, b, cap = case_C_branches(UD_C, eta, mult)
    UD = ival(UD_C)
    total = Interval(max(a.lo, b.lo), max(a.hi, b.hi))
    detail = [
        Term("eta", Interval(eta), "split a > eta / a <= eta"),
        Term("b_max", (UD / 4) ** Fraction(2, 5), "b < (d/4)^(2/5)"),
        Term("branch_a", a, "(N/6)(log N + 2)^3 * %d*%d*%d, N = (d/(4 eta))^(2/5)" % mult.c_triples),
        Term("branch_b", b, f"{mult.c_small_a[0]}*2^{cap}*{mult.c_small_a[1]}*{mult.c_small_a[2]} * N * d_H coefficient at H = eta"),
        Term("total", total, "max of the two branches"),
    ]
    return CountReport("C", Interval(eta), cap, total, detail)


def count_case_D(UD_D, mult: Multipliers = Multipliers()) -> CountReport:
    UD = ival(UD_D)
    R = (4 * UD / 9) ** Fraction(1, 3)
    E_b, _ = EF_bounds(R)
    doubles = mult.d_doubles * E_b
    total = mult.d_extend * doubles
    detail = [
        Term("R", R, "b < (4d/9)^(1/3)"),
        Term("doubles", doubles, f"{mult.d_doubles} * closed-form E bound at R"),
        Term("total", total, f"{mult.d_extend} extensions (reconstructed multiplier)"),
    ]
    return CountReport("D", R, None, total, detail)


@dataclass
class TotalReport:
    cases: dict
    total: Interval


def total_count(reports: dict) -> TotalReport:
    missing = [c for c in "ABCD" if c not in reports or reports[c] is None]
    if missing:
        raise IncompleteReportError(f"unresolved cases: {missing}")
    total = sum((reports[c].subtotal for c in "ABCD"), Interval(0))
    return TotalReport(dict(reports), total)
