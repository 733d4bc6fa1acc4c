"""Linear forms in logarithms: the j bound and the iterated upper bound on d.

A lower bound on m (from the alpha solver) is played against an upper bound
on j = 2m coming from a Baker-type estimate.  Whenever the two contradict
above some C, C is a new upper bound on d; feeding it back as C1 gives the
next iterate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from mpmath import mpf

from .alpha import m_lower_coeff, max_alpha
from .interval import LN10, Interval, ival, pow10, to_fraction
from .params import CaseParams, RunConfig

# constant of the j inequality after absorbing the 2 log(alpha_1) factor
J_CONSTANT = Interval("1.50131e11")
BASE_CONSTANT = Interval("1.5013e11")

J_RELATIVE_TOL = mpf("1e-6")
J_CEILING = mpf("1e60")
LOG10_GRID = 10**9  # iterates are rounded up to this many decimals


class CertificationError(RuntimeError):
    """A side condition or bound could not be certified."""


class DivergenceError(RuntimeError):
    """An iteration failed to contract or a crossing was not found."""


def aleksentsev_constant(n: int, d: int) -> Interval:
    """5.3 n^(-n+1/2) (n+1)^(n+1) (n+8)^2 (n+5) 31.44^n d^2 log(3nd)."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    N = Interval(n)
    return (
        Interval("5.3")
        * N ** (Fraction(1, 2) - n)
        * Interval(n + 1) ** (n + 1)
        * Interval((n + 8) ** 2 * (n + 5))
        * Interval("31.44") ** n
        * d**2
        * Interval(3 * n * d).log()
    )


@dataclass(frozen=True)
class GVector:
    tag: str
    g1: Interval
    g2: Interval
    g3: Interval
    g4: Interval
    g5: Interval
    g6: Interval
    e_is_C0: bool
    f_is_C0: bool
    side_conditions: dict

    def all_certified(self) -> bool:
        return all(self.side_conditions.values())


def side_condition_con4(p: CaseParams) -> Interval:
    """``rho B0^(1-tau) (rho^(1/2)-1)^(2 tau) - 2^(2 tau)``; must be positive."""
    t = Interval(p.tau)
    return p.rho * Interval(p.B0) ** (1 - t) * (p.rho.sqrt() - 1) ** (2 * t) - Interval(
        2
    ) ** (2 * t)


def g_values(
    p: CaseParams,
    C0,
    C1,
    g6_variant: str = "displayed",
    check: bool = True,
) -> GVector:
    """The six height coefficients at (C0, C1) with side-condition flags.

    ``g6_variant="derived"`` replaces the ``log(1 - 4/C1)`` term by
    ``log(1 - rho A0/C1)`` as in the preceding derivation.
    """
    C0, C1 = ival(C0), ival(C1)
    if not C0.lt(C1):
        raise CertificationError(f"{p.tag}: need C0 < C1")
    t = Interval(p.tau)
    L1 = C1.log()
    log4 = Interval(4).log()
    e = C0 if p.e_is_C0() else C1
    f = C0 if p.f_is_C0() else C1
    g1 = 1 + t + (log4 - (p.beta * p.rho).log()) / L1
    g2 = 1 + (log4 + Interval(p.A0).log()) / L1
    g3 = 1 + t + (log4 + (1 / p.beta + e ** (-1 - t)).log()) / e.log()
    g4 = 1 + (log4 + Interval(p.B0).log()) / L1
    g5 = 2 + 2 * t - 2 * p.beta.log() / f.log()
    if g6_variant == "displayed":
        tail = (1 - 4 / C1).log()
    elif g6_variant == "derived":
        tail = (1 - p.rho * p.A0 / C1).log()
    else:
        raise ValueError(f"unknown g6 variant {g6_variant!r}")
    g6 = 1 - t + ((p.beta * p.rho**2 / 4).log() + 2 * (1 - p.A0 / C1).log() - tail) / L1
    side = {
        "beta*rho>4": (p.beta * p.rho).gt(4),
        "con4": side_condition_con4(p).gt(0),
        "g2<g4": g2.lt(g4),
        "g2>g6": g2.gt(g6),
        "g>0": all(g.gt(0) for g in (g1, g2, g3, g4, g5, g6)),
    }
    gv = GVector(p.tag, g1, g2, g3, g4, g5, g6, e is C0, f is C0, side)
    if check:
        failed = [k for k, ok in side.items() if not ok]
        if failed:
            raise CertificationError(f"{p.tag}: side condition(s) not certified: {failed}")
    return gv


def _j_excess(j: Interval, X: Interval, Y: Interval) -> Interval:
    # X log(2j/Y) - j ; negative means j violates the inequality
    return X * (2 * j / Y).log() - j


def solve_j_bound(
    p: CaseParams,
    C0,
    C1,
    C=None,
    g6_variant: str = "displayed",
    gv: Optional[GVector] = None,
) -> Interval:
    """Enclosure ``[lo, hi]`` of the largest j allowed by the j inequality.

    Every admissible j is certified to be below ``hi``.  ``C`` defaults to
    ``C1``.  Bisection is on log j to relative width 1e-6.
    """
    C0, C1 = ival(C0), ival(C1)
    C = C1 if C is None else ival(C)
    gv = gv or g_values(p, C0, C1, g6_variant)
    X = J_CONSTANT * gv.g3 * gv.g5 * C.log() ** 2
    Y = gv.g6 * C0.log()
    # h(j) = X log(2j/Y) - j is concave with maximum at j = X
    lo = X.hi
    if not _j_excess(Interval(lo), X, Y).gt(0):
        raise DivergenceError(f"{p.tag}: j inequality has no solutions")
    hi = lo * 2
    while not _j_excess(Interval(hi), X, Y).lt(0):
        lo, hi = hi, hi * 2
        if hi > J_CEILING:
            raise DivergenceError(f"{p.tag}: no crossing below 1e60")
    while hi / lo > 1 + J_RELATIVE_TOL:
        mid = (lo * hi) ** 0.5
        if _j_excess(Interval(mid), X, Y).lt(0):
            hi = mid
        else:
            lo = mid
    return Interval(lo, hi)


def _ceil_grid(x: mpf) -> Fraction:
    return Fraction(math.ceil(to_fraction(x) * LOG10_GRID), LOG10_GRID)


@dataclass
class RowStep:
    tag: str
    log10_C0: Fraction
    j_hi: Interval
    log10_bound: Fraction


@dataclass
class DBoundResult:
    case: str
    log10_d_bound: Fraction
    iterations: list = field(default_factory=list)  # (phase, C1_in, C1_out, binding row)
    converged: bool = False
    coefficient_mode: str = "published"
    coefficients: dict = field(default_factory=dict)
    c0_offset: Fraction = Fraction("0.01")

    @property
    def bound(self) -> Interval:
        return pow10(self.log10_d_bound)

    def trace(self) -> list[tuple[float, float]]:
        return [(float(a), float(b)) for _, a, b, _ in self.iterations]


def d_step(
    rows: list[CaseParams],
    coeffs: dict[str, Interval],
    log10_C1: Fraction,
    log10_C0: Optional[Fraction] = None,
    g6_variant: str = "displayed",
) -> tuple[Fraction, list[RowStep]]:
    """One contraction step shared by all subcase rows of a case.

    ``log10_C0=None`` uses each row's own C0; otherwise C0 is that value and
    the row bound is at least C0 (d below C0 is not excluded by the step).
    """
    C1 = pow10(log10_C1)
    steps = []
    for p in rows:
        if log10_C0 is None:
            C0 = p.C0
            l0 = None
        else:
            C0 = pow10(log10_C0)
            l0 = log10_C0
        coeff = coeffs[p.tag]
        exponent = (1 - p.tau) / 2
        j = solve_j_bound(p, C0, C1, g6_variant=g6_variant)
        # coeff C^exponent < m <= j/2  =>  log10 C < log10(j/(2 coeff))/exponent
        lc = (Interval(j.hi) / (2 * coeff)).log10() / Interval(exponent)
        bound = _ceil_grid(lc.hi)
        if l0 is not None:
            bound = max(bound, l0)
        steps.append(RowStep(p.tag, l0 if l0 is not None else _ceil_grid(p.C0.log10().lo), j, bound))
    return max(s.log10_bound for s in steps), steps


def case_row_coefficients(
    config: RunConfig, case: str, mode: str = "published"
) -> dict[str, Interval]:
    """m lower-bound coefficient applied to each row of ``case``.

    ``published``: the published per-case constant for every row.
    ``per-row``: each row's own alpha * beta^(1/2).
    """
    rows = config.rows_for(case)
    if mode == "published":
        c = config.coefficients[case]
        return {r.tag: c for r in rows}
    if mode == "per-row":
        return {r.tag: m_lower_coeff(r)[0] for r in rows}
    raise ValueError(f"unknown coefficient mode {mode!r}")


def iterate_rows(
    case: str,
    rows: list[CaseParams],
    coeffs: dict[str, Interval],
    seed_log10_C1: Fraction,
    c0_offset: Fraction = Fraction("0.01"),
    tol: Fraction = Fraction(1, 1000),
    max_iter: int = 200,
    g6_variant: str = "displayed",
    mode: str = "published",
) -> DBoundResult:
    """Two phases: contract with the rows' own C0, then with C0 just below C1."""
    res = DBoundResult(case, Fraction(seed_log10_C1), coefficient_mode=mode,
                       coefficients=coeffs, c0_offset=c0_offset)
    current = Fraction(seed_log10_C1)
    for phase in (1, 2):
        for _ in range(max_iter):
            l0 = None if phase == 1 else current - c0_offset
            new, steps = d_step(rows, coeffs, current, l0, g6_variant)
            binding = max(steps, key=lambda s: s.log10_bound).tag
            if new > current:
                raise DivergenceError(
                    f"case {case}: step from {float(current)} went up to {float(new)}"
                )
            res.iterations.append((phase, current, new, binding))
            done = current - new < tol
            current = new
            if done:
                break
        else:
            raise DivergenceError(f"case {case}: no convergence in phase {phase}")
    res.log10_d_bound = current
    res.converged = True
    if len(res.iterations) and res.iterations[0][2] >= res.iterations[0][1]:
        raise DivergenceError(f"case {case}: no contraction at the seed")
    return res


def iterate_d_bound(
    config: RunConfig,
    case: str,
    seed_log10_C1: Optional[Fraction] = None,
    mode: str = "published",
    c0_offset: Optional[Fraction] = None,
    g6_variant: str = "displayed",
) -> DBoundResult:
    rows = config.rows_for(case)
    if not rows:
        raise ValueError(f"no rows for case {case}")
    coeffs = case_row_coefficients(config, case, mode)
    seed = config.seed_log10_C1 if seed_log10_C1 is None else Fraction(seed_log10_C1)
    offset = config.c0_offset if c0_offset is None else Fraction(c0_offset)
    return iterate_rows(case, rows, coeffs, seed, offset, g6_variant=g6_variant, mode=mode)


def trial_case_a_row(A0_trial: int) -> CaseParams:
    """Case (A) row for a hypothetical lower bound ``a >= A0_trial``.

    b > 2 a^(3/2) gives B0 and rho = 2 A0^(1/2); d > (16a^2+4a) b^2 gives
    beta and C0.  alpha is the solver's maximum.
    """
    A = A0_trial
    B0 = math.isqrt(4 * A**3) + 1
    beta2 = 16 * A * A + 4 * A
    row = CaseParams(
        tag=f"A*{A}",
        A0=A,
        B0=B0,
        C0=Interval(beta2 * B0 * B0),
        rho=2 * Interval(A).sqrt(),
        beta=Interval(beta2).sqrt(),
        tau=Fraction(1, 2),
        alpha=Interval(1),
        source={"note": "derived trial row"},
    )
    row = row.with_(alpha=max_alpha(row).alpha_max)
    row.validate()
    return row


@dataclass
class SmallestEntryResult:
    A0_trial: int
    d_result: DBoundResult
    a_bound: Interval
    closes: bool  # a_bound < A0_trial, the desired contradiction


def case_a_max_a(
    A0_trial: int = 74_000_000,
    seed_log10_C1: Fraction = Fraction("72.188"),
    c0_offset: Fraction = Fraction("0.01"),
) -> SmallestEntryResult:
    """Show case (A) forces a < A0_trial, via d > (16 a^2)^3."""
    row = trial_case_a_row(A0_trial)
    coeff = m_lower_coeff(row)[0]
    res = iterate_rows("A", [row], {row.tag: coeff}, seed_log10_C1, c0_offset, mode="trial")
    a_bound = pow10(Interval(res.log10_d_bound) / 6) / 4
    return SmallestEntryResult(A0_trial, res, a_bound, a_bound.lt(A0_trial))


def absorption_margin(p: CaseParams, C0, C1, A=None) -> tuple[Interval, Interval]:
    """Check that raising 1.5013e11 to 1.50131e11 absorbs the extra terms.

    Combining the lower bound on -log(Lambda) with Lambda < (8/3) A C
    alpha_1^(-2j) leaves j below the base bound plus
    log(8AC/3)/(2 log alpha_1).  Returns (slack, extra) with the
    requirement slack >= extra.
    """
    C0, C1 = ival(C0), ival(C1)
    A = Interval(p.A0 if A is None else A)
    gv = g_values(p, C0, C1)
    j = solve_j_bound(p, C0, C1, gv=gv)
    X = gv.g3 * gv.g5 * C1.log() ** 2 * (2 * Interval(j.hi) / (gv.g6 * C0.log())).log()
    slack = (J_CONSTANT - BASE_CONSTANT) * X
    # 2 log alpha_1 > log(4AC) for alpha_1 = sqrt(AC+1) + sqrt(AC)
    extra = (8 * A * C1 / 3).log() / (4 * A * C0).log()
    return slack, extra
