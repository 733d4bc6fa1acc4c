"""Largest admissible alpha per parameter row, and the m lower-bound coefficients.

For a row (A0, B0, C0, rho) the admissible alpha satisfy two quadratic
inequalities

    alpha^2 + (1 + 1/(2 B0 C0)) alpha <= 4
    3 alpha^2 + (4 B0 (lam + rho^-1/2) + 2 (lam + rho^1/2)/C0) alpha <= 4 B0

with lam = sqrt((A0+1)/(rho A0+1)).  Both are solved in closed form with
interval coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import DomainError
from .interval import Interval, imin, ival, to_fraction
from .params import CASES, CaseParams, RunConfig

RESOLUTION = Fraction(1, 10**6)
VIOLATION_STEP = Fraction(1, 10**4)


class InfeasibleError(ValueError):
    """No positive alpha satisfies the constraints."""


@dataclass(frozen=True)
class AlphaSolution:
    tag: str
    alpha_max: Interval  # truncated, exactly representable
    root1: Interval
    root2: Interval
    lam: Interval
    binding: str  # "first", "second" or "tie"
    limit: Interval

    def summary(self) -> dict:
        return {
            "tag": self.tag,
            "lambda": self.lam,
            "alpha_max": self.alpha_max,
            "binding": self.binding,
            "limit": self.limit,
        }


def compute_lambda(A0: int, rho) -> Interval:
    rho = ival(rho)
    if A0 < 1:
        raise DomainError("A0 must be >= 1")
    if not rho.gt(1):
        raise DomainError("rho must exceed 1")
    return ((A0 + 1) / (rho * A0 + 1)).sqrt()


def _coefficients(p: CaseParams, lam: Interval) -> tuple[Interval, Interval]:
    b1 = 1 + 1 / (2 * p.B0 * p.C0)
    b2 = 4 * p.B0 * (lam + 1 / p.rho.sqrt()) + 2 * (lam + p.rho.sqrt()) / p.C0
    return b1, b2


def constraint_margins(p: CaseParams, alpha) -> tuple[Interval, Interval]:
    """``RHS - LHS`` of both inequalities at ``alpha`` (>= 0 means satisfied)."""
    a = ival(alpha)
    b1, b2 = _coefficients(p, compute_lambda(p.A0, p.rho))
    m1 = 4 - (a * a + b1 * a)
    m2 = 4 * p.B0 - (3 * a * a + b2 * a)
    return m1, m2


def is_admissible(p: CaseParams, alpha) -> bool:
    """Certified: both inequalities hold at ``alpha``."""
    m1, m2 = constraint_margins(p, alpha)
    return m1.ge(0) and m2.ge(0)


def is_violated(p: CaseParams, alpha) -> bool:
    """Certified: at least one inequality fails at ``alpha``."""
    m1, m2 = constraint_margins(p, alpha)
    return m1.lt(0) or m2.lt(0)


def analytic_limit(p: CaseParams) -> Interval:
    """Supremum of admissible alpha as A0, B0, C0 grow without bound.

    The first inequality tends to alpha^2 + alpha <= 4, the second to
    alpha <= sqrt(rho)/2.
    """
    r1 = (Interval(17).sqrt() - 1) / 2
    return imin(r1, p.rho.sqrt() / 2)


def max_alpha(p: CaseParams) -> AlphaSolution:
    lam = compute_lambda(p.A0, p.rho)
    b1, b2 = _coefficients(p, lam)
    # positive roots, rationalised to avoid cancellation
    r1 = 8 / (b1 + (b1 * b1 + 16).sqrt())
    r2 = 8 * p.B0 / (b2 + (b2 * b2 + 48 * p.B0).sqrt())
    if not (r1.gt(0) and r2.gt(0)):
        raise InfeasibleError(f"{p.tag}: no positive alpha")
    root = imin(r1, r2)
    if r1.lt(r2):
        binding = "first"
    elif r2.lt(r1):
        binding = "second"
    else:
        binding = "tie"
    lo = to_fraction(root.lo)
    truncated = Fraction(math.floor(lo / RESOLUTION)) * RESOLUTION
    if truncated <= 0:
        raise InfeasibleError(f"{p.tag}: alpha_max below resolution")
    return AlphaSolution(
        tag=p.tag,
        alpha_max=Interval(truncated),
        root1=r1,
        root2=r2,
        lam=lam,
        binding=binding,
        limit=analytic_limit(p),
    )


def m_lower_coeff(p: CaseParams, alpha=None) -> tuple[Interval, Fraction]:
    """``(alpha * beta^(1/2), (1 - tau)/2)`` so that m > coeff * d^exponent."""
    a = p.alpha if alpha is None else ival(alpha)
    return a * p.beta.sqrt(), (1 - p.tau) / 2


def truncate(x: Interval, places: int) -> Fraction:
    """Largest ``places``-decimal number not exceeding the enclosure."""
    scale = 10**places
    return Fraction(math.floor(to_fraction(x.lo) * scale), scale)


@dataclass(frozen=True)
class CaseCoefficient:
    case: str
    exponent: Fraction
    per_row: dict[str, Interval]
    weakest_row: str
    weakest: Fraction  # 4-decimal truncation of the weakest row
    published: Optional[Interval]
    published_row: Optional[str]  # the row whose truncation equals the published value
    flagged: bool  # published constant is not the weakest row

    def note(self) -> str:
        if not self.flagged:
            return ""
        w = self.per_row[self.weakest_row]
        return (
            f"case {self.case}: published coefficient {self.published} matches row "
            f"{self.published_row}, but row {self.weakest_row} gives only "
            f"{w.format(6)}"
        )


def case_coefficients(config: RunConfig, case: str) -> CaseCoefficient:
    rows = config.rows_for(case)
    if not rows:
        raise DomainError(f"no rows for case {case}")
    per_row = {}
    exps = set()
    for r in rows:
        coeff, e = m_lower_coeff(r)
        per_row[r.tag] = coeff
        exps.add(e)
    if len(exps) != 1:
        raise DomainError(f"rows of case {case} disagree on the exponent")
    weakest_row = min(per_row, key=lambda t: per_row[t].lo)
    weakest = truncate(per_row[weakest_row], 4)
    published = config.coefficients.get(case)
    published_row = None
    if published is not None:
        for tag, c in per_row.items():
            if Interval(truncate(c, 4)).contains(published):
                published_row = tag
                break
    flagged = published is not None and not Interval(weakest).contains(published)
    return CaseCoefficient(
        case=case,
        exponent=exps.pop(),
        per_row=per_row,
        weakest_row=weakest_row,
        weakest=weakest,
        published=published,
        published_row=published_row,
        flagged=flagged,
    )


def all_case_coefficients(config: RunConfig) -> dict[str, CaseCoefficient]:
    return {c: case_coefficients(config, c) for c in CASES if config.rows_for(c)}
