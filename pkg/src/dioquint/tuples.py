"""Desk-scale ground truth for Diophantine tuples.

A Diophantine m-tuple is a set of positive integers in which the product of
any two elements is one less than a square.  Everything here is exact and
exhaustive at small scale; it backs the discard claims that can be checked
directly.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections import defaultdict
from typing import Iterable, Sequence

from .arith import DomainError, factor_with_spf, is_perfect_square, spf_sieve

PAIR_LIMIT = 10**6
QUADRUPLE_LIMIT = 10**5


class TripleType(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    NONE = "None"


def _check_ascending(t: Sequence[int]) -> None:
    if len(t) < 2:
        raise DomainError("a tuple needs at least two elements")
    if any(x <= 0 for x in t):
        raise DomainError("tuple elements must be positive")
    if any(x >= y for x, y in zip(t, t[1:])):
        raise DomainError(f"tuple elements must be strictly increasing: {tuple(t)}")


def pair_root(x: int, y: int) -> int:
    """``sqrt(xy + 1)``; raises unless ``xy + 1`` is a square."""
    n = x * y + 1
    r = math.isqrt(n)
    if r * r != n:
        raise DomainError(f"{x}*{y}+1 = {n} is not a perfect square")
    return r


def is_diophantine(t: Sequence[int]) -> bool:
    _check_ascending(t)
    return all(is_perfect_square(x * y + 1) for x, y in itertools.combinations(t, 2))


def regular_third(a: int, b: int) -> int:
    """``a + b + 2r`` with ``r = sqrt(ab+1)``."""
    return a + b + 2 * pair_root(a, b)


def regular_fourth(a: int, b: int, c: int) -> int:
    """The regular extension ``d+ = a+b+c+2abc+2rst`` of a triple."""
    if not is_diophantine((a, b, c)):
        raise DomainError(f"{{{a},{b},{c}}} is not a Diophantine triple")
    r, s, t = pair_root(a, b), pair_root(a, c), pair_root(b, c)
    d = a + b + c + 2 * a * b * c + 2 * r * s * t
    # self-check: the extension must itself be a quadruple
    assert is_diophantine((a, b, c, d)), (a, b, c, d)
    return d


def classify_triple(a: int, b: int, c: int) -> TripleType:
    """Type (A)-(D) of a triple by the relative sizes of its entries.

    ``c < b^(3/2)`` is decided exactly as ``c^2 < b^3``.
    """
    if not is_diophantine((a, b, c)):
        raise DomainError(f"{{{a},{b},{c}}} is not a Diophantine triple")
    regular = c == a + b + 2 * pair_root(a, b)
    if 4 * a < b:
        if 4 * a * b + b + a < c and c * c < b**3:
            return TripleType.A
        if regular:
            return TripleType.B
        if c * c > b**3:
            return TripleType.C
    elif b < 4 * a and regular:
        return TripleType.D
    return TripleType.NONE


def _pairs(limit: int) -> list[tuple[int, int]]:
    # ab = r^2 - 1 = (r-1)(r+1) with a < b <= limit forces r < limit
    spf = spf_sieve(limit + 2)
    out = []
    for r in range(2, limit + 1):
        f = factor_with_spf(r - 1, spf)
        for p, e in factor_with_spf(r + 1, spf).items():
            f[p] = f.get(p, 0) + e
        n = r * r - 1
        divs = [1]
        for p, e in f.items():
            divs = [d * p**k for d in divs for k in range(e + 1)]
        for a in divs:
            b = n // a
            if a < b <= limit:
                out.append((a, b))
    out.sort()
    return out


def search_tuples(limit: int, size: int) -> list[tuple[int, ...]]:
    """Every Diophantine tuple of ``size`` elements with maximum ``<= limit``.

    Output is sorted lexicographically.  Triples and quadruples are grown
    from the pair graph by intersecting neighbour sets.
    """
    if size not in (2, 3, 4):
        raise DomainError("size must be 2, 3 or 4")
    guard = QUADRUPLE_LIMIT if size == 4 else PAIR_LIMIT
    if limit > guard:
        raise DomainError(
            f"limit {limit} exceeds the {guard} guard for size {size}: "
            "the exhaustive scan would not finish in reasonable time"
        )
    if limit < 2:
        return []
    pairs = _pairs(limit)
    if size == 2:
        return pairs
    nbr: dict[int, set[int]] = defaultdict(set)
    for a, b in pairs:
        nbr[a].add(b)
    triples = []
    for a, b in pairs:
        for c in nbr[a] & nbr[b]:
            triples.append((a, b, c))
    triples.sort()
    if size == 3:
        return triples
    quads = []
    for a, b, c in triples:
        for d in nbr[a] & nbr[b] & nbr[c]:
            quads.append((a, b, c, d))
    quads.sort()
    return quads


def check_pair_nonextension(b: int, a_max: int) -> list[int]:
    """All ``a <= a_max`` for which ``ab + 1`` is a perfect square."""
    if b < 2:
        raise DomainError("b must be at least 2")
    return [a for a in range(1, a_max + 1) if is_perfect_square(a * b + 1)]


def is_regular_quadruple(q: Iterable[int]) -> bool:
    a, b, c, d = sorted(q)
    return d == regular_fourth(a, b, c)
