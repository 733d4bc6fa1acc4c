"""Outward-rounded real intervals.

Thin wrapper over :mod:`mpmath`'s interval context.  Every operation returns
an enclosure of the exact result; comparisons come in a *certified* flavour
that only answers True when the two enclosures are disjoint in the right
order.
"""

from __future__ import annotations

import contextlib
from decimal import Decimal
from fractions import Fraction
from numbers import Integral
from typing import Iterator, Union

from mpmath import iv, mp, mpf

DEFAULT_PRECISION = 128

iv.prec = DEFAULT_PRECISION

Number = Union[int, str, Fraction, Decimal, "Interval"]


@contextlib.contextmanager
def precision(bits: int) -> Iterator[None]:
    """Temporarily change the working precision (bits per endpoint)."""
    if bits < 64:
        raise ValueError("interval precision must be at least 64 bits")
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def _to_iv(x):
    if isinstance(x, Interval):
        return x._v
    if isinstance(x, bool):
        raise TypeError("bool is not a number here")
    if isinstance(x, Integral):
        return iv.mpf(int(x))
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / iv.mpf(x.denominator)
    if isinstance(x, Decimal):
        return iv.mpf(str(x))
    if isinstance(x, str):
        # exact decimal literal, converted outward
        return iv.mpf(x)
    if isinstance(x, float):
        # floats are exact binary rationals
        return iv.mpf(Fraction(x).numerator) / iv.mpf(Fraction(x).denominator)
    if isinstance(x, type(iv.mpf(0))):
        return x
    if isinstance(x, mpf):
        return iv.mpf(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Interval")


class Interval:
    """Closed interval ``[lo, hi]`` enclosing a real number."""

    __slots__ = ("_v",)

    def __init__(self, lo: Number, hi: Number | None = None):
        if hi is None:
            self._v = _to_iv(lo)
        else:
            a, b = _to_iv(lo), _to_iv(hi)
            if a.a > b.b:
                raise ValueError(f"empty interval: lo={a.a} > hi={b.b}")
            self._v = iv.mpf([a.a, b.b])

    @classmethod
    def _wrap(cls, v) -> "Interval":
        out = cls.__new__(cls)
        out._v = v
        return out

    # -- endpoints --------------------------------------------------------
    # endpoints are taken raw: mpf(...) would round them to the mp precision
    @property
    def lo(self) -> mpf:
        return mp.make_mpf(self._v._mpi_[0])

    @property
    def hi(self) -> mpf:
        return mp.make_mpf(self._v._mpi_[1])

    @property
    def mid(self) -> mpf:
        return mpf(self._v.mid)

    @property
    def width(self) -> mpf:
        return mpf(self._v.delta)

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return f"Interval({self.lo}, {self.hi})"

    def __str__(self) -> str:
        return self.format()

    def format(self, digits: int = 10) -> str:
        from mpmath import nstr

        if self._v.a == self._v.b:
            return nstr(self.lo, digits)
        return f"[{nstr(self.lo, digits)}, {nstr(self.hi, digits)}]"

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        return Interval._wrap(self._v + _to_iv(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Interval._wrap(self._v - _to_iv(other))

    def __rsub__(self, other):
        return Interval._wrap(_to_iv(other) - self._v)

    def __mul__(self, other):
        return Interval._wrap(self._v * _to_iv(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _to_iv(other)
        if o.a <= 0 <= o.b:
            raise ZeroDivisionError("divisor interval contains zero")
        return Interval._wrap(self._v / o)

    def __rtruediv__(self, other):
        return Interval(other) / self

    def __neg__(self):
        return Interval._wrap(-self._v)

    def __pos__(self):
        return self

    def __abs__(self):
        return Interval._wrap(abs(self._v))

    def __pow__(self, exponent):
        if isinstance(exponent, Integral) and not isinstance(exponent, bool):
            return Interval._wrap(self._v ** int(exponent))
        e = _to_iv(exponent)
        if e.a == e.b and e.a == int(e.a):
            return Interval._wrap(self._v ** int(e.a))
        if self._v.a <= 0:
            raise ValueError("real power of a non-positive interval")
        return Interval._wrap(iv.exp(e * iv.log(self._v)))

    def __rpow__(self, base):
        return Interval(base) ** self

    # -- elementary functions --------------------------------------------
    def log(self) -> "Interval":
        if self._v.a <= 0:
            raise ValueError("log of a non-positive interval")
        return Interval._wrap(iv.log(self._v))

    def log10(self) -> "Interval":
        return self.log() / LN10()

    def exp(self) -> "Interval":
        return Interval._wrap(iv.exp(self._v))

    def sqrt(self) -> "Interval":
        if self._v.a < 0:
            raise ValueError("sqrt of a negative interval")
        return Interval._wrap(iv.sqrt(self._v))

    def cbrt(self) -> "Interval":
        return self ** Fraction(1, 3)

    def hull(self, other) -> "Interval":
        o = _to_iv(other)
        return Interval(min(self.lo, o.a), max(self.hi, o.b))

    # -- certified comparisons -------------------------------------------
    def lt(self, other) -> bool:
        """True only if every point of ``self`` is below every point of ``other``."""
        return self._v.b < _to_iv(other).a

    def le(self, other) -> bool:
        return self._v.b <= _to_iv(other).a

    def gt(self, other) -> bool:
        return self._v.a > _to_iv(other).b

    def ge(self, other) -> bool:
        return self._v.a >= _to_iv(other).b

    def contains(self, x) -> bool:
        o = _to_iv(x)
        return self._v.a <= o.a and o.b <= self._v.b

    def overlaps(self, other) -> bool:
        o = _to_iv(other)
        return not (self._v.b < o.a or o.b < self._v.a)


def ival(x: Number) -> Interval:
    return x if isinstance(x, Interval) else Interval(x)


def PI() -> Interval:
    return Interval._wrap(iv.pi)


def LN10() -> Interval:
    return Interval._wrap(iv.log(iv.mpf(10)))


def pow10(exponent: Number) -> Interval:
    """Enclosure of ``10**exponent`` for a real (decimal-literal) exponent."""
    return Interval(10) ** ival(exponent)


def imin(a: Interval, b: Interval) -> Interval:
    return Interval(min(a.lo, b.lo), min(a.hi, b.hi))


def imax(a: Interval, b: Interval) -> Interval:
    return Interval(max(a.lo, b.lo), max(a.hi, b.hi))


def to_fraction(x) -> Fraction:
    """Exact rational value of an mpf (binary floating point) endpoint."""
    if not isinstance(x, mpf):
        x = mpf(x)  # already-built mpf values are used as-is, unrounded
    sign, man, exp, _ = x._mpf_
    if not man and exp:
        raise ValueError(f"{x} is not finite")
    q = Fraction(int(man) * 2**exp) if exp >= 0 else Fraction(int(man), 2**-exp)
    return -q if sign else q
