"""Square roots of rationals, kept exact.

:class:`Sqrt` stores ``x`` for the value ``sqrt(x)`` and compares exactly
against Fractions.  :class:`QuadNum` is an element ``r + s*sqrt(D)`` of a
fixed real quadratic field, enough to run Cremona reduction on a ball
whose capacity is a square root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


def rational_sqrt(x: Fraction):
    """``sqrt(x)`` as a Fraction when it is rational, else None."""
    x = Fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_bounds(x: Fraction, denominator: int = 10**12) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(x) <= hi`` with ``hi - lo <= 1/denominator``."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    D = denominator
    # floor(sqrt(x) * D) computed exactly from floor(x * D^2)
    lo_int = math.isqrt(math.floor(x * D * D))
    lo = Fraction(lo_int, D)
    hi = lo if lo * lo == x else Fraction(lo_int + 1, D)
    return lo, hi


@total_ordering
@dataclass(frozen=True)
class Sqrt:
    """The nonnegative real ``sqrt(squared)``."""

    squared: Fraction

    def __post_init__(self):
        object.__setattr__(self, "squared", Fraction(self.squared))
        if self.squared < 0:
            raise ValueError("negative radicand")

    def exact(self):
        """The value as a Fraction if rational, else self."""
        r = rational_sqrt(self.squared)
        return self if r is None else r

    def __float__(self):
        return math.sqrt(self.squared)

    def _sq(self, other):
        if isinstance(other, Sqrt):
            return other.squared, True
        other = Fraction(other)
        return (other * other if other >= 0 else None), other >= 0

    def __eq__(self, other):
        if isinstance(other, (Sqrt, int, Fraction)):
            sq, nonneg = self._sq(other)
            return nonneg and sq == self.squared
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, (Sqrt, int, Fraction)):
            sq, nonneg = self._sq(other)
            return nonneg and self.squared < sq
        return NotImplemented

    def __hash__(self):
        r = rational_sqrt(self.squared)
        return hash(r) if r is not None else hash(("sqrt", self.squared))

    def __mul__(self, c):
        c = Fraction(c)
        if c < 0:
            raise ValueError("Sqrt only scales by nonnegative rationals")
        return Sqrt(self.squared * c * c)

    __rmul__ = __mul__

    def __str__(self):
        r = rational_sqrt(self.squared)
        return str(r) if r is not None else f"sqrt({self.squared})"


@dataclass(frozen=True)
class QuadNum:
    """``r + s*sqrt(D)`` with rational r, s and a fixed squarefree-ish D > 0."""

    r: Fraction
    s: Fraction = Fraction(0)
    D: Fraction = Fraction(0)

    @classmethod
    def of(cls, x, D=Fraction(0)):
        if isinstance(x, QuadNum):
            return x
        if isinstance(x, Sqrt):
            return cls(Fraction(0), Fraction(1), x.squared)
        return cls(Fraction(x), Fraction(0), Fraction(D))

    def _lift(self, other):
        o = QuadNum.of(other, self.D)
        D = self.D if self.s != 0 else o.D
        if o.s != 0 and self.s != 0 and o.D != self.D:
            raise ValueError("mixed quadratic fields")
        return o, D

    def __add__(self, other):
        o, D = self._lift(other)
        return QuadNum(self.r + o.r, self.s + o.s, D)

    __radd__ = __add__

    def __neg__(self):
        return QuadNum(-self.r, -self.s, self.D)

    def __sub__(self, other):
        return self + (-QuadNum.of(other, self.D))

    def sign(self) -> int:
        r, s, D = self.r, self.s, self.D
        if s == 0 or D == 0:
            return (r > 0) - (r < 0)
        sr, ss = (r > 0) - (r < 0), (s > 0) - (s < 0)
        if sr == 0:
            return ss
        if sr == ss:
            return sr
        # opposite signs: compare r^2 with s^2 D
        c = r * r - s * s * D
        return sr if c > 0 else (ss if c < 0 else 0)

    def square(self):
        return QuadNum(self.r * self.r + self.s * self.s * self.D, 2 * self.r * self.s, self.D)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(self.r) + float(self.s) * math.sqrt(self.D)
