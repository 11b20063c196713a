"""Exact arithmetic in the quadratic field Q(sqrt 3)."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["Scalar", "SQRT3", "as_scalar", "parse_rational"]

Number = Union[int, Fraction, "Scalar"]


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction; decimals are rejected."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = str(text).strip()
    if any(c in text for c in ".eE"):
        raise ValueError(f"rational must be an integer or p/q string, got {text!r}")
    return Fraction(text)


class Scalar:
    """The number ``rat + irr * sqrt(3)`` with rational parts.

    Instances are immutable and hashable; ``Scalar(2) == 2`` holds.
    """

    __slots__ = ("rat", "irr")

    def __init__(self, rat: int | Fraction = 0, irr: int | Fraction = 0) -> None:
        object.__setattr__(self, "rat", rat if type(rat) is Fraction else Fraction(rat))
        object.__setattr__(self, "irr", irr if type(irr) is Fraction else Fraction(irr))

    @classmethod
    def _raw(cls, rat: Fraction, irr: Fraction) -> Scalar:
        obj = object.__new__(cls)
        object.__setattr__(obj, "rat", rat)
        object.__setattr__(obj, "irr", irr)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, (self.rat, self.irr))

    # -- predicates ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.rat and not self.irr

    def is_rational(self) -> bool:
        return not self.irr

    def __bool__(self) -> bool:
        return bool(self.rat) or bool(self.irr)

    def sign(self) -> int:
        """Exact sign of the real number represented."""
        a, b = self.rat, self.irr
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with 3 b^2
        return sa if a * a > 3 * b * b else sb

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other: Number) -> Scalar:
        if type(other) is Scalar:
            return Scalar._raw(self.rat + other.rat, self.irr + other.irr)
        if isinstance(other, Rational):
            return Scalar._raw(self.rat + other, self.irr)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar._raw(-self.rat, -self.irr)

    def __pos__(self) -> Scalar:
        return self

    def __sub__(self, other: Number) -> Scalar:
        if type(other) is Scalar:
            return Scalar._raw(self.rat - other.rat, self.irr - other.irr)
        if isinstance(other, Rational):
            return Scalar._raw(self.rat - other, self.irr)
        return NotImplemented

    def __rsub__(self, other: Number) -> Scalar:
        return (-self).__add__(other)

    def __mul__(self, other: Number) -> Scalar:
        if type(other) is Scalar:
            a, b, c, d = self.rat, self.irr, other.rat, other.irr
            if not b and not d:
                return Scalar._raw(a * c, b)
            return Scalar._raw(a * c + 3 * b * d, a * d + b * c)
        if isinstance(other, Rational):
            return Scalar._raw(self.rat * other, self.irr * other)
        return NotImplemented

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``rat^2 - 3 irr^2``; zero only for the zero element."""
        return self.rat * self.rat - 3 * self.irr * self.irr

    def conjugate(self) -> Scalar:
        return Scalar._raw(self.rat, -self.irr)

    def inverse(self) -> Scalar:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(sqrt3)")
        return Scalar._raw(self.rat / n, -self.irr / n)

    def __truediv__(self, other: Number) -> Scalar:
        if type(other) is Scalar:
            if not other.irr:
                return self / other.rat
            return self * other.inverse()
        if isinstance(other, Rational):
            if not other:
                raise ZeroDivisionError("division by zero")
            return Scalar._raw(self.rat / other, self.irr / other)
        return NotImplemented

    def __rtruediv__(self, other: Number) -> Scalar:
        return as_scalar(other) / self

    def __pow__(self, n: int) -> Scalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ----------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if type(other) is Scalar:
            return self.rat == other.rat and self.irr == other.irr
        if isinstance(other, Rational):
            return not self.irr and self.rat == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.irr:
            return hash(self.rat)
        return hash((self.rat, self.irr))

    def __lt__(self, other: Number) -> bool:
        return (self - as_scalar(other)).sign() < 0

    def __le__(self, other: Number) -> bool:
        return (self - as_scalar(other)).sign() <= 0

    def __gt__(self, other: Number) -> bool:
        return (self - as_scalar(other)).sign() > 0

    def __ge__(self, other: Number) -> bool:
        return (self - as_scalar(other)).sign() >= 0

    # -- conversion ----------------------------------------------------
    def __float__(self) -> float:
        return float(self.rat) + float(self.irr) * math.sqrt(3.0)

    def __repr__(self) -> str:
        return f"Scalar({self.rat}, {self.irr})"

    def __str__(self) -> str:
        if not self.irr:
            return str(self.rat)
        if not self.rat:
            return f"{self.irr}*sqrt3"
        sign = "-" if self.irr < 0 else "+"
        return f"({self.rat} {sign} {abs(self.irr)}*sqrt3)"


ZERO = Scalar(0)
ONE = Scalar(1)
SQRT3 = Scalar(0, 1)


def as_scalar(x: Number) -> Scalar:
    if type(x) is Scalar:
        return x
    if isinstance(x, Rational):
        return Scalar(Fraction(x))
    raise TypeError(f"cannot convert {type(x).__name__} to Scalar")
