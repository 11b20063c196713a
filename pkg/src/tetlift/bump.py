"""Polynomial bump on the reference triangle and its exact moments.

The bump is ``b(y) = c_m * (y1 * y2 * (1 - y1 - y2))**m`` with ``c_m``
chosen so that ``b`` integrates to one.  On polynomial data the
convolution lift only ever sees the moments ``int b(y) y**alpha dy``.

A bump may also carry a monomial weight ``y**shift``; this realises the
modified kernels ``y_j * b(y)`` (not renormalised) used in the operator
recursions.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["BumpSpec", "simplex_monomial_integral", "moment", "moment_table"]


def simplex_monomial_integral(a: int, b: int, c: int) -> Fraction:
    """``int_T y1^a y2^b (1 - y1 - y2)^c dy = a! b! c! / (a + b + c + 2)!``."""
    if min(a, b, c) < 0:
        raise ValueError("exponents must be nonnegative")
    f = math.factorial
    return Fraction(f(a) * f(b) * f(c), f(a + b + c + 2))


@dataclass(frozen=True)
class BumpSpec:
    m: int = 2
    shift: tuple[int, int] = (0, 0)

    def __post_init__(self) -> None:
        if self.m < 0 or min(self.shift) < 0:
            raise ValueError("bump parameters must be nonnegative")

    @property
    def normalization(self) -> Fraction:
        m = self.m
        return Fraction(math.factorial(3 * m + 2), math.factorial(m) ** 3)

    def times_coordinate(self, j: int) -> BumpSpec:
        """The bump ``y_j * b(y)``, ``j`` in {1, 2}."""
        s = list(self.shift)
        s[j - 1] += 1
        return BumpSpec(self.m, (s[0], s[1]))

    def moment(self, alpha: tuple[int, int]) -> Fraction:
        return moment(alpha, self)


_memo: dict[tuple, Fraction] = {}
_memo_lock = threading.Lock()


def moment(alpha: tuple[int, int], spec: BumpSpec = BumpSpec()) -> Fraction:
    """Exact ``int_T b(y) y**alpha dy``."""
    a1 = alpha[0] + spec.shift[0]
    a2 = alpha[1] + spec.shift[1]
    key = (spec.m, a1, a2)
    value = _memo.get(key)
    if value is None:
        m = spec.m
        value = spec.normalization * simplex_monomial_integral(a1 + m, a2 + m, m)
        with _memo_lock:
            _memo[key] = value
    return value


def moment_table(spec: BumpSpec, max_degree: int) -> list[tuple[int, int, Fraction]]:
    """Rows ``(a1, a2, mu)`` for all ``a1 + a2 <= max_degree``."""
    return [
        (a1, d - a1, moment((a1, d - a1), spec))
        for d in range(max_degree + 1)
        for a1 in range(d, -1, -1)
    ]
