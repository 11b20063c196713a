"""Single-face lifting kernels evaluated exactly on polynomials.

All kernels are built on the convolution lift

    E_k(f)(x, z) = (-z)^k / k! * int_T b(y) f(x + z y) dy,

which on a polynomial ``f`` is a finite Taylor sum against the bump
moments.  The weighted variants divide ``f`` by a vanishing weight,
lift the quotient and multiply the weight back in.  Inputs are face
polynomials in chart coordinates ``(x1, x2)``; outputs are polynomials
in ``(x1, x2, z)`` for face 1, or in ambient ``(x, y, z)`` after
transport to another face through the volume map ``R_1i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .bump import BumpSpec, moment
from .geometry import volume_map
from .poly import Poly, poly_exact_divide
from .scalar import Scalar

__all__ = [
    "LiftKernelConfig",
    "lift_E",
    "lift_M",
    "lift_M1",
    "lift_M2",
    "lift_S",
    "lift_S_krq",
    "lift_R",
    "face4_scale",
]

DEFAULT_BUMP = BumpSpec()


@dataclass(frozen=True)
class LiftKernelConfig:
    bump: BumpSpec = DEFAULT_BUMP
    k: int = 0
    r: int = 0
    q: int | None = None


def _check_face_poly(f: Poly) -> None:
    if f.nvars != 2:
        raise ValueError(f"face data must be a 2-variable polynomial, got {f.nvars}")


def lift_E(f: Poly, k: int, bump: BumpSpec = DEFAULT_BUMP) -> Poly:
    """Convolution lift from face 1: ``∂_n^m E_k(f)|_{z=0} = δ_mk ∫b · f``."""
    _check_face_poly(f)
    if k < 0:
        raise ValueError("k must be nonnegative")
    acc: dict = {}
    for (a, b), c in f.terms.items():
        for i in range(a + 1):
            ca = comb(a, i)
            for j in range(b + 1):
                mu = moment((i, j), bump)
                coeff = c * (ca * comb(b, j) * mu)
                exp = (a - i, b - j, i + j + k)
                prev = acc.get(exp)
                acc[exp] = coeff if prev is None else prev + coeff
    pref = Fraction((-1) ** k, math.factorial(k))
    return Poly._raw(3, {e: c * pref for e, c in acc.items() if c})


def _weighted_lift(f: Poly, k: int, bump: BumpSpec, q: int, r: int, bary: int) -> Poly:
    """``x1^q x2^r (1-x1-x2-z)^bary * E_k(f / (x1^q x2^r (1-x1-x2)^bary))``."""
    _check_face_poly(f)
    g = poly_exact_divide(f, "x1", q)
    g = poly_exact_divide(g, "x2", r)
    g = poly_exact_divide(g, "bary", bary)
    lifted = lift_E(g, k, bump)
    if q or r:
        lifted = lifted.shift((q, r, 0))
    if bary:
        lifted = lifted * (Poly.linear([-1, -1, -1], 1) ** bary)
    return lifted


def _transport(p: Poly, face: int) -> Poly:
    return p if face == 1 else volume_map(face).pullback(p)


def lift_M(f: Poly, k: int, r: int, bump: BumpSpec = DEFAULT_BUMP, face: int = 1) -> Poly:
    """Lift vanishing to order ``r`` on the neighbouring face (2 for face 1, 1 for face 2)."""
    if face not in (1, 2):
        raise ValueError("lift_M is defined for faces 1 and 2")
    return _transport(_weighted_lift(f, k, bump, 0, r, 0), face)


def lift_M1(f: Poly, k: int, r: int, bump: BumpSpec = DEFAULT_BUMP) -> Poly:
    return lift_M(f, k, r, bump, face=1)


def lift_M2(f: Poly, k: int, r: int, bump: BumpSpec = DEFAULT_BUMP) -> Poly:
    return lift_M(f, k, r, bump, face=2)


def lift_S_krq(f: Poly, k: int, r: int, q: int, bump: BumpSpec = DEFAULT_BUMP, face: int = 1) -> Poly:
    """Three-parameter lift ``x1^q x2^r E_k(f / (x1^q x2^r))``."""
    if face not in (1, 3):
        raise ValueError("lift_S is defined for faces 1 and 3")
    return _transport(_weighted_lift(f, k, bump, q, r, 0), face)


def lift_S(f: Poly, k: int, r: int, bump: BumpSpec = DEFAULT_BUMP, face: int = 1) -> Poly:
    return lift_S_krq(f, k, r, r, bump, face)


def face4_scale(k: int) -> Scalar:
    """``3^(-k/2)`` exactly."""
    s = Scalar(Fraction(1, 3 ** (k // 2)))
    if k % 2:
        s = s * Scalar(0, Fraction(1, 3))
    return s


def lift_R(f: Poly, k: int, r: int, bump: BumpSpec = DEFAULT_BUMP, face: int = 1) -> Poly:
    """Lift vanishing to order ``r`` on the three other faces."""
    if face not in (1, 4):
        raise ValueError("lift_R is defined for faces 1 and 4")
    out = _weighted_lift(f, k, bump, r, r, r)
    if face == 4:
        out = _transport(out, 4).scale(face4_scale(k))
    return out
