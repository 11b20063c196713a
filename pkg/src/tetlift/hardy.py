"""Averaging operator, weight inversion, partial fractions and the edge kernel."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .poly import Poly, poly_exact_divide
from .scalar import Scalar

__all__ = [
    "hardy_average",
    "omega_inverse",
    "omega_inverse_via_average",
    "partial_fraction_decompose",
    "verify_partial_fractions",
    "edge_kernel_A",
    "edge_kernel_A_quadrature",
    "edge_kernel_grid",
]


def hardy_average(f: Poly) -> Poly:
    """``x -> (1/x1) * int_0^x1 f(t, x2) dt``."""
    if f.nvars != 2:
        raise ValueError("hardy_average acts on 2-variable polynomials")
    return Poly._raw(2, {e: c * Fraction(1, e[0] + 1) for e, c in f.terms.items()})


def omega_inverse(f: Poly, i: int) -> Poly:
    """``f / x_i`` for ``f`` vanishing on ``x_i = 0``; raises NotDivisible otherwise."""
    if i not in (1, 2):
        raise ValueError("weight index must be 1 or 2")
    return poly_exact_divide(f, i - 1, 1)


def omega_inverse_via_average(f: Poly, i: int) -> Poly:
    """Same quotient computed as the average of ``d_i f`` along ``x_i``.

    Only meaningful when ``f`` vanishes on ``x_i = 0``.
    """
    if i == 1:
        return hardy_average(f.partial(0))
    swapped = f.compose([[0, 1], [1, 0]])
    return hardy_average(swapped.partial(0)).compose([[0, 1], [1, 0]])


# ---------------------------------------------------------------------------
# partial fractions over the barycentric weights w1 = x1, w2 = x2, w3 = 1 - x1 - x2


def partial_fraction_decompose(beta: tuple[int, int, int]) -> dict[tuple[int, int, int], int]:
    """Write ``1 / w^beta`` as a positive combination of two-weight terms.

    Uses ``w1 + w2 + w3 = 1`` to split ``1/w^beta = sum_j 1/w^(beta - e_j)``
    until some exponent reaches zero.  Returns ``{alpha: c}``; every
    ``alpha`` has a zero entry and every ``c`` is a positive integer.
    """
    beta = tuple(int(b) for b in beta)
    if len(beta) != 3 or min(beta) < 0:
        raise ValueError("beta must be three nonnegative integers")
    if sum(beta) < 2:
        raise ValueError("need |beta| >= 2")
    table = dict(_decompose(beta))
    if any(c <= 0 for c in table.values()):
        raise ArithmeticError("partial fraction produced a nonpositive constant")
    return table


@lru_cache(maxsize=None)
def _decompose(beta: tuple[int, int, int]) -> tuple[tuple[tuple[int, int, int], int], ...]:
    if min(beta) == 0:
        return ((beta, 1),)
    acc: dict = {}
    for j in range(3):
        sub = list(beta)
        sub[j] -= 1
        for alpha, c in _decompose(tuple(sub)):
            acc[alpha] = acc.get(alpha, 0) + c
    return tuple(sorted(acc.items()))


def _weights() -> tuple[Poly, Poly, Poly]:
    return Poly.var(0, 2), Poly.var(1, 2), Poly.linear([-1, -1], 1)


def verify_partial_fractions(beta, table: dict | None = None, points=None) -> bool:
    """Clear denominators: ``sum c * w^(beta - alpha)`` must equal 1 identically.

    Optionally also checks the uncleared identity at rational interior points.
    """
    beta = tuple(beta)
    table = partial_fraction_decompose(beta) if table is None else table
    w = _weights()
    total = Poly.zero(2)
    for alpha, c in table.items():
        if any(a > b for a, b in zip(alpha, beta)):
            return False
        term = Poly.const(c, 2)
        for wj, b, a in zip(w, beta, alpha):
            term = term * wj ** (b - a)
        total = total + term
    if total != Poly.const(1, 2):
        return False
    for pt in points or ():
        x1, x2 = (Fraction(p) for p in pt)
        ws = (x1, x2, 1 - x1 - x2)
        lhs = Fraction(1)
        for wj, b in zip(ws, beta):
            lhs /= wj**b
        rhs = Fraction(0)
        for alpha, c in table.items():
            t = Fraction(c)
            for wj, a in zip(ws, alpha):
                t /= wj**a
            rhs += t
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# edge kernel


def _check_interior(x1: float, x2: float) -> None:
    if not (x1 > 0 and x2 > 0 and x1 + x2 < 1):
        raise ValueError(f"({x1}, {x2}) is not strictly inside the triangle")


def edge_kernel_A(x1, x2) -> float:
    """Closed form of ``int_T x2 / |(x1, -x2) - y|^3 dy`` for interior ``x``."""
    x1, x2 = float(x1), float(x2)
    _check_interior(x1, x2)
    num = (
        x1 * math.hypot(x2, 1 - x1)
        + (1 - x1 + x2) * math.hypot(x1, x2)
        - x2 * math.hypot(1 + x2, x1)
    )
    return num / (x1 * (1 - x1 + x2))


def edge_kernel_A_quadrature(x1, x2, tol: float = 1e-11) -> float:
    """The defining 2-D integral evaluated by adaptive quadrature."""
    from scipy import integrate

    x1, x2 = float(x1), float(x2)
    _check_interior(x1, x2)

    def integrand(y2, y1):
        return x2 / ((x1 - y1) ** 2 + (x2 + y2) ** 2) ** 1.5

    # split at y1 = x1 where the kernel peaks
    total = 0.0
    for a, b in ((0.0, x1), (x1, 1.0)):
        val, _ = integrate.dblquad(integrand, a, b, 0.0, lambda y1: 1.0 - y1, epsabs=tol, epsrel=tol)
        total += val
    return total


def edge_kernel_grid(n: int = 10) -> np.ndarray:
    """``n*n`` interior points covering the triangle in collapsed coordinates.

    Rows are ``(x1, x2)`` with ``x2 = t`` and ``x1 = s (1 - t)`` at
    cell midpoints ``s, t in {(i + 1/2)/n}``.
    """
    c = (np.arange(n) + 0.5) / n
    s, t = np.meshgrid(c, c, indexing="ij")
    return np.column_stack([(s * (1 - t)).ravel(), t.ravel()])
