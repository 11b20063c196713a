from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp

from tetlift.bump import BumpSpec, moment, moment_table, simplex_monomial_integral


def _sympy_moment(alpha, m, shift=(0, 0)):
    y1, y2 = sp.symbols("y1 y2")
    b = (y1 * y2 * (1 - y1 - y2)) ** m
    c = 1 / sp.integrate(sp.integrate(b, (y2, 0, 1 - y1)), (y1, 0, 1))
    integrand = c * b * y1 ** (alpha[0] + shift[0]) * y2 ** (alpha[1] + shift[1])
    return sp.integrate(sp.integrate(integrand, (y2, 0, 1 - y1)), (y1, 0, 1))


def test_normalisation_constants():
    assert BumpSpec(1).normalization == 120
    assert BumpSpec(0).normalization == 2
    assert moment((0, 0), BumpSpec(2)) == 1


@pytest.mark.parametrize("m", [0, 1, 2, 3])
@pytest.mark.parametrize("alpha", [(0, 0), (1, 0), (0, 1), (2, 1), (3, 0)])
def test_moments_match_symbolic_integration(m, alpha):
    assert moment(alpha, BumpSpec(m)) == Fraction(str(_sympy_moment(alpha, m)))


def test_known_moments_m1():
    spec = BumpSpec(1)
    assert moment((1, 0), spec) == Fraction(1, 3)
    assert moment((2, 0), spec) == Fraction(1, 7)


def test_shifted_bump_is_not_renormalised():
    spec = BumpSpec(2).times_coordinate(2)
    assert spec.shift == (0, 1)
    assert moment((0, 0), spec) == moment((0, 1), BumpSpec(2))
    assert moment((1, 0), spec) == Fraction(str(_sympy_moment((1, 0), 2, (0, 1))))


def test_moment_symmetry():
    for a in range(4):
        for b in range(4):
            assert moment((a, b)) == moment((b, a))


def test_table_and_errors():
    rows = moment_table(BumpSpec(1), 2)
    assert rows[0] == (0, 0, 1)
    assert len(rows) == 6
    assert simplex_monomial_integral(0, 0, 0) == Fraction(1, 2)
    with pytest.raises(ValueError):
        BumpSpec(-1)
