from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from tetlift.jsonio import random_polynomial
from tetlift.poly import Poly
from tetlift.scalar import Scalar

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(Scalar, small_fractions, small_fractions)
rational_scalars = st.builds(Scalar, small_fractions)


@st.composite
def polys(draw, nvars: int = 2, max_degree: int = 4):
    N = draw(st.integers(0, max_degree))
    seed = draw(st.integers(0, 10**6))
    return random_polynomial(N, nvars, seed, coeff_bound=4)


def to_sympy(p: Poly, symbols):
    import sympy as sp

    out = 0
    for e, c in p.terms.items():
        coeff = sp.Rational(c.rat.numerator, c.rat.denominator) + sp.Rational(c.irr.numerator, c.irr.denominator) * sp.sqrt(3)
        term = coeff
        for s, k in zip(symbols, e):
            term *= s**k
        out += term
    return sp.expand(out)


def from_sympy(expr, symbols) -> Poly:
    import sympy as sp

    poly = sp.Poly(sp.expand(expr), *symbols)
    terms = {}
    for exp, c in poly.terms():
        c = sp.nsimplify(c)
        irr = sp.Rational(sp.expand(c).coeff(sp.sqrt(3)))
        rat = sp.Rational(sp.expand(c - irr * sp.sqrt(3)))
        terms[exp] = Scalar(Fraction(int(rat.p), int(rat.q)), Fraction(int(irr.p), int(irr.q)))
    return Poly(len(symbols), terms)


@pytest.fixture
def x2d():
    return Poly.var(0, 2), Poly.var(1, 2)


@pytest.fixture
def x3d():
    return Poly.var(0, 3), Poly.var(1, 3), Poly.var(2, 3)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
