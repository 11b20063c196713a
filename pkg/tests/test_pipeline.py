from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tetlift.geometry import FACES
from tetlift.jsonio import random_polynomial
from tetlift.pipeline import (
    IncompatibleTraces,
    lift_L1,
    lift_L2,
    lift_L3,
    lift_L4,
    traces_match,
    verify_roundtrip,
)
from tetlift.poly import Poly
from tetlift.traces import TraceTuple, normal_trace_tuple

X, Y, Z = (Poly.var(i, 3) for i in range(3))


def test_constant_data():
    F = normal_trace_tuple(Poly.const(7, 3), 0)
    assert lift_L1(F) == 7
    assert lift_L4(F) == 7


def test_L1_on_z():
    F = normal_trace_tuple(Z, 1)
    L = lift_L1(F)
    assert traces_match(L, F, faces=(1,))


def test_affine_data_is_recovered_exactly():
    for u in (X, 1 + 2 * X - Y + 3 * Z, Z):
        assert lift_L4(normal_trace_tuple(u, 0)) == u


def test_zero_data():
    assert lift_L4(TraceTuple.zeros(2)).is_zero()


@pytest.mark.parametrize("seed", range(8))
def test_stages_match_faces_progressively(seed):
    rng = random.Random(seed)
    N, k = rng.randint(2, 6), rng.randint(0, 2)
    F = normal_trace_tuple(random_polynomial(N, 3, rng), k, N)
    for stage, fn in enumerate((lift_L1, lift_L2, lift_L3, lift_L4), start=1):
        L = fn(F)
        assert traces_match(L, F, faces=tuple(range(1, stage + 1)))
        assert not L or L.degree <= N


def test_random_degree5_order2():
    F = normal_trace_tuple(random_polynomial(5, 3, 99), 2)
    L = lift_L1(F)
    assert traces_match(L, F, faces=(1,)) and L.degree <= 5


def test_high_degree_lift_differs_from_source_but_matches():
    # degree >= 4(k+1) leaves room for interior bubbles, so the lift need not be u
    u = random_polynomial(5, 3, 3) + (X * Y * Z * (1 - X - Y - Z)) * (1 + X)
    F = normal_trace_tuple(u, 0)
    L = lift_L4(F)
    assert traces_match(L, F)
    assert L.degree <= 5
    assert L != u


@given(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(-3, 3))
def test_linearity(s1, s2, c):
    F = normal_trace_tuple(random_polynomial(4, 3, s1), 1, 4)
    G = normal_trace_tuple(random_polynomial(4, 3, s2), 1, 4)
    assert lift_L4(F + G.scale(c)) == lift_L4(F) + lift_L4(G).scale(c)


def test_incompatible_data_raises():
    F = normal_trace_tuple(random_polynomial(3, 3, 1), 0)
    bad = F.replace(2, 0, F.data[2][0] + 1)
    with pytest.raises(IncompatibleTraces) as info:
        lift_L4(bad)
    assert info.value.face == 2 and info.value.order == 0


def test_roundtrip_reports():
    rep = verify_roundtrip(1, 0, 5, seed=3)
    assert rep.ok and rep.passed == 5
    rep = verify_roundtrip(4, 1, 20, seed=7)
    assert rep.passed == 20 and not rep.failures
    d = rep.to_dict()
    assert d["max_terms"] > 0 and d["max_coeff_bits"] > 0


def test_roundtrip_independent_of_workers():
    a = verify_roundtrip(3, 1, 6, seed=5).to_dict()
    b = verify_roundtrip(3, 1, 6, seed=5, workers=2).to_dict()
    for key in ("passed", "max_terms", "max_coeff_bits", "failures"):
        assert a[key] == b[key]


def test_roundtrip_rejects_k_above_N():
    with pytest.raises(ValueError):
        verify_roundtrip(1, 2, 1)
