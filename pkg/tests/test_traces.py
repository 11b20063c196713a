from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import from_sympy, to_sympy
from tetlift.geometry import EDGES, FACES, chart, edge_chart_maps, face_frame, rotated_frame
from tetlift.jsonio import random_polynomial
from tetlift.poly import NotDivisible, Poly, poly_exact_divide
from tetlift.scalar import Scalar
from tetlift.traces import (
    SymTensorPoly,
    TraceTuple,
    boundary_derivative_tensor,
    check_polynomial_compatibility,
    derivative_tensor,
    edge_mismatch,
    edge_mismatch_factor,
    normal_trace_tuple,
)

X, Y, Z = (Poly.var(i, 3) for i in range(3))


def test_trace_of_z():
    F = normal_trace_tuple(Z, 1)
    assert F.data[1] == (Poly.zero(2), Poly.const(-1, 2))
    assert F.data[4][1] == Poly.const(Scalar(0, Fraction(1, 3)), 2)
    assert F.data[4][0] == 1 - Poly.var(0, 2) - Poly.var(1, 2)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_trace_of_constant(k):
    F = normal_trace_tuple(Poly.const(1, 3), k)
    for i in FACES:
        assert F.data[i][0] == 1
        assert all(p.is_zero() for p in F.data[i][1:])


def test_trace_degrees_drop():
    u = random_polynomial(5, 3, 3)
    F = normal_trace_tuple(u, 2)
    for i in FACES:
        for l, p in enumerate(F.data[i]):
            assert p.degree <= 5 - l


def test_tensor_order_zero_is_the_datum():
    F = normal_trace_tuple(random_polynomial(3, 3, 1), 1)
    for i in FACES:
        assert boundary_derivative_tensor(F, i, 0)[()] == F.data[i][0]


def test_gradient_of_xyz_on_face1_against_symbolic_gradient():
    x, y, z = sp.symbols("x y z")
    u = X * Y * Z
    F = normal_trace_tuple(u, 1)
    T = boundary_derivative_tensor(F, 1, 1)
    x1, x2 = sp.symbols("x1 x2")
    for a, var in enumerate((x, y, z), start=1):
        grad = sp.diff(x * y * z, var).subs({x: x1, y: x2, z: 0})
        assert T[a] == from_sympy(grad, (x1, x2))


def test_zero_data_gives_zero_tensor():
    F = TraceTuple.zeros(2)
    for i in FACES:
        assert boundary_derivative_tensor(F, i, 2).is_zero()


@pytest.mark.parametrize("seed", range(200))
def test_tensor_reconstruction(seed):
    rng = random.Random(seed)
    N, k = rng.randint(0, 6), rng.randint(0, 2)
    u = random_polynomial(N, 3, rng)
    F = normal_trace_tuple(u, k)
    for i in FACES:
        for m in range(k + 1):
            expected = derivative_tensor(u, m).map(chart(i).pullback)
            assert boundary_derivative_tensor(F, i, m) == expected


def test_derivative_tensor_against_sympy():
    x, y, z = sp.symbols("x y z")
    u = random_polynomial(4, 3, 11)
    su = to_sympy(u, (x, y, z))
    D = derivative_tensor(u, 2)
    for key in D.keys():
        vars_ = [(x, y, z)[a - 1] for a in key]
        assert D[key] == from_sympy(sp.diff(su, *vars_), (x, y, z))


def test_symmetric_lookup():
    u = random_polynomial(4, 3, 5)
    T = derivative_tensor(u, 3)
    assert T[(1, 2, 3)] == T[(3, 1, 2)] == T[(2, 3, 1)]
    assert len(list(T.keys())) == 10
    with pytest.raises(IndexError):
        T[(1, 2)]


def test_contraction_matches_directional_derivative():
    u = random_polynomial(4, 3, 8)
    v = (1, Fraction(-2, 3), Scalar(0, 1))
    from tetlift.poly import poly_derive

    assert derivative_tensor(u, 2).contract(v) == derivative_tensor(poly_derive(u, v), 1)


@pytest.mark.parametrize("seed", range(20))
def test_global_traces_are_compatible(seed):
    rng = random.Random(seed)
    N, k = rng.randint(0, 6), rng.randint(0, 2)
    F = normal_trace_tuple(random_polynomial(N, 3, rng), k, N)
    assert check_polynomial_compatibility(F).ok


def test_constant_data_compatible():
    F = TraceTuple(0, 0, {i: (Poly.const(1, 2),) for i in FACES})
    assert check_polynomial_compatibility(F).ok


def _flagged(report, kind="edge"):
    return {(v.edge, v.m) for v in report.violations if v.kind == kind}


def test_x2_perturbation_on_face1():
    F = normal_trace_tuple(random_polynomial(3, 3, 3), 1)
    rep = check_polynomial_compatibility(F.replace(1, 0, F.data[1][0] + Poly.var(1, 2)))
    flagged = _flagged(rep)
    # x2 vanishes on the edge shared with face 2 but not on the other two edges
    assert ((1, 2), 0) not in flagged
    assert {((1, 3), 0), ((1, 4), 0)} <= flagged
    # its tangential gradient does show on edge (1, 2)
    assert ((1, 2), 1) in flagged


def test_x1_perturbation_flags_edge_12():
    F = normal_trace_tuple(random_polynomial(3, 3, 3), 0)
    rep = check_polynomial_compatibility(F.replace(1, 0, F.data[1][0] + Poly.var(0, 2)))
    assert ((1, 2), 0) in _flagged(rep)
    assert not rep.ok


def test_degree_violation_reported():
    F = normal_trace_tuple(random_polynomial(2, 3, 3), 1, 2)
    bad = F.replace(2, 1, F.data[2][1] + Poly.var(0, 2) ** 2 * Poly.var(1, 2) ** 2 * (1 - Poly.var(0, 2) - Poly.var(1, 2)) ** 2)
    kinds = {v.kind for v in check_polynomial_compatibility(bad).violations}
    assert "degree" in kinds


def test_contracted_condition_is_checked():
    # x2 * n1 vanishes on edge (1, 2), so the plain order-1 test passes there,
    # but its derivative across the edge does not match face 2
    F = normal_trace_tuple(random_polynomial(4, 3, 2), 1)
    bad = F.replace(1, 1, F.data[1][1] + Poly.var(1, 2))
    rep = check_polynomial_compatibility(bad)
    assert ((1, 2), 1) not in _flagged(rep)
    assert ((1, 2), 1) in _flagged(rep, "edge_derivative")


def test_frame_rotation_does_not_change_verdict():
    rng = random.Random(4)
    frames = {i: rotated_frame(face_frame(i), Fraction(3, 5), Fraction(4, 5)) for i in FACES}
    frames[4] = rotated_frame(face_frame(4), Fraction(5, 13), Fraction(-12, 13))
    for trial in range(6):
        F = normal_trace_tuple(random_polynomial(4, 3, rng), 1)
        if trial % 2:
            F = F.replace(rng.choice(FACES), 1, F.data[1][1] + Poly.var(0, 2))
        a = check_polynomial_compatibility(F)
        b = check_polynomial_compatibility(F, frames)
        assert a.ok == b.ok
        assert {(v.kind, v.edge, v.m, v.l) for v in a.violations} == {(v.kind, v.edge, v.m, v.l) for v in b.violations}


@pytest.mark.parametrize("seed", range(10))
def test_mismatch_factor_for_global_polynomials(seed):
    rng = random.Random(seed)
    F = normal_trace_tuple(random_polynomial(rng.randint(1, 5), 3, rng), 2)
    x2 = Poly.var(1, 2)
    for i, j in EDGES:
        for m in range(3):
            for l in range(m + 1):
                H = edge_mismatch(F, i, j, l, m)
                G = edge_mismatch_factor(F, i, j, l, m)
                assert G.order == m - l
                assert G.map(lambda p: p * x2) == H


def test_mismatch_factor_zero_and_failure():
    G = edge_mismatch_factor(TraceTuple.zeros(1), 1, 2, 1, 1)
    assert G.is_zero()
    F = normal_trace_tuple(random_polynomial(3, 3, 1), 0)
    bad = F.replace(1, 0, F.data[1][0] + Poly.var(0, 2))
    with pytest.raises(NotDivisible):
        edge_mismatch_factor(bad, 1, 2, 0, 0)


def test_trace_tuple_validation():
    with pytest.raises(ValueError):
        TraceTuple(1, 2, {i: (Poly.zero(2),) for i in FACES})
    with pytest.raises(ValueError):
        TraceTuple(0, 2, {1: (Poly.zero(2),)})
