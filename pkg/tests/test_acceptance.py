"""Acceptance criteria, one test per criterion.

Each check returns ``(passed, detail)``; the pytest hook in conftest
prints one PASS/FAIL line per criterion at the end of the run.  Run
this file directly to print the same lines without pytest.
"""

from __future__ import annotations

import itertools
import math
import random
import sys
import time
from functools import lru_cache

import pytest

from tetlift.bump import BumpSpec
from tetlift.geometry import EDGES, FACES, edge_chart_maps
from tetlift.hardy import (
    edge_kernel_A,
    edge_kernel_A_quadrature,
    edge_kernel_grid,
    hardy_average,
    partial_fraction_decompose,
    verify_partial_fractions,
)
from tetlift.jsonio import random_polynomial
from tetlift.kernels import lift_E, lift_M, lift_R, lift_S, lift_S_krq
from tetlift.norms import NormSpec, sobolev_norm, sobolev_norm_squared_exact, stability_csv, stability_experiment
from tetlift.pipeline import verify_roundtrip
from tetlift.poly import Poly, poly_exact_divide
from tetlift.traces import check_polynomial_compatibility, edge_mismatch, edge_mismatch_factor, normal_derivative_trace, normal_trace_tuple

RESULTS: dict[int, tuple[bool, str]] = {}

x1, x2 = Poly.var(0, 2), Poly.var(1, 2)
OMEGA3 = 1 - x1 - x2


def _record(n: int, ok: bool, detail: str) -> tuple[bool, str]:
    RESULTS[n] = (ok, detail)
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
    return ok, detail


@lru_cache(maxsize=None)
def _roundtrip_sweep():
    t0 = time.perf_counter()
    reports = [
        verify_roundtrip(N, k, 25, seed=1000 * N + k)
        for N in range(9)
        for k in range(3)
        if k <= N
    ]
    return reports, time.perf_counter() - t0


def criterion_1():
    reports, secs = _roundtrip_sweep()
    trace_fail = sum(1 for r in reports for f in r.failures if "trace" in f["reason"] or "face" in f["reason"])
    total = sum(r.samples for r in reports)
    ok = trace_fail == 0 and all(r.passed == r.samples for r in reports) and secs < 300
    return _record(1, ok, f"right-inverse exact on {total} samples over {len(reports)} (N, k) pairs, {secs:.1f}s")


def criterion_2():
    reports, _ = _roundtrip_sweep()
    degree_fail = sum(1 for r in reports for f in r.failures if "degree" in f["reason"])
    ok = degree_fail == 0 and all(r.ok for r in reports)
    return _record(2, ok, f"deg L_k(F) <= N in every sample ({degree_fail} degree failures)")


def _traces_on(L: Poly, face: int, upto: int) -> list[Poly]:
    return [normal_derivative_trace(L, face, j) for j in range(upto + 1)]


def criterion_3():
    rng = random.Random(3)
    bad = []
    for sample in range(100):
        k, r = rng.randint(0, 2), rng.randint(0, 3)
        g = random_polynomial(rng.randint(0, 3), 2, rng)
        cases = [
            ("E", lift_E(g, k), 1, g, ()),
            ("M1", lift_M(g * x2**r, k, r, face=1), 1, g * x2**r, (2,)),
            ("M2", lift_M(g * x2**r, k, r, face=2), 2, g * x2**r, (1,)),
            ("S1", lift_S(g * (x1 * x2) ** r, k, r, face=1), 1, g * (x1 * x2) ** r, (2, 3)),
            ("S3", lift_S(g * (x1 * x2) ** r, k, r, face=3), 3, g * (x1 * x2) ** r, (1, 2)),
            ("R1", lift_R(g * (x1 * x2 * OMEGA3) ** r, k, r, face=1), 1, g * (x1 * x2 * OMEGA3) ** r, (2, 3, 4)),
            ("R4", lift_R(g * (x1 * x2 * OMEGA3) ** r, k, r, face=4), 4, g * (x1 * x2 * OMEGA3) ** r, (1, 2, 3)),
        ]
        for name, L, face, f, others in cases:
            tr = _traces_on(L, face, k)
            if any(tr[m] != (f if m == k else Poly.zero(2)) for m in range(k + 1)):
                bad.append((sample, name, "interpolation"))
            for o in others:
                if any(normal_derivative_trace(L, o, j) for j in range(r)):
                    bad.append((sample, name, f"vanishing on face {o}"))
    return _record(3, not bad, f"100 samples x 7 kernels, {len(bad)} exact-identity failures")


def criterion_4():
    rng = random.Random(4)
    b = BumpSpec()
    failures = 0
    checks = 0
    for k, r in itertools.product(range(3), range(3)):
        for _ in range(50):
            f = random_polynomial(rng.randint(0, 3), 2, rng) * x2 ** (r + 1)
            lhs = lift_M(f, k, r + 1, b)
            rhs = lift_M(poly_exact_divide(f, "x2"), k + 1, r, b.times_coordinate(2)).scale(k + 1) + lift_M(f, k, r, b)
            failures += lhs != rhs
            checks += 1
    for k, r, q in itertools.product(range(3), range(3), range(3)):
        for _ in range(50):
            f = random_polynomial(rng.randint(0, 2), 2, rng) * x1 ** (q + 1) * x2**r
            lhs = lift_S_krq(f, k, r, q + 1, b)
            rhs = lift_S_krq(poly_exact_divide(f, "x1"), k + 1, r, q, b.times_coordinate(1)).scale(k + 1) + lift_S_krq(f, k, r, q, b)
            failures += lhs != rhs
            checks += 1
    return _record(4, failures == 0, f"M and S recursions exact in {checks - failures}/{checks} cases")


def _edge_restriction_nonzero(g: Poly, i: int, j: int) -> bool:
    emap = edge_chart_maps(min(i, j), max(i, j))[0 if i < j else 1]
    on_edge = emap.pullback(g)
    return any(e[1] == 0 for e in on_edge.terms)


def criterion_5():
    rng = random.Random(5)
    clean_fail = 0
    for _ in range(200):
        N, k = rng.randint(0, 6), rng.randint(0, 2)
        F = normal_trace_tuple(random_polynomial(N, 3, rng), k, N)
        clean_fail += not check_polynomial_compatibility(F).ok
    missed = 0
    for _ in range(200):
        N, k = rng.randint(1, 5), rng.randint(0, 2)
        m = rng.randint(0, min(k, N))
        F = normal_trace_tuple(random_polynomial(N, 3, rng), k, N)
        i = rng.choice(FACES)
        while True:
            g = random_polynomial(N - m, 2, rng)
            edges = [e for e in EDGES if i in e and _edge_restriction_nonzero(g, i, e[0] + e[1] - i)]
            if edges:
                break
        rep = check_polynomial_compatibility(F.replace(i, m, F.data[i][m] + g))
        flagged = {(v.edge, v.m) for v in rep.violations if v.kind == "edge"}
        if not all((e, m) in flagged for e in edges):
            missed += 1
    ok = clean_fail == 0 and missed == 0
    return _record(5, ok, f"200 clean traces ({clean_fail} false alarms), 200 perturbations ({missed} missed)")


def criterion_6():
    rng = random.Random(6)
    failures = 0
    divisions = 0
    for _ in range(100):
        N, k = rng.randint(0, 6), rng.randint(0, 2)
        F = normal_trace_tuple(random_polynomial(N, 3, rng), k, N)
        for i, j in EDGES:
            for m in range(k + 1):
                for l in range(m + 1):
                    H = edge_mismatch(F, i, j, l, m)
                    try:
                        G = edge_mismatch_factor(F, i, j, l, m)
                    except ArithmeticError:
                        failures += 1
                        continue
                    divisions += 1
                    failures += G.map(lambda p: p * x2) != H
    return _record(6, failures == 0, f"H = x2 G exact in {divisions} divisions, {failures} failures")


def criterion_7():
    betas = [b for b in itertools.product(range(7), repeat=3) if 2 <= sum(b) <= 6]
    bad = []
    for beta in betas:
        table = partial_fraction_decompose(beta)
        if not verify_partial_fractions(beta, table) or any(c <= 0 for c in table.values()):
            bad.append(beta)
    return _record(7, not bad, f"{len(betas)} exponent triples with |beta| <= 6, {len(bad)} failures, all constants positive")


def criterion_8():
    grid = edge_kernel_grid(10)
    values = [edge_kernel_A(a, b) for a, b in grid]
    quad_err = max(abs(v - edge_kernel_A_quadrature(a, b)) for v, (a, b) in zip(values, grid))
    limit_err = max(abs(edge_kernel_A(t / 10, 1e-8) - 2) for t in range(1, 10))
    lo = min(values)
    ok = quad_err <= 1e-6 and limit_err <= 1e-6 and lo >= 0.9
    detail = f"quadrature err {quad_err:.1e}, edge-limit err {limit_err:.1e}, min A on grid {lo:.4f} (bound 0.9)"
    return _record(8, ok, detail)


def criterion_9():
    rng = random.Random(9)
    worst = 0.0
    bad = 0
    for _ in range(100):
        f = random_polynomial(rng.randint(0, 6), 2, rng)
        lhs = sobolev_norm_squared_exact(hardy_average(f), 0, "triangle")
        rhs = sobolev_norm_squared_exact(f, 0, "triangle") * 4
        bad += not lhs <= rhs
        if rhs:
            worst = max(worst, math.sqrt(float(lhs) / float(rhs)) * 2)
    return _record(9, bad == 0, f"||H1 f|| <= 2 ||f|| exactly on 100 polynomials, worst ||H1 f|| / ||f|| = {worst:.3f}")


def criterion_10():
    rng = random.Random(10)
    worst = 0.0
    for _ in range(100):
        u = random_polynomial(rng.randint(0, 8), 3, rng)
        a = sobolev_norm(u, NormSpec(0, 2), "exact")
        b = sobolev_norm(u, NormSpec(0, 2), "quadrature")
        if a:
            worst = max(worst, abs(a - b) / a)
    csv1 = stability_csv(stability_experiment(3, 0, 50, 1, 2.0, seed=10))
    csv2 = stability_csv(stability_experiment(3, 0, 50, 1, 2.0, seed=10))
    ok = worst <= 1e-10 and csv1 == csv2
    return _record(10, ok, f"L2 quadrature rel err {worst:.1e}, stability CSV reproducible: {csv1 == csv2}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n):
    ok, detail = CRITERIA[n - 1]()
    assert ok, detail


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(ok for ok, _ in results) else 1)
