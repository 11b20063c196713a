"""Four-stage polynomial-preserving trace lifting on the tetrahedron.

Stage 1 lifts the face-1 data with the convolution lift.  Each later
stage corrects the residual on one more face with a kernel that
vanishes to order ``k + 1`` on the faces already matched, so earlier
traces are never disturbed.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .bump import BumpSpec
from .jsonio import random_polynomial, sample_rng
from .kernels import DEFAULT_BUMP, lift_E, lift_M, lift_R, lift_S
from .poly import NotDivisible, Poly
from .traces import TraceTuple, normal_derivative_trace, normal_trace_tuple

__all__ = [
    "IncompatibleTraces",
    "lift_L1",
    "lift_L2",
    "lift_L3",
    "lift_L4",
    "lift",
    "traces_match",
    "RoundtripReport",
    "verify_roundtrip",
]


class IncompatibleTraces(ValueError):
    """Trace data outside the range of the lifting; carries where it failed."""

    def __init__(self, face: int, order: int, cause: NotDivisible) -> None:
        super().__init__(f"face {face}, normal order {order}: {cause}")
        self.face = face
        self.order = order
        self.cause = cause


def _stage(L: Poly, F: TraceTuple, face: int, kernel: Callable[[Poly, int], Poly]) -> Poly:
    for m in range(F.k + 1):
        residual = F.data[face][m]
        if L:
            residual = residual - normal_derivative_trace(L, face, m)
        if not residual:
            continue
        try:
            L = L + kernel(residual, m)
        except NotDivisible as exc:
            raise IncompatibleTraces(face, m, exc) from exc
    return L


def lift_L1(F: TraceTuple, bump: BumpSpec = DEFAULT_BUMP) -> Poly:
    """Match all normal derivatives up to order k on face 1."""
    return _stage(Poly.zero(3), F, 1, lambda g, m: lift_E(g, m, bump))


def lift_L2(F: TraceTuple, bump: BumpSpec = DEFAULT_BUMP) -> Poly:
    r = F.k + 1
    return _stage(lift_L1(F, bump), F, 2, lambda g, m: lift_M(g, m, r, bump, face=2))


def lift_L3(F: TraceTuple, bump: BumpSpec = DEFAULT_BUMP) -> Poly:
    r = F.k + 1
    return _stage(lift_L2(F, bump), F, 3, lambda g, m: lift_S(g, m, r, bump, face=3))


def lift_L4(F: TraceTuple, bump: BumpSpec = DEFAULT_BUMP) -> Poly:
    r = F.k + 1
    return _stage(lift_L3(F, bump), F, 4, lambda g, m: lift_R(g, m, r, bump, face=4))


lift = lift_L4


def traces_match(u: Poly, F: TraceTuple, faces=(1, 2, 3, 4)) -> bool:
    """Whether ``u`` has exactly the normal-derivative traces ``F`` on ``faces``."""
    for i in faces:
        for m in range(F.k + 1):
            if normal_derivative_trace(u, i, m) != F.data[i][m]:
                return False
    return True


@dataclass
class RoundtripReport:
    N: int
    k: int
    samples: int
    seed: int
    passed: int = 0
    failures: list[dict] = field(default_factory=list)
    max_terms: int = 0
    max_coeff_bits: int = 0
    max_seconds: float = 0.0
    total_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.passed == self.samples

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "k": self.k,
            "samples": self.samples,
            "seed": self.seed,
            "passed": self.passed,
            "ok": self.ok,
            "failures": self.failures,
            "max_terms": self.max_terms,
            "max_coeff_bits": self.max_coeff_bits,
            "max_seconds": round(self.max_seconds, 6),
            "total_seconds": round(self.total_seconds, 6),
        }


def _roundtrip_sample(N: int, k: int, seed: int, sample: int, bump: BumpSpec) -> dict:
    u = random_polynomial(N, 3, sample_rng(seed, sample))
    F = normal_trace_tuple(u, k, N)
    t0 = time.perf_counter()
    try:
        L = lift_L4(F, bump)
    except IncompatibleTraces as exc:
        return {"sample": sample, "ok": False, "reason": str(exc)}
    dt = time.perf_counter() - t0
    reasons = []
    if L and L.degree > N:
        reasons.append(f"degree {L.degree} > {N}")
    if not traces_match(L, F):
        reasons.append("trace mismatch")
    return {
        "sample": sample,
        "ok": not reasons,
        "reason": "; ".join(reasons),
        "seconds": dt,
        "terms": len(L),
        "coeff_bits": L.max_coeff_bits(),
    }


def verify_roundtrip(
    N: int,
    k: int,
    samples: int,
    seed: int = 0,
    bump: BumpSpec = DEFAULT_BUMP,
    workers: int = 1,
) -> RoundtripReport:
    """Lift the traces of random polynomials and check the traces come back.

    Each sample must reproduce every trace exactly and stay within
    degree ``N``.  Term counts, coefficient bit sizes and timings of the
    lifts are recorded.  Sample ``s`` depends only on ``(seed, s)``, so
    the outcome does not depend on ``workers``.
    """
    if k > N:
        raise ValueError("need k <= N")
    args = [(N, k, seed, s, bump) for s in range(samples)]
    if workers > 1 and samples > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_roundtrip_sample, *zip(*args)))
    else:
        results = [_roundtrip_sample(*a) for a in args]
    report = RoundtripReport(N, k, samples, seed)
    for r in results:
        if not r["ok"]:
            report.failures.append({"sample": r["sample"], "reason": r["reason"]})
            continue
        report.passed += 1
        report.total_seconds += r["seconds"]
        report.max_seconds = max(report.max_seconds, r["seconds"])
        report.max_terms = max(report.max_terms, r["terms"])
        report.max_coeff_bits = max(report.max_coeff_bits, r["coeff_bits"])
    return report
