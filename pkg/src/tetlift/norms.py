"""Sobolev norms of polynomials, edge integrals and a stability harness.

For ``p = 2`` norms are exact (monomial integrals over the simplex);
for other ``p`` they use tensor Gauss-Legendre rules in collapsed
coordinates.  The stability harness reports ratios against a trace
norm *surrogate* with integer Sobolev orders, not the true fractional
trace norm.
"""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Union

import numpy as np

from .bump import BumpSpec
from .geometry import FACES, EDGES, chart_direction, face_frame
from .kernels import DEFAULT_BUMP
from .jsonio import random_polynomial, sample_rng
from .pipeline import lift_L4
from .poly import Poly, integrate_simplex, poly_derive, poly_exact_divide
from .scalar import SQRT3, Scalar
from .traces import SymTensorPoly, TraceTuple, edge_mismatch_factor, normal_trace_tuple

__all__ = [
    "NormSpec",
    "sobolev_norm",
    "sobolev_norm_squared_exact",
    "quadrature_integral",
    "edge_integral_I",
    "edge_integral_from_mismatch",
    "surrogate_trace_norm",
    "stability_experiment",
    "stability_csv",
    "STABILITY_HEADER",
]

Domain = Union[str, int]
DEFAULT_MAX_QUAD_ORDER = 64

STABILITY_HEADER = "# surrogate trace norm: integer Sobolev orders plus edge integrals; not the exact trace-space norm"


@dataclass(frozen=True)
class NormSpec:
    s: int = 0
    p: float = 2.0
    domain: Domain = "tetrahedron"  # "triangle", "tetrahedron" or a face id 1..4

    def __post_init__(self) -> None:
        if self.s < 0 or int(self.s) != self.s:
            raise ValueError("s must be a nonnegative integer")
        if not self.p > 1:
            raise ValueError("p must exceed 1")
        if self.domain not in ("triangle", "tetrahedron", *FACES):
            raise ValueError(f"unknown domain {self.domain!r}")

    @property
    def dim(self) -> int:
        return 3 if self.domain == "tetrahedron" else 2


def max_quad_order() -> int:
    raw = os.environ.get("TETLIFT_MAX_QUAD_ORDER")
    if raw is None:
        return DEFAULT_MAX_QUAD_ORDER
    value = int(raw)
    if value < 1:
        raise ValueError("TETLIFT_MAX_QUAD_ORDER must be positive")
    return value


def _derivative_directions(domain: Domain) -> list[tuple]:
    """Orthonormal directions, in the coordinates of the polynomial, for the derivatives."""
    if domain == "tetrahedron":
        return [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    if domain == "triangle":
        return [(1, 0), (0, 1)]
    frame = face_frame(domain)
    return [chart_direction(domain, frame.tau1), chart_direction(domain, frame.tau2)]


def _measure(domain: Domain) -> Scalar:
    """Surface element of the chart: sqrt(3) on the slanted face."""
    return SQRT3 if domain == 4 else Scalar(1)


def _derivatives(u: Poly, n: int, domain: Domain) -> list[Poly]:
    """All ``D^alpha u`` with ``|alpha| = n`` along the domain's orthonormal directions."""
    dirs = _derivative_directions(domain)
    out = []
    for combo in combinations_with_replacement(range(len(dirs)), n):
        q = u
        for d in combo:
            q = poly_derive(q, dirs[d])
        out.append(q)
    return out


def _check_vars(u: Poly, spec: NormSpec) -> None:
    if u.nvars != spec.dim:
        raise ValueError(f"{spec.domain} norms need {spec.dim}-variable polynomials")


def sobolev_norm_squared_exact(u: Poly, s: int, domain: Domain = "tetrahedron") -> Scalar:
    """``sum_{n <= s} sum_{|alpha| = n} int (D^alpha u)^2`` exactly."""
    spec = NormSpec(s, 2, domain)
    _check_vars(u, spec)
    total = Scalar(0)
    for n in range(s + 1):
        for q in _derivatives(u, n, domain):
            total = total + integrate_simplex(q * q)
    return total * _measure(domain)


# ---------------------------------------------------------------------------
# quadrature


@lru_cache(maxsize=None)
def _collapsed_rule(dim: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Points (dim x M) and weights of a collapsed Gauss-Legendre rule on the simplex."""
    g, w = np.polynomial.legendre.leggauss(order)
    g = (g + 1) / 2
    w = w / 2
    if dim == 2:
        s, t = np.meshgrid(g, g, indexing="ij")
        ws, wt = np.meshgrid(w, w, indexing="ij")
        x1 = s * (1 - t)
        x2 = t
        weights = ws * wt * (1 - t)
        pts = np.vstack([x1.ravel(), x2.ravel()])
        return pts, weights.ravel()
    if dim == 3:
        a, b, c = np.meshgrid(g, g, g, indexing="ij")
        wa, wb, wc = np.meshgrid(w, w, w, indexing="ij")
        x3 = c
        x2 = b * (1 - c)
        x1 = a * (1 - b) * (1 - c)
        weights = wa * wb * wc * (1 - b) * (1 - c) ** 2
        pts = np.vstack([x1.ravel(), x2.ravel(), x3.ravel()])
        return pts, weights.ravel()
    raise ValueError("rules exist for dimensions 2 and 3")


def quadrature_order(degree: float, p: float, dim: int, extra: float = 0.0) -> int:
    """Points per direction; exact when ``|q|^p`` is a polynomial of degree ``p*degree``."""
    degree = max(degree, 0)
    n = math.ceil((p * degree + extra + dim) / 2)
    return max(1, min(n, max_quad_order()))


def quadrature_integral(fn, dim: int, order: int) -> float:
    pts, w = _collapsed_rule(dim, order)
    return float(np.dot(fn(*pts), w))


def sobolev_norm(u: Poly, spec: NormSpec, method: str = "auto") -> float:
    """``||u||_{s,p}`` on the NormSpec domain.

    ``method`` is ``"exact"`` (only for p = 2), ``"quadrature"`` or
    ``"auto"`` (exact when p = 2).
    """
    _check_vars(u, spec)
    if method == "auto":
        method = "exact" if spec.p == 2 else "quadrature"
    if method == "exact":
        if spec.p != 2:
            raise ValueError("exact norms are available only for p = 2")
        return math.sqrt(float(sobolev_norm_squared_exact(u, spec.s, spec.domain)))
    if method != "quadrature":
        raise ValueError(f"unknown method {method!r}")
    dim = 3 if spec.domain == "tetrahedron" else 2
    total = 0.0
    for n in range(spec.s + 1):
        for q in _derivatives(u, n, spec.domain):
            if not q:
                continue
            f = q.to_float_function()
            order = quadrature_order(q.degree, spec.p, dim)
            p = spec.p
            total += quadrature_integral(lambda *x: np.abs(f(*x) + 0 * x[0]) ** p, dim, order)
    return (total * float(_measure(spec.domain))) ** (1 / spec.p)


# ---------------------------------------------------------------------------
# edge integrals


def _frobenius_terms(t: SymTensorPoly) -> list[tuple[int, Poly]]:
    """``(multiplicity, entry)`` so that sum mult * entry^2 is the squared Frobenius norm."""
    out = []
    for key, p in t.items():
        counts = [key.count(a) for a in (1, 2, 3)]
        mult = math.factorial(len(key))
        for c in counts:
            mult //= math.factorial(c)
        out.append((mult, p))
    return out


def _weighted_edge_integral(G: SymTensorPoly, p: float) -> float:
    """``int_T |G(x)|^p x2^(p-1) dx`` with the Frobenius norm of the tensor."""
    terms = [(m, q) for m, q in _frobenius_terms(G) if q]
    if not terms:
        return 0.0
    if p == 2:
        total = Scalar(0)
        x2 = Poly.var(1, 2)
        for m, q in terms:
            total = total + integrate_simplex(q * q * x2) * m
        return float(total)
    fns = [(m, q.to_float_function()) for m, q in terms]
    deg = max(q.degree for _, q in terms)
    order = quadrature_order(deg, p, 2, extra=p - 1)

    def integrand(x1, x2):
        sq = sum(m * np.asarray(f(x1, x2) + 0 * x1) ** 2 for m, f in fns)
        return sq ** (p / 2) * x2 ** (p - 1)

    return quadrature_integral(integrand, 2, order)


def edge_integral_from_mismatch(H: Poly | SymTensorPoly, p: float = 2.0, n: int = 0) -> float:
    """``int_T |d_{x1}^n H|^p dx / x2`` for a mismatch ``H`` divisible by ``x2``."""
    if isinstance(H, Poly):
        H = SymTensorPoly.scalar(H)
    G = H.map(lambda q: poly_exact_divide(q, "x2", 1).partial(0, n))
    return _weighted_edge_integral(G, p)


def edge_integral_I(F: TraceTuple, i: int, j: int, n: int, l: int, p: float = 2.0, m: int | None = None) -> float:
    """Edge integral of the order-``(m, l)`` contracted mismatch, ``n`` edge derivatives.

    ``m`` defaults to the order of ``F``.  Raises NotDivisible when the
    mismatch does not vanish on the edge (the integral would diverge).
    """
    m = F.k if m is None else m
    G = edge_mismatch_factor(F, i, j, l, m, n)
    return _weighted_edge_integral(G, p)


# ---------------------------------------------------------------------------
# stability harness


def surrogate_trace_norm(F: TraceTuple, s: int, p: float = 2.0) -> float:
    """Face norms of order ``s - m`` plus edge integrals where ``(s - k - l - n) p = 2``."""
    total = 0.0
    for m in range(F.k + 1):
        order = s - m
        if order < 0:
            continue
        for i in FACES:
            f = F.data[i][m]
            if f:
                total += sobolev_norm(f, NormSpec(order, p, i)) ** p
    k = F.k
    for l in range(k + 1):
        nf = s - k - l - 2 / p
        if nf < 0 or abs(nf - round(nf)) > 1e-12:
            continue
        for i, j in EDGES:
            total += edge_integral_I(F, i, j, int(round(nf)), l, p)
    return total ** (1 / p)


def stability_experiment(
    N: int,
    k: int,
    samples: int,
    s: int,
    p: float = 2.0,
    seed: int = 0,
    bump: BumpSpec = DEFAULT_BUMP,
) -> list[dict]:
    """Rows ``sample, lift_norm, trace_surrogate, ratio`` for random compatible data.

    Samples whose data vanish identically are skipped (the ratio is 0/0).
    """
    if s < k + 1:
        raise ValueError("need s >= k + 1")
    rows = []
    for sample in range(samples):
        u = random_polynomial(N, 3, sample_rng(seed, sample))
        F = normal_trace_tuple(u, k, N)
        L = lift_L4(F, bump)
        lift_norm = sobolev_norm(L, NormSpec(s, p, "tetrahedron"))
        trace = surrogate_trace_norm(F, s, p)
        if trace == 0.0:
            continue
        rows.append(
            {"sample": sample, "lift_norm": lift_norm, "trace_surrogate": trace, "ratio": lift_norm / trace}
        )
    return rows


def stability_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    buf.write(STABILITY_HEADER + "\n")
    writer = csv.DictWriter(buf, fieldnames=["sample", "lift_norm", "trace_surrogate", "ratio"], lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: (repr(v) if isinstance(v, float) else v) for key, v in row.items()})
    return buf.getvalue()
