"""Normal-derivative traces, boundary derivative tensors and compatibility.

Face data are polynomials in the chart coordinates of each face.  From
the tuple ``(f^0, ..., f^k)`` on face ``i`` the full order-``m``
derivative tensor on that face is rebuilt by mixing tangential
derivatives of ``f^l`` with ``l`` copies of the normal.  Compatibility
of a trace tuple means these tensors agree, together with some of
their derivatives, along every edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Callable, Iterator, Mapping, Sequence

from .geometry import (
    EDGES,
    FACES,
    FaceFrame,
    chart,
    chart_direction,
    edge_chart_maps,
    edge_frame,
    face_frame,
)
from .poly import Poly, poly_derive, poly_exact_divide
from .scalar import Scalar, as_scalar

__all__ = [
    "TraceTuple",
    "SymTensorPoly",
    "Violation",
    "CompatibilityReport",
    "normal_trace_tuple",
    "normal_derivative_trace",
    "boundary_derivative_tensor",
    "derivative_tensor",
    "check_polynomial_compatibility",
    "edge_mismatch",
    "edge_mismatch_factor",
]


# ---------------------------------------------------------------------------
# symmetric tensors with polynomial entries


def _sorted_key(indices: Sequence[int]) -> tuple[int, ...]:
    key = tuple(sorted(indices))
    if any(not 1 <= a <= 3 for a in key):
        raise IndexError(f"tensor indices must lie in 1..3, got {tuple(indices)}")
    return key


class SymTensorPoly:
    """Symmetric tensor of a given order over R^3 with polynomial entries.

    Only nondecreasing index tuples (1-based axes) are stored; lookups
    with any permutation return the same entry.
    """

    __slots__ = ("order", "nvars", "entries")

    def __init__(self, order: int, nvars: int, entries: Mapping[tuple, Poly] | None = None) -> None:
        self.order = order
        self.nvars = nvars
        self.entries: dict[tuple[int, ...], Poly] = {}
        for key in combinations_with_replacement((1, 2, 3), order):
            self.entries[key] = Poly.zero(nvars)
        if entries:
            for idx, p in entries.items():
                if len(idx) != order:
                    raise ValueError(f"index {idx} does not have length {order}")
                if p.nvars != nvars:
                    raise ValueError("entry has the wrong variable count")
                self.entries[_sorted_key(idx)] = p

    @classmethod
    def scalar(cls, p: Poly) -> SymTensorPoly:
        return cls(0, p.nvars, {(): p})

    @classmethod
    def from_function(cls, order: int, nvars: int, fn: Callable[[tuple[int, ...]], Poly]) -> SymTensorPoly:
        return cls(order, nvars, {key: fn(key) for key in combinations_with_replacement((1, 2, 3), order)})

    def __getitem__(self, indices) -> Poly:
        if isinstance(indices, int):
            indices = (indices,)
        if len(indices) != self.order:
            raise IndexError(f"expected {self.order} indices")
        return self.entries[_sorted_key(indices)]

    def keys(self) -> Iterator[tuple[int, ...]]:
        return iter(self.entries)

    def items(self):
        return self.entries.items()

    def map(self, fn: Callable[[Poly], Poly]) -> SymTensorPoly:
        out = {k: fn(p) for k, p in self.entries.items()}
        nv = next(iter(out.values())).nvars
        return SymTensorPoly(self.order, nv, out)

    def __add__(self, other: SymTensorPoly) -> SymTensorPoly:
        self._check(other)
        return SymTensorPoly(self.order, self.nvars, {k: p + other.entries[k] for k, p in self.entries.items()})

    def __sub__(self, other: SymTensorPoly) -> SymTensorPoly:
        self._check(other)
        return SymTensorPoly(self.order, self.nvars, {k: p - other.entries[k] for k, p in self.entries.items()})

    def scale(self, s) -> SymTensorPoly:
        return self.map(lambda p: p.scale(s))

    def _check(self, other: SymTensorPoly) -> None:
        if self.order != other.order or self.nvars != other.nvars:
            raise ValueError("tensor shape mismatch")

    def contract(self, v: Sequence) -> SymTensorPoly:
        """``v . T``: contract the first slot with an ambient vector."""
        if self.order == 0:
            raise ValueError("cannot contract an order-0 tensor")
        v = [as_scalar(a) for a in v]

        def entry(rest: tuple[int, ...]) -> Poly:
            total = Poly.zero(self.nvars)
            for a in (1, 2, 3):
                if v[a - 1]:
                    total = total + self[(a,) + rest].scale(v[a - 1])
            return total

        return SymTensorPoly.from_function(self.order - 1, self.nvars, entry)

    def is_zero(self) -> bool:
        return all(not p for p in self.entries.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymTensorPoly):
            return NotImplemented
        return self.order == other.order and self.nvars == other.nvars and self.entries == other.entries

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {p}" for k, p in self.entries.items())
        return f"SymTensorPoly(order={self.order}, {{{body}}})"


# ---------------------------------------------------------------------------
# trace tuples


@dataclass(frozen=True)
class TraceTuple:
    """Face data ``data[i][l]``, face ``i`` in 1..4, normal order ``l`` in 0..k."""

    k: int
    N: int
    data: Mapping[int, tuple[Poly, ...]]

    def __post_init__(self) -> None:
        if set(self.data) != set(FACES):
            raise ValueError("trace data must cover faces 1..4")
        for i, row in self.data.items():
            if len(row) != self.k + 1:
                raise ValueError(f"face {i} needs {self.k + 1} entries, got {len(row)}")
            for p in row:
                if p.nvars != 2:
                    raise ValueError("face data must be 2-variable polynomials")

    def face(self, i: int) -> tuple[Poly, ...]:
        return self.data[i]

    def replace(self, i: int, l: int, p: Poly) -> TraceTuple:
        rows = {f: list(r) for f, r in self.data.items()}
        rows[i][l] = p
        return TraceTuple(self.k, self.N, {f: tuple(r) for f, r in rows.items()})

    def __add__(self, other: TraceTuple) -> TraceTuple:
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other: TraceTuple) -> TraceTuple:
        return self._combine(other, lambda a, b: a - b)

    def scale(self, s) -> TraceTuple:
        return TraceTuple(self.k, self.N, {i: tuple(p.scale(s) for p in r) for i, r in self.data.items()})

    def _combine(self, other: TraceTuple, op) -> TraceTuple:
        if self.k != other.k:
            raise ValueError("trace tuples of different order")
        data = {i: tuple(op(a, b) for a, b in zip(self.data[i], other.data[i])) for i in FACES}
        return TraceTuple(self.k, max(self.N, other.N), data)

    @classmethod
    def zeros(cls, k: int, N: int = 0) -> TraceTuple:
        return cls(k, N, {i: tuple(Poly.zero(2) for _ in range(k + 1)) for i in FACES})

    def max_degree_excess(self) -> int:
        """Largest ``deg f_i^l - (N - l)``; nonpositive when degrees are in range."""
        worst = -math.inf
        for row in self.data.values():
            for l, p in enumerate(row):
                if p:
                    worst = max(worst, p.degree - (self.N - l))
        return worst


def normal_derivative_trace(u: Poly, i: int, l: int) -> Poly:
    """``(n_i . grad)^l u`` restricted to face ``i``, in chart coordinates."""
    n = face_frame(i).normal
    d = u
    for _ in range(l):
        d = poly_derive(d, n)
    return chart(i).pullback(d)


def normal_trace_tuple(u: Poly, k: int, N: int | None = None) -> TraceTuple:
    """``(u, d_n u, ..., d_n^k u)`` on every face."""
    if u.nvars != 3:
        raise ValueError("u must be a 3-variable polynomial")
    if N is None:
        N = max(int(u.degree), 0) if u else 0
    data = {}
    for i in FACES:
        n = face_frame(i).normal
        ch = chart(i)
        row = []
        d = u
        for l in range(k + 1):
            if l:
                d = poly_derive(d, n)
            row.append(ch.pullback(d))
        data[i] = tuple(row)
    return TraceTuple(k, N, data)


# ---------------------------------------------------------------------------
# boundary derivative tensors


def _frame_vectors(frame: FaceFrame) -> tuple[tuple[Scalar, ...], ...]:
    return (frame.tau1, frame.tau2, frame.normal)


def _mixing_weights(frame: FaceFrame, m: int) -> dict[tuple[int, ...], dict[tuple[int, int, int], Scalar]]:
    """For each index key, ``alpha -> sum over phi in M(alpha) of prod phi(t)[I_t]``."""
    vecs = _frame_vectors(frame)
    out: dict = {}
    for key in combinations_with_replacement((1, 2, 3), m):
        buckets: dict = {}
        for seq in product(range(3), repeat=m):
            w = Scalar(1)
            for s, a in zip(seq, key):
                w = w * vecs[s][a - 1]
                if not w:
                    break
            if not w:
                continue
            alpha = (seq.count(0), seq.count(1), seq.count(2))
            buckets[alpha] = buckets.get(alpha, Scalar(0)) + w
        out[key] = {a: w for a, w in buckets.items() if w}
    return out


def boundary_derivative_tensor(F: TraceTuple, i: int, m: int, frame: FaceFrame | None = None) -> SymTensorPoly:
    """The order-``m`` derivative tensor on face ``i`` rebuilt from ``F``.

    Entries are polynomials in the chart coordinates of face ``i``.
    For traces of a smooth ``u`` this is ``D^m u`` on the face.
    """
    if not 0 <= m <= F.k:
        raise ValueError(f"order m={m} outside 0..{F.k}")
    frame = frame or face_frame(i)
    if m == 0:
        return SymTensorPoly.scalar(F.data[i][0])
    d1 = chart_direction(i, frame.tau1)
    d2 = chart_direction(i, frame.tau2)
    cache: dict[tuple[int, int, int], Poly] = {}

    def tangential(alpha: tuple[int, int, int]) -> Poly:
        p = cache.get(alpha)
        if p is None:
            a1, a2, a3 = alpha
            if a1:
                p = poly_derive(tangential((a1 - 1, a2, a3)), d1)
            elif a2:
                p = poly_derive(tangential((0, a2 - 1, a3)), d2)
            else:
                p = F.data[i][a3]
            cache[alpha] = p
        return p

    weights = _mixing_weights(frame, m)

    def entry(key: tuple[int, ...]) -> Poly:
        total = Poly.zero(2)
        for alpha, w in weights[key].items():
            total = total + tangential(alpha).scale(w)
        return total

    return SymTensorPoly.from_function(m, 2, entry)


def derivative_tensor(u: Poly, m: int) -> SymTensorPoly:
    """Symmetric derivative tensor ``D^m u`` in ambient coordinates."""

    def entry(key: tuple[int, ...]) -> Poly:
        p = u
        for a in key:
            p = p.partial(a - 1)
        return p

    return SymTensorPoly.from_function(m, u.nvars, entry)


# ---------------------------------------------------------------------------
# compatibility


@dataclass(frozen=True)
class Violation:
    kind: str  # "degree", "edge" or "edge_derivative"
    face: int | None = None
    edge: tuple[int, int] | None = None
    m: int = 0
    l: int = 0
    detail: str = ""

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "m": self.m}
        if self.face is not None:
            out["face"] = self.face
        if self.edge is not None:
            out["edge"] = list(self.edge)
            out["l"] = self.l
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class CompatibilityReport:
    k: int
    N: int
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "N": self.N,
            "ok": self.ok,
            "violations": [v.to_dict() for v in self.violations],
        }


def _directional_power(t: SymTensorPoly, direction, l: int) -> SymTensorPoly:
    for _ in range(l):
        t = t.map(lambda p: poly_derive(p, direction))
    return t


def _contracted_side(F: TraceTuple, own: int, other: int, l: int, m: int, frames) -> SymTensorPoly:
    """``b_other^{(l)} . d^l_{b_own} D_own^m`` pulled back to the reference triangle."""
    i, j = min(own, other), max(own, other)
    ef = edge_frame(i, j)
    b_own, b_other = (ef.b_ij, ef.b_ji) if own == i else (ef.b_ji, ef.b_ij)
    tensor = boundary_derivative_tensor(F, own, m, frames.get(own))
    if l:
        tensor = _directional_power(tensor, chart_direction(own, b_own), l)
        for _ in range(l):
            tensor = tensor.contract(b_other)
    emap = edge_chart_maps(i, j)[0 if own == i else 1]
    return tensor.map(emap.pullback)


def edge_mismatch(F: TraceTuple, i: int, j: int, l: int, m: int, frames: Mapping[int, FaceFrame] | None = None) -> SymTensorPoly:
    """Contracted difference ``H_ij`` of order ``m - l`` on the reference triangle.

    Its entries vanish on ``x2 = 0`` exactly when the corresponding
    edge condition holds.
    """
    if i > j:
        i, j = j, i
    if not 0 <= l <= m <= F.k:
        raise ValueError("need 0 <= l <= m <= k")
    frames = dict(frames or {})
    return _contracted_side(F, i, j, l, m, frames) - _contracted_side(F, j, i, l, m, frames)


def _vanishes_on_edge(p: Poly) -> bool:
    return all(e[1] >= 1 for e in p.terms)


def edge_mismatch_factor(F: TraceTuple, i: int, j: int, l: int, m: int, n: int = 0) -> SymTensorPoly:
    """``d_{x1}^n G`` where ``H_ij = x2 * G`` (exact division).

    Raises :class:`NotDivisible` when an edge condition fails.
    """
    H = edge_mismatch(F, i, j, l, m)
    G = H.map(lambda p: poly_exact_divide(p, "x2", 1))
    if n:
        G = G.map(lambda p: p.partial(0, n))
    return G


def check_polynomial_compatibility(F: TraceTuple, frames: Mapping[int, FaceFrame] | None = None) -> CompatibilityReport:
    """Every violated degree bound and edge condition of ``F``."""
    frames = dict(frames or {})
    report = CompatibilityReport(F.k, F.N)
    for i in FACES:
        for m, p in enumerate(F.data[i]):
            if p and p.degree > F.N - m:
                report.violations.append(
                    Violation("degree", face=i, m=m, detail=f"degree {p.degree} > {F.N - m}")
                )
    for i, j in EDGES:
        for m in range(F.k + 1):
            H = edge_mismatch(F, i, j, 0, m, frames)
            bad = [key for key, p in H.items() if not _vanishes_on_edge(p)]
            if bad:
                report.violations.append(
                    Violation("edge", edge=(i, j), m=m, detail=f"{len(bad)} tensor entries differ")
                )
        for l in range(1, F.k + 1):
            H = edge_mismatch(F, i, j, l, F.k, frames)
            bad = [key for key, p in H.items() if not _vanishes_on_edge(p)]
            if bad:
                report.violations.append(
                    Violation("edge_derivative", edge=(i, j), m=F.k, l=l, detail=f"{len(bad)} tensor entries differ")
                )
    return report
