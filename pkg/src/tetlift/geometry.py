"""Reference tetrahedron combinatorics: faces, edges, frames and charts.

Vertices follow the usual labelling ``v1 = e3, v2 = e2, v3 = e1, v4 = 0``;
face ``i`` is the face opposite ``v_i``:

    face 1: z = 0        face 2: y = 0
    face 3: x = 0        face 4: x + y + z = 1

Every face carries a chart from the reference triangle and an affine
left inverse of that chart (projection along the normal followed by
reading off chart coordinates).  All maps here are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .poly import Poly
from .scalar import Scalar, as_scalar

__all__ = [
    "FACES",
    "EDGES",
    "VERTICES",
    "FaceFrame",
    "EdgeFrame",
    "AffineMap",
    "face_frame",
    "edge_frame",
    "edge_pair_maps",
    "chart",
    "chart_inverse",
    "volume_map",
    "face_vertices",
    "edge_chart_maps",
    "chart_direction",
    "rotated_frame",
    "face_plane",
    "centroid",
    "cross",
    "dot",
]

FACES = (1, 2, 3, 4)
EDGES = tuple(combinations(FACES, 2))

VERTICES = {
    1: (0, 0, 1),
    2: (0, 1, 0),
    3: (1, 0, 0),
    4: (0, 0, 0),
}

F = Fraction
THIRD_SQRT3 = Scalar(0, F(1, 3))  # 1/sqrt(3)


def dot(u, v) -> Scalar:
    total = Scalar(0)
    for a, b in zip(u, v):
        total = total + as_scalar(a) * as_scalar(b)
    return total


def cross(u, v) -> tuple[Scalar, Scalar, Scalar]:
    u = [as_scalar(a) for a in u]
    v = [as_scalar(a) for a in v]
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _vec(*xs) -> tuple[Scalar, ...]:
    return tuple(as_scalar(x) for x in xs)


@dataclass(frozen=True)
class AffineMap:
    """``x -> matrix @ x + offset`` with exact entries."""

    matrix: tuple[tuple[Scalar, ...], ...]
    offset: tuple[Scalar, ...]

    @classmethod
    def make(cls, matrix, offset) -> AffineMap:
        return cls(
            tuple(tuple(as_scalar(a) for a in row) for row in matrix),
            tuple(as_scalar(c) for c in offset),
        )

    @property
    def dim_in(self) -> int:
        return len(self.matrix[0])

    @property
    def dim_out(self) -> int:
        return len(self.matrix)

    def __call__(self, point) -> tuple[Scalar, ...]:
        pt = [as_scalar(x) for x in point]
        return tuple(dot(row, pt) + c for row, c in zip(self.matrix, self.offset))

    def then(self, outer: AffineMap) -> AffineMap:
        """The composition ``outer o self``."""
        mat = []
        for row in outer.matrix:
            mat.append(
                tuple(
                    dot(row, [self.matrix[r][c] for r in range(self.dim_out)])
                    for c in range(self.dim_in)
                )
            )
        off = tuple(dot(row, self.offset) + c for row, c in zip(outer.matrix, outer.offset))
        return AffineMap(tuple(mat), off)

    def linear(self, v) -> tuple[Scalar, ...]:
        return tuple(dot(row, v) for row in self.matrix)

    def pullback(self, p: Poly) -> Poly:
        """``p o self`` as a polynomial in the input variables."""
        return p.compose(self.matrix, self.offset)


@dataclass(frozen=True)
class FaceFrame:
    face_id: int
    tau1: tuple[Scalar, Scalar, Scalar]
    tau2: tuple[Scalar, Scalar, Scalar]
    normal: tuple[Scalar, Scalar, Scalar]


@dataclass(frozen=True)
class EdgeFrame:
    """Edge ``(i, j)`` with tangent ``t`` and binormals ``b_ij, b_ji``.

    ``t`` is the edge vector ``b - a`` rather than its normalisation: the
    edges of face 4 not through the origin have length sqrt(2), which is
    not in Q(sqrt 3).  Every compatibility condition is homogeneous of
    equal degree in ``t`` on both sides, so the scaling is harmless.
    """

    edge_id: tuple[int, int]
    t: tuple[Scalar, Scalar, Scalar]
    b_ij: tuple[Scalar, Scalar, Scalar]
    b_ji: tuple[Scalar, Scalar, Scalar]


_NORMALS = {
    1: _vec(0, 0, -1),
    2: _vec(0, -1, 0),
    3: _vec(-1, 0, 0),
    4: (THIRD_SQRT3, THIRD_SQRT3, THIRD_SQRT3),
}

# Charts I_i: reference triangle -> face i.
_CHARTS = {
    1: AffineMap.make([[1, 0], [0, 1], [0, 0]], [0, 0, 0]),
    2: AffineMap.make([[1, 0], [0, 0], [0, 1]], [0, 0, 0]),
    3: AffineMap.make([[0, 0], [0, 1], [1, 0]], [0, 0, 0]),
    4: AffineMap.make([[1, 0], [0, 1], [-1, -1]], [0, 0, 1]),
}

# Left inverses: project along the normal, then read chart coordinates.
# For face 4 the projection is X - (X+Y+Z-1)/3 * (1,1,1).
_CHART_INVERSES = {
    1: AffineMap.make([[1, 0, 0], [0, 1, 0]], [0, 0]),
    2: AffineMap.make([[1, 0, 0], [0, 0, 1]], [0, 0]),
    3: AffineMap.make([[0, 0, 1], [0, 1, 0]], [0, 0]),
    4: AffineMap.make(
        [[F(2, 3), F(-1, 3), F(-1, 3)], [F(-1, 3), F(2, 3), F(-1, 3)]],
        [F(1, 3), F(1, 3)],
    ),
}

# Volume maps R_1i: (x1, x2, z) -> ambient point; each is an involution.
_VOLUME_MAPS = {
    1: AffineMap.make([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, 0, 0]),
    2: AffineMap.make([[1, 0, 0], [0, 0, 1], [0, 1, 0]], [0, 0, 0]),
    3: AffineMap.make([[0, 0, 1], [0, 1, 0], [1, 0, 0]], [0, 0, 0]),
    4: AffineMap.make([[1, 0, 0], [0, 1, 0], [-1, -1, -1]], [0, 0, 1]),
}


def _check_face(i: int) -> None:
    if i not in FACES:
        raise ValueError(f"face id must be in 1..4, got {i}")


def face_vertices(i: int) -> tuple[int, ...]:
    """Global vertex indices of face ``i`` (all but ``v_i``)."""
    _check_face(i)
    return tuple(v for v in VERTICES if v != i)


def chart(i: int) -> AffineMap:
    _check_face(i)
    return _CHARTS[i]


def chart_inverse(i: int) -> AffineMap:
    _check_face(i)
    return _CHART_INVERSES[i]


def volume_map(i: int) -> AffineMap:
    """The map ``R_1i`` carrying face 1 onto face ``i`` (identity for i = 1)."""
    _check_face(i)
    return _VOLUME_MAPS[i]


def face_plane(i: int) -> Poly:
    """Affine form vanishing on face ``i``, in ambient coordinates."""
    _check_face(i)
    if i == 4:
        return Poly.linear([1, 1, 1], -1)
    coord = {1: 2, 2: 1, 3: 0}[i]
    return Poly.var(coord, 3)


def _lowest_edge_tangent(i: int) -> tuple[Scalar, ...]:
    # lowest-index edge of face i is (min other face, i) or (i, min other)
    j = min(f for f in FACES if f != i)
    a, b = _shared_vertices(i, j)
    return tuple(as_scalar(q - p) for p, q in zip(VERTICES[a], VERTICES[b]))


# Face 4 has no unit tangent along an edge inside Q(sqrt 3); this
# orthonormal pair does live there: (2a + b)^2 + 3 b^2 = 2 with a + b + c = 0.
_FACE4_TAU1 = (
    Scalar(F(1, 2), F(-1, 6)),
    Scalar(0, F(1, 3)),
    Scalar(F(-1, 2), F(-1, 6)),
)


@lru_cache(maxsize=None)
def face_frame(i: int) -> FaceFrame:
    """Orthonormal tangents and outward unit normal of face ``i``.

    Faces 1-3 use the unit vector along their lowest-index edge as the
    first tangent.  Face 4 uses a fixed orthonormal pair in Q(sqrt 3).
    The second tangent is ``normal x tau1``.
    """
    _check_face(i)
    n = _NORMALS[i]
    tau1 = _FACE4_TAU1 if i == 4 else _lowest_edge_tangent(i)
    tau2 = cross(n, tau1)
    return FaceFrame(i, tau1, tau2, n)


def rotated_frame(frame: FaceFrame, cos, sin) -> FaceFrame:
    """The frame with tangents rotated in-plane; ``cos^2 + sin^2`` must be 1."""
    c, s = as_scalar(cos), as_scalar(sin)
    if c * c + s * s != 1:
        raise ValueError("rotation needs cos^2 + sin^2 == 1")
    t1 = tuple(c * a + s * b for a, b in zip(frame.tau1, frame.tau2))
    t2 = tuple(-s * a + c * b for a, b in zip(frame.tau1, frame.tau2))
    return FaceFrame(frame.face_id, t1, t2, frame.normal)


def _shared_vertices(i: int, j: int) -> tuple[int, int]:
    """The two vertices of edge ``(i, j)`` ordered lexicographically by coordinates."""
    shared = [v for v in VERTICES if v not in (i, j)]
    shared.sort(key=lambda v: VERTICES[v])
    return shared[0], shared[1]


@lru_cache(maxsize=None)
def edge_pair_maps(i: int, j: int) -> tuple[AffineMap, AffineMap]:
    """Affine maps ``F_ij, F_ji`` from the reference triangle onto faces i, j.

    ``(0,0) -> a``, ``(1,0) -> b``, ``(0,1) -> c_i`` (resp. ``c_j``), where
    ``a, b`` are the shared vertices and ``c_i`` the remaining vertex of face i.
    """
    _check_face(i)
    _check_face(j)
    if not i < j:
        raise ValueError("edge maps need i < j")
    a, b = _shared_vertices(i, j)
    pa, pb = VERTICES[a], VERTICES[b]
    # the vertex of face i off the edge is v_j, and vice versa
    maps = []
    for c in (j, i):
        pc = VERTICES[c]
        mat = [[pb[r] - pa[r], pc[r] - pa[r]] for r in range(3)]
        maps.append(AffineMap.make(mat, pa))
    return maps[0], maps[1]


@lru_cache(maxsize=None)
def edge_chart_maps(i: int, j: int) -> tuple[AffineMap, AffineMap]:
    """``F_ij`` and ``F_ji`` expressed in the chart coordinates of faces i and j."""
    fij, fji = edge_pair_maps(i, j)
    return fij.then(chart_inverse(i)), fji.then(chart_inverse(j))


@lru_cache(maxsize=None)
def edge_frame(i: int, j: int) -> EdgeFrame:
    a, b = _shared_vertices(i, j)
    t = tuple(as_scalar(q - p) for p, q in zip(VERTICES[a], VERTICES[b]))
    return EdgeFrame((i, j), t, cross(t, _NORMALS[i]), cross(t, _NORMALS[j]))


def chart_direction(i: int, v) -> tuple[Scalar, Scalar]:
    """Chart-coordinate velocity of an ambient direction tangent to face ``i``."""
    return chart_inverse(i).linear(v)


def centroid() -> tuple[Fraction, Fraction, Fraction]:
    return (F(1, 4), F(1, 4), F(1, 4))

