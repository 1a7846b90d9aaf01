"""Centrally symmetric polytopes as unit balls.

A ball is stored three ways at once: its vertices (extreme points), its facet
functionals ``h`` with ``B = {x : h(x) <= 1 for all h}``, and the facet/vertex
incidence table. Facet functionals are exactly the vertices of the polar
ball, so passing to the dual is a relabelling.

General hulls are only built in the plane. Higher-dimensional balls come from
the product (``max``-sum) and free-sum (``l1``-sum) of lower-dimensional ones,
whose combinatorics are known in closed form.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import CapabilityError, InputError

Incidence = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class PolyhedralBall:
    vertices: np.ndarray
    facets: np.ndarray
    incidence: Incidence

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @cached_property
    def vertex_facets(self) -> Incidence:
        """For each vertex, the sorted indices of the facets containing it."""
        table: list[list[int]] = [[] for _ in range(len(self.vertices))]
        for j, verts in enumerate(self.incidence):
            for i in verts:
                table[i].append(j)
        return tuple(tuple(row) for row in table)

    def polar(self) -> "PolyhedralBall":
        if self.dim == 2:
            return polygon(self.facets)
        return PolyhedralBall(
            vertices=self.facets.copy(),
            facets=self.vertices.copy(),
            incidence=self.vertex_facets,
        )

    def face_indices(self, f, tol: Tolerances = DEFAULT_TOL) -> tuple[int, ...]:
        """Vertices where the linear functional ``f`` attains its maximum over the ball."""
        vals = self.vertices @ np.asarray(f, dtype=float)
        top = vals.max()
        if top <= 0:
            raise InputError("zero functional has no supporting face")
        return tuple(int(i) for i in np.flatnonzero(vals >= top - tol.tau_face * top))

    def check(self, tol: Tolerances = DEFAULT_TOL) -> None:
        """Raise InputError unless the stored representations are consistent."""
        V, H = self.vertices, self.facets
        if V.ndim != 2 or H.ndim != 2 or V.shape[1] != H.shape[1]:
            raise InputError("vertices and facets must be 2-D arrays of equal width")
        if not (np.all(np.isfinite(V)) and np.all(np.isfinite(H))):
            raise InputError("non-finite coordinates in polytope")
        if len(self.incidence) != len(H):
            raise InputError("incidence table must have one row per facet")
        scale = np.abs(V).max()
        for v in V:
            if np.min(np.abs(V + v).max(axis=1)) > tol.tau_v * max(scale, 1.0):
                raise InputError(f"ball is not symmetric: -{v.tolist()} is not a vertex")
        vals = H @ V.T
        if np.any(np.abs(vals.max(axis=0) - 1.0) > tol.tau_norm):
            raise InputError("some vertex does not lie on the unit sphere")
        for j, row in enumerate(vals):
            on = tuple(int(i) for i in np.flatnonzero(row >= 1.0 - tol.tau_face))
            if on != tuple(sorted(self.incidence[j])):
                raise InputError(f"incidence of facet {j} disagrees with its functional")
            if len(on) < self.dim:
                raise InputError(f"facet {j} has fewer than {self.dim} vertices")


def segment(radius: float = 1.0) -> PolyhedralBall:
    """The interval [-radius, radius] as a one-dimensional ball."""
    if not radius > 0:
        raise InputError("segment radius must be positive")
    return PolyhedralBall(
        vertices=np.array([[radius], [-radius]]),
        facets=np.array([[1.0 / radius], [-1.0 / radius]]),
        incidence=((0,), (1,)),
    )


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points: np.ndarray, eps: float) -> np.ndarray:
    # Andrew's monotone chain; points within eps of a hull edge are dropped.
    pts = sorted(map(tuple, np.unique(points, axis=0)))
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= eps:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= eps:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1], dtype=float)


def polygon(points, tol: Tolerances = DEFAULT_TOL) -> PolyhedralBall:
    """Unit ball of a planar polyhedral norm from a symmetric point set.

    Non-extreme input points are discarded. Vertices are returned in
    counterclockwise order starting from the smallest polar angle in
    ``[0, 2*pi)``; facet ``k`` joins vertices ``k`` and ``k + 1`` (cyclically).
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise InputError("polygon vertices must be a list of 2-vectors")
    if not np.all(np.isfinite(pts)):
        raise InputError("polygon vertices must be finite")
    scale = np.abs(pts).max() if pts.size else 0.0
    if scale == 0:
        raise InputError("polygon needs nonzero vertices")
    hull = _hull_2d(pts, tol.tau_v * scale * scale)
    if len(hull) < 4:
        raise InputError("polygon is degenerate (no interior)")

    ang = np.mod(np.arctan2(hull[:, 1], hull[:, 0]), 2 * np.pi)
    ang[ang > 2 * np.pi - 1e-12] = 0.0
    hull = np.roll(hull, -int(np.argmin(ang)), axis=0)

    m = len(hull)
    facets = np.empty_like(hull)
    for k in range(m):
        facets[k] = np.linalg.solve(np.stack([hull[k], hull[(k + 1) % m]]), np.ones(2))
    incidence = tuple(tuple(sorted((k, (k + 1) % m))) for k in range(m))
    ball = PolyhedralBall(hull, facets, incidence)
    ball.check(tol)
    return ball


def product(a: PolyhedralBall, b: PolyhedralBall) -> PolyhedralBall:
    """Ball of the max-combination norm: the Cartesian product ``a x b``."""
    na, nb = len(a.vertices), len(b.vertices)
    vertices = np.array([np.concatenate([v, w]) for v in a.vertices for w in b.vertices])
    if vertices.shape[1] == 2:
        return polygon(vertices)
    facets = np.vstack([
        np.hstack([a.facets, np.zeros((len(a.facets), b.dim))]),
        np.hstack([np.zeros((len(b.facets), a.dim)), b.facets]),
    ])
    incidence = tuple(
        tuple(sorted(i * nb + j for i in row for j in range(nb))) for row in a.incidence
    ) + tuple(
        tuple(sorted(i * nb + j for i in range(na) for j in row)) for row in b.incidence
    )
    return PolyhedralBall(vertices, facets, incidence)


def free_sum(a: PolyhedralBall, b: PolyhedralBall) -> PolyhedralBall:
    """Ball of the l1-combination norm: ``conv(a x {0} U {0} x b)``."""
    na = len(a.vertices)
    vertices = np.vstack([
        np.hstack([a.vertices, np.zeros((na, b.dim))]),
        np.hstack([np.zeros((len(b.vertices), a.dim)), b.vertices]),
    ])
    if vertices.shape[1] == 2:
        return polygon(vertices)
    facets = np.array([np.concatenate([h, k]) for h in a.facets for k in b.facets])
    incidence = tuple(
        tuple(sorted(ra)) + tuple(na + j for j in sorted(rb))
        for ra in a.incidence
        for rb in b.incidence
    )
    return PolyhedralBall(vertices, facets, incidence)


def from_vertices(points, tol: Tolerances = DEFAULT_TOL) -> PolyhedralBall:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or len(pts) == 0:
        raise InputError("vertices must be a non-empty list of coordinate lists")
    d = pts.shape[1]
    if d == 1:
        r = np.abs(pts).max()
        if r == 0 or np.abs(pts).min() == 0:
            raise InputError("a one-dimensional ball needs vertices +-r with r > 0")
        if abs(pts.max() + pts.min()) > tol.tau_v * r:
            raise InputError("one-dimensional ball is not symmetric")
        return segment(r)
    if d == 2:
        return polygon(pts, tol)
    raise CapabilityError(
        "polyhedral balls of dimension > 2 must be built from direct sums"
    )
