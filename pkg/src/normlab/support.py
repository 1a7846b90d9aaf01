"""Supporting functionals ``J(x)`` and the constants built from them.

``J(x)`` is a face of the dual unit ball, stored by its extreme points. For
polytopal norms those are the facet functionals active at ``x``; for smooth
l_p norms it is a single functional; for p-sums it is assembled from the
summands' faces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import CapabilityError, InputError
from .spaces import (
    INF,
    DirectSum,
    Lp,
    Space,
    _dual_norm,
    _norm,
    coords,
    is_polyhedral,
    unit,
)


@dataclass(frozen=True, eq=False)
class SupportFace:
    x: np.ndarray
    vertices: np.ndarray
    attained_value: float
    # Set when only a subset of the face is known to be exact.
    inclusion_only: bool = False


@dataclass(frozen=True, eq=False)
class SmoothnessReport:
    x: np.ndarray
    eps_x: float
    is_smooth: bool
    is_approx_smooth: bool
    face: np.ndarray = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "x": self.x.tolist(),
            "eps": self.eps_x,
            "face": self.face.tolist(),
            "is_smooth": self.is_smooth,
            "is_approx_smooth": self.is_approx_smooth,
        }


@dataclass(frozen=True)
class SpaceConstants:
    E: float
    S: float
    R: float

    def to_dict(self) -> dict:
        return {"E": self.E, "S": self.S, "R": self.R}


def unique_rows(a: np.ndarray, atol: float) -> np.ndarray:
    keep: list[np.ndarray] = []
    for row in a:
        if not any(np.abs(row - k).max() <= atol for k in keep):
            keep.append(row)
    return np.array(keep)


def _polytope_face(space: Space, u: np.ndarray, tol: Tolerances) -> np.ndarray:
    H = space.polytope.facets
    vals = H @ u
    top = vals.max()
    return H[vals >= top - tol.tau_face * abs(top)]


def support_set(space: Space, x, tol: Tolerances = DEFAULT_TOL) -> SupportFace:
    """Extreme points of ``J(x) = {f : ||f||_* = 1, f(x) = ||x||}``."""
    u, nx = unit(space, x)
    x = np.asarray(x, dtype=float)
    if is_polyhedral(space):
        return SupportFace(x, _polytope_face(space, u, tol), nx)
    if isinstance(space, Lp):
        p = space.p
        f = np.sign(u) * np.abs(u) ** (p - 1.0)
        return SupportFace(x, f[None, :], nx)
    return direct_sum_support(space, x, tol)


def direct_sum_support(space: DirectSum, z, tol: Tolerances = DEFAULT_TOL) -> SupportFace:
    """``J((x, y))`` in ``X (+)_p Y`` assembled from the summand faces.

    For ``1 < p < inf`` the face is the image of ``J(x) x J(y)`` under
    ``(f, g) -> (a f, b g)`` with ``a = ||x||^(p-1) / N^(p-1)`` and likewise
    ``b``, where ``N = ||(x, y)||``. For ``p = 1`` it is ``J(x) x J(y)``, with
    the whole dual ball standing in for the face of a zero block. For
    ``p = inf`` it is ``J(x) x {0}`` or ``{0} x J(y)`` according to the larger
    block; when the block norms tie, the returned extremes
    ``J(x) x {0} U {0} x J(y)`` are flagged ``inclusion_only``.
    """
    if not isinstance(space, DirectSum):
        raise InputError("direct_sum_support needs a DirectSum space")
    z = coords(space, z)
    x, y = space.split(z)
    X, Y = space.left, space.right
    nx, ny = float(_norm(X, x)), float(_norm(Y, y))
    total = float(_norm(space, z))
    if total == 0.0:
        raise InputError("x must be nonzero")
    p = space.p
    zx, zy = np.zeros(X.dim), np.zeros(Y.dim)

    def face(S, v):
        return support_set(S, v, tol).vertices

    def dual_ball_extremes(S):
        if not is_polyhedral(S):
            raise CapabilityError("dual ball of a non-polyhedral summand has infinitely many extreme points")
        return S.polytope.facets

    inclusion_only = False
    if 1.0 < p < INF:
        scale = total ** (p - 1.0)
        a, b = nx ** (p - 1.0) / scale, ny ** (p - 1.0) / scale
        F = face(X, x) if nx > 0 else zx[None, :]
        G = face(Y, y) if ny > 0 else zy[None, :]
        verts = [np.concatenate([a * f, b * g]) for f in F for g in G]
    elif p == 1.0:
        F = face(X, x) if nx > 0 else dual_ball_extremes(X)
        G = face(Y, y) if ny > 0 else dual_ball_extremes(Y)
        verts = [np.concatenate([f, g]) for f in F for g in G]
    else:
        tie = abs(nx - ny) <= tol.tau_norm * total
        verts = []
        if nx > ny or tie:
            verts += [np.concatenate([f, zy]) for f in face(X, x)]
        if ny > nx or tie:
            verts += [np.concatenate([zx, g]) for g in face(Y, y)]
        inclusion_only = tie
    verts = unique_rows(np.array(verts), tol.tau_v)
    return SupportFace(z, verts, total, inclusion_only)


def _pairwise_max(points: np.ndarray, normfn) -> float:
    if len(points) < 2:
        return 0.0
    i, j = np.triu_indices(len(points), k=1)
    return float(np.max(normfn(points[i] - points[j])))


def face_diameter(space: Space, face: np.ndarray) -> float:
    """Diameter of a set of functionals in the dual norm."""
    return _pairwise_max(np.asarray(face, dtype=float), lambda d: _dual_norm(space, d))


def diam_support(space: Space, x, tol: Tolerances = DEFAULT_TOL) -> float:
    """``diam J(x)``: the least ``eps`` for which ``x`` is eps-smooth."""
    return face_diameter(space, support_set(space, x, tol).vertices)


def smoothness_report(space: Space, x, tol: Tolerances = DEFAULT_TOL) -> SmoothnessReport:
    face = support_set(space, x, tol)
    eps = face_diameter(space, face.vertices)
    return SmoothnessReport(
        x=coords(space, x),
        eps_x=eps,
        is_smooth=eps <= tol.tau_norm,
        is_approx_smooth=eps <= 2.0 - tol.tau_strict,
        face=face.vertices,
    )


def set_diameter(space: Space, points: np.ndarray) -> float:
    """Diameter of a finite point set in the norm of ``space``."""
    return _pairwise_max(np.asarray(points, dtype=float), lambda d: _norm(space, d))


def space_constants(space: Space, tol: Tolerances = DEFAULT_TOL) -> SpaceConstants:
    """``(E, S, R)`` for a space with a polytopal unit ball.

    E is the largest ``diam J(v)`` over vertices ``v`` (other sphere points have
    smaller faces). S is the largest diameter of a supporting face of the ball,
    found by maximising each facet functional over the vertices; R is the
    longest segment on the sphere, read off the stored incidence table.
    """
    if not is_polyhedral(space):
        raise CapabilityError("space constants need a polytopal unit ball")
    ball = space.polytope
    E = max(diam_support(space, v, tol) for v in ball.vertices)
    S = max(
        set_diameter(space, ball.vertices[list(ball.face_indices(h, tol))])
        for h in ball.facets
    )
    R = max(set_diameter(space, ball.vertices[list(row)]) for row in ball.incidence)
    return SpaceConstants(E=E, S=S, R=R)


def adjacent_pair_E(space: Space) -> float:
    """E via pairs of dual vertices whose facets meet.

    Independent of support_set: uses only the incidence table.
    """
    ball = space.polytope
    best = 0.0
    for facets in ball.vertex_facets:
        for i, j in combinations(facets, 2):
            best = max(best, float(_dual_norm(space, ball.facets[i] - ball.facets[j])))
    return best
