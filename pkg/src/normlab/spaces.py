"""Finite-dimensional normed spaces and their norms.

A space is one of three immutable descriptions:

* ``Polyhedral(ball)`` -- norm is the gauge of a symmetric polytope,
* ``Lp(p, dim)`` -- the usual p-norm on R^dim (``p = inf`` allowed),
* ``DirectSum(p, left, right)`` -- pairs ``(x, y)`` normed by the p-combination
  of the summand norms; the left block comes first in coordinates.

Vectors and functionals are plain numpy arrays; a functional acts by the dot
product. Every function accepts a single vector of shape ``(d,)`` or a batch
of shape ``(k, d)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

from . import polytope
from .config import DEFAULT_TOL, Tolerances
from .errors import CapabilityError, InputError
from .polytope import PolyhedralBall

INF = float("inf")


def conjugate(p: float) -> float:
    if p == 1:
        return INF
    if p == INF:
        return 1.0
    return p / (p - 1.0)


def _check_p(p) -> float:
    p = float(p)
    if not (p >= 1.0):
        raise InputError(f"exponent p must lie in [1, inf], got {p!r}")
    return p


@dataclass(frozen=True, eq=False)
class Polyhedral:
    ball: PolyhedralBall

    @property
    def dim(self) -> int:
        return self.ball.dim

    @property
    def polytope(self) -> PolyhedralBall:
        return self.ball


@dataclass(frozen=True)
class Lp:
    p: float
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "p", _check_p(self.p))
        if int(self.dim) != self.dim or self.dim < 1:
            raise InputError(f"dimension must be a positive integer, got {self.dim!r}")
        object.__setattr__(self, "dim", int(self.dim))

    @cached_property
    def polytope(self) -> PolyhedralBall:
        if self.dim == 1:
            return polytope.segment()
        if self.p == INF:
            ball = polytope.segment()
            for _ in range(self.dim - 1):
                ball = polytope.product(ball, polytope.segment())
            return ball
        if self.p == 1:
            ball = polytope.segment()
            for _ in range(self.dim - 1):
                ball = polytope.free_sum(ball, polytope.segment())
            return ball
        raise CapabilityError(f"l_{self.p:g} has no polyhedral unit ball")


@dataclass(frozen=True, eq=False)
class DirectSum:
    p: float
    left: "Space"
    right: "Space"

    def __post_init__(self):
        object.__setattr__(self, "p", _check_p(self.p))

    @property
    def dim(self) -> int:
        return self.left.dim + self.right.dim

    def split(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        k = self.left.dim
        return z[..., :k], z[..., k:]

    @cached_property
    def polytope(self) -> PolyhedralBall:
        if self.p == INF:
            return polytope.product(self.left.polytope, self.right.polytope)
        if self.p == 1:
            return polytope.free_sum(self.left.polytope, self.right.polytope)
        raise CapabilityError(f"a {self.p:g}-sum has no polyhedral unit ball")


Space = Union[Polyhedral, Lp, DirectSum]


def is_polyhedral(space: Space) -> bool:
    """Whether ``space.polytope`` is available (decided structurally, no construction)."""
    if isinstance(space, Polyhedral):
        return True
    if isinstance(space, Lp):
        return space.dim == 1 or space.p in (1.0, INF)
    return space.p in (1.0, INF) and is_polyhedral(space.left) and is_polyhedral(space.right)


def coords(space: Space, x, name: str = "x") -> np.ndarray:
    a = np.asarray(x, dtype=float)
    if a.ndim not in (1, 2) or a.shape[-1] != space.dim:
        raise InputError(f"{name} must have {space.dim} coordinates, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError(f"{name} has non-finite entries")
    return a


def _out(v):
    return float(v) if np.ndim(v) == 0 else v


def _combine(a, b, p: float):
    if p == INF:
        return np.maximum(a, b)
    if p == 1:
        return a + b
    return (a ** p + b ** p) ** (1.0 / p)


def _pnorm(x: np.ndarray, p: float):
    if p == INF:
        return np.abs(x).max(axis=-1)
    if p == 1:
        return np.abs(x).sum(axis=-1)
    return (np.abs(x) ** p).sum(axis=-1) ** (1.0 / p)


def _norm(space: Space, x: np.ndarray):
    if isinstance(space, Polyhedral):
        return (x @ space.ball.facets.T).max(axis=-1)
    if isinstance(space, Lp):
        return _pnorm(x, space.p)
    xl, xr = space.split(x)
    return _combine(_norm(space.left, xl), _norm(space.right, xr), space.p)


def _dual_norm(space: Space, f: np.ndarray):
    if isinstance(space, Polyhedral):
        return (f @ space.ball.vertices.T).max(axis=-1)
    if isinstance(space, Lp):
        return _pnorm(f, conjugate(space.p))
    fl, fr = space.split(f)
    return _combine(_dual_norm(space.left, fl), _dual_norm(space.right, fr), conjugate(space.p))


def norm(space: Space, x):
    """Norm of ``x`` (or of each row of a batch)."""
    return _out(_norm(space, coords(space, x)))


def dual_norm(space: Space, f):
    """Dual norm ``sup{f(x) : ||x|| <= 1}`` of a functional."""
    return _out(_dual_norm(space, coords(space, f, "f")))


def dual_space(space: Space) -> Space:
    """A space whose norm is the dual norm of ``space`` in the same coordinates."""
    if isinstance(space, Polyhedral):
        return Polyhedral(space.ball.polar())
    if isinstance(space, Lp):
        return Lp(conjugate(space.p), space.dim)
    return DirectSum(conjugate(space.p), dual_space(space.left), dual_space(space.right))


def polar(space: Space) -> PolyhedralBall:
    """The dual unit ball, for spaces whose unit ball is a polytope."""
    return space.polytope.polar()


def face_of_ball(space: Space, f, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Extreme points of the face of ``B_X`` on which ``f`` attains its norm."""
    f = coords(space, f, "f")
    if f.ndim != 1:
        raise InputError("face_of_ball takes a single functional")
    if not np.any(f):
        raise InputError("f must be nonzero")
    ball = space.polytope
    return ball.vertices[list(ball.face_indices(f, tol))]


def unit(space: Space, x, name: str = "x") -> tuple[np.ndarray, float]:
    """Return ``(x / ||x||, ||x||)``; rejects the zero vector."""
    x = coords(space, x, name)
    if x.ndim != 1:
        raise InputError(f"{name} must be a single vector")
    nx = float(_norm(space, x))
    if nx == 0.0:
        raise InputError(f"{name} must be nonzero")
    return x / nx, nx
