"""One-sided norm derivatives.

``rho_plus(x, y)`` and ``rho_minus(x, y)`` are the right and left derivatives
of ``t -> ||x + t y||^2 / 2`` at 0. Each is ``||x||`` times the max (min) of
``f(y)`` over ``J(x)``, and since ``J(x)`` is convex the extremes are attained
at its extreme points. ``rho_numeric`` evaluates the difference quotients
directly and serves as an independent check.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import InputError
from .spaces import Space, coords, norm
from .support import face_diameter, support_set


@dataclass(frozen=True, eq=False)
class DerivativePair:
    rho_plus: float
    rho_minus: float
    x: np.ndarray
    y: np.ndarray

    def to_dict(self) -> dict:
        return {
            "x": self.x.tolist(),
            "y": self.y.tolist(),
            "rho_plus": self.rho_plus,
            "rho_minus": self.rho_minus,
        }


def rho(space: Space, x, y, tol: Tolerances = DEFAULT_TOL) -> DerivativePair:
    face = support_set(space, x, tol)
    y = coords(space, y, "y")
    vals = face.vertices @ y
    nx = face.attained_value
    return DerivativePair(
        rho_plus=nx * float(vals.max()),
        rho_minus=nx * float(vals.min()),
        x=face.x,
        y=y,
    )


def rho_numeric(space: Space, x, y, lam: float, form: str = "unsquared") -> float:
    """Difference quotient for the norm derivative at step ``lam``.

    ``lam > 0`` approximates ``rho_plus``, ``lam < 0`` approximates
    ``rho_minus``. The ``"unsquared"`` form ``||x|| (||x + lam y|| - ||x||) / lam``
    is exact for polytopal norms once ``|lam|`` is below the nearest facet
    breakpoint. The ``"squared"`` form ``(||x + lam y||^2 - ||x||^2) / (2 lam)``
    carries an additional ``O(lam)`` bias.
    """
    x = coords(space, x)
    y = coords(space, y, "y")
    if lam == 0 or not np.isfinite(lam):
        raise InputError("lam must be finite and nonzero")
    nx = norm(space, x)
    if nx == 0:
        raise InputError("x must be nonzero")
    nxy = norm(space, x + lam * y)
    if form == "unsquared":
        return nx * (nxy - nx) / lam
    if form == "squared":
        return (nxy * nxy - nx * nx) / (2.0 * lam)
    raise InputError(f"unknown difference-quotient form {form!r}")


@dataclass(frozen=True)
class NumericSchedule:
    lams: tuple[float, ...]
    plus: tuple[float, ...]
    minus: tuple[float, ...]
    # False when the larger steps disagree with the trend of the two smallest,
    # which is what crossing a facet breakpoint looks like.
    settled: bool


def _consistent(lams, vals, rtol: float) -> bool:
    # Quotients behave like a + b*lam near 0; fit on the two smallest steps.
    order = np.argsort(np.abs(lams))
    lams, vals = np.asarray(lams)[order], np.asarray(vals)[order]
    if len(lams) < 3:
        return True
    b = (vals[1] - vals[0]) / (lams[1] - lams[0])
    pred = vals[0] + b * (lams - lams[0])
    return bool(np.all(np.abs(vals - pred) <= rtol * (1.0 + np.abs(vals[0]))))


def rho_numeric_schedule(
    space: Space, x, y, lams=(1e-4, 1e-5, 1e-6), form: str = "unsquared", rtol: float = 1e-6
) -> NumericSchedule:
    plus = tuple(rho_numeric(space, x, y, lam, form) for lam in lams)
    minus = tuple(rho_numeric(space, x, y, -lam, form) for lam in lams)
    settled = _consistent(lams, plus, rtol) and _consistent([-t for t in lams], minus, rtol)
    return NumericSchedule(tuple(lams), plus, minus, settled)


def smoothness_gap(space: Space, x, tol: Tolerances = DEFAULT_TOL) -> float:
    """``sup over unit y`` of ``rho_plus(x, y) - rho_minus(x, y)``.

    For ``f, g`` in ``J(x)`` the supremum of ``(f - g)(y)`` over the unit sphere
    is the dual norm of ``f - g``, so the gap is ``||x||`` times the dual
    diameter of the face.
    """
    face = support_set(space, x, tol)
    return face.attained_value * face_diameter(space, face.vertices)
