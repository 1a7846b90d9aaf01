"""Birkhoff-James orthogonality, its approximate version, and right-additivity checks.

``x`` is BJ-orthogonal to ``y`` when ``||x + t y|| >= ||x||`` for every real
``t``, equivalently when some ``f`` in ``J(x)`` annihilates ``y``. ``x`` is
eps-orthogonal to ``y`` when some ``f`` in ``J(x)`` has ``|f(y)| <= eps ||y||``;
the least such eps is ``eps_min``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import InputError
from .spaces import Space, coords, norm
from .support import face_diameter, support_set

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"


@dataclass(frozen=True, eq=False)
class OrthogonalityReport:
    x: np.ndarray
    y: np.ndarray
    is_bj: bool
    eps_min: float
    witness: np.ndarray

    def to_dict(self) -> dict:
        return {
            "x": self.x.tolist(),
            "y": self.y.tolist(),
            "is_bj": self.is_bj,
            "eps_min": self.eps_min,
            "witness": self.witness.tolist(),
        }


@dataclass(frozen=True, eq=False)
class AdditivityReport:
    x: np.ndarray
    y1: np.ndarray
    y2: np.ndarray
    eps_x: float
    hyp_42: bool
    hyp_43: bool
    hyp_46: bool
    eps_out: float
    verdicts: dict

    def to_dict(self) -> dict:
        return {
            "x": self.x.tolist(),
            "y1": self.y1.tolist(),
            "y2": self.y2.tolist(),
            "eps_x": self.eps_x,
            "hyp_42": self.hyp_42,
            "hyp_43": self.hyp_43,
            "hyp_46": self.hyp_46,
            "eps_out": self.eps_out,
            "verdicts": dict(self.verdicts),
        }


def _min_abs_over_face(face: np.ndarray, y: np.ndarray) -> tuple[float, np.ndarray]:
    # |linear| over a polytope: zero on a sign change, else attained at a vertex.
    vals = face @ y
    lo, hi = int(np.argmin(vals)), int(np.argmax(vals))
    if vals[lo] <= 0.0 <= vals[hi]:
        if vals[hi] == vals[lo]:
            return 0.0, face[lo]
        t = vals[hi] / (vals[hi] - vals[lo])
        return 0.0, t * face[lo] + (1.0 - t) * face[hi]
    k = int(np.argmin(np.abs(vals)))
    return float(abs(vals[k])), face[k]


def orthogonality_report(space: Space, x, y, tol: Tolerances = DEFAULT_TOL) -> OrthogonalityReport:
    return _report(space, support_set(space, x, tol), y, tol)


def _report(space: Space, face, y, tol: Tolerances) -> OrthogonalityReport:
    y = coords(space, y, "y")
    ny = norm(space, y)
    if ny == 0.0:
        return OrthogonalityReport(face.x, y, True, 0.0, face.vertices[0])
    vals = face.vertices @ y
    slack = tol.tau_norm * ny
    is_bj = bool(vals.min() <= slack and vals.max() >= -slack)
    best, witness = _min_abs_over_face(face.vertices, y)
    return OrthogonalityReport(face.x, y, is_bj, min(best / ny, 1.0), witness)


def is_bj_orthogonal(space: Space, x, y, tol: Tolerances = DEFAULT_TOL) -> bool:
    return orthogonality_report(space, x, y, tol).is_bj


def eps_min(space: Space, x, y, tol: Tolerances = DEFAULT_TOL) -> float:
    """Least eps with ``|f(y)| <= eps ||y||`` for some ``f`` in ``J(x)``; 0 for ``y = 0``."""
    return orthogonality_report(space, x, y, tol).eps_min


def def_inequality_slack(space: Space, x, y, eps: float, lams) -> np.ndarray:
    """``||x + t y||^2 - ||x||^2 + 2 eps ||x|| ||t y||`` at each ``t`` in ``lams``."""
    x = coords(space, x)
    y = coords(space, y, "y")
    lams = np.asarray(lams, dtype=float)
    nx = norm(space, x)
    ny = norm(space, y)
    moved = norm(space, x[None, :] + lams[:, None] * y[None, :])
    return moved ** 2 - nx ** 2 + 2.0 * eps * nx * np.abs(lams) * ny


def check_def_inequality(space: Space, x, y, eps: float, lam_grid, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Whether the defining inequality of eps-orthogonality holds on every grid point."""
    lams = np.asarray(lam_grid, dtype=float)
    if lams.ndim != 1 or lams.size == 0:
        raise InputError("lam_grid must be a non-empty list")
    if not np.allclose(np.sort(lams), np.sort(-lams)):
        raise InputError("lam_grid must be symmetric around 0")
    x = coords(space, x)
    nx = norm(space, x)
    if nx == 0.0:
        raise InputError("x must be nonzero")
    slack = def_inequality_slack(space, x, y, eps, lams)
    return bool(np.all(slack >= -tol.tau_norm * nx * nx))


def additivity_report(space: Space, x, y1, y2, tol: Tolerances = DEFAULT_TOL) -> AdditivityReport:
    """Evaluate the three right-additivity results at ``(x, y1, y2)``.

    * ``4.2``: ``x`` eps-orthogonal to both ``y_i`` and eps-smooth, with
      ``eps < 2||y1 + y2|| / (3(||y1|| + ||y2||)) < 1``; conclusion ``eps_out < 1``.
    * ``4.3``: ``x`` BJ-orthogonal to both and ``eps_x < 2||y1 + y2|| / (||y1|| + ||y2||)``;
      conclusion ``eps_out < 1``.
    * ``4.6``: ``x`` BJ-orthogonal to both and
      ``min(||y1||, ||y2||) <= ||(y1 + y2) / 2||``; conclusion ``eps_out <= eps_x / 2``.

    A verdict is ``"vacuous"`` when its hypotheses fail.
    """
    face = support_set(space, x, tol)
    y1 = coords(space, y1, "y1")
    y2 = coords(space, y2, "y2")
    s = y1 + y2
    eps_x = face_diameter(space, face.vertices)
    r1 = _report(space, face, y1, tol)
    r2 = _report(space, face, y2, tol)
    out = _report(space, face, s, tol)
    n1, n2, ns = norm(space, y1), norm(space, y2), norm(space, s)

    nondegenerate = n1 > 0 and n2 > 0 and ns > 0
    hyp_42 = hyp_43 = hyp_46 = False
    if nondegenerate:
        window = 2.0 * ns / (3.0 * (n1 + n2))
        eps = max(r1.eps_min, r2.eps_min, eps_x)
        hyp_42 = eps < window < 1.0
        hyp_43 = r1.is_bj and r2.is_bj and eps_x < 2.0 * ns / (n1 + n2)
    if r1.is_bj and r2.is_bj and eps_x <= 2.0 - tol.tau_strict:
        hyp_46 = min(n1, n2) <= ns / 2.0 + tol.tau_norm * max(n1, n2)

    verdicts = {
        "4.2": (PASS if out.eps_min < 1.0 else FAIL) if hyp_42 else VACUOUS,
        "4.3": (PASS if out.eps_min < 1.0 else FAIL) if hyp_43 else VACUOUS,
        "4.6": (PASS if out.eps_min <= eps_x / 2.0 + tol.tau_norm else FAIL) if hyp_46 else VACUOUS,
    }
    return AdditivityReport(face.x, y1, y2, eps_x, hyp_42, hyp_43, hyp_46, out.eps_min, verdicts)


def lemma44_check(space: Space, x, y1, y2, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Whether unit vectors ``y1, y2`` witness that approximate orthogonality is
    not right-additive at ``x``.

    True iff some face functional keeps ``|f1(y1)| < 1``, some keeps
    ``|f2(y2)| < 1``, yet every functional in ``J(x)`` norms the direction of
    ``y1 + y2``. Returns False when ``y1 + y2 = 0``.
    """
    face = support_set(space, x, tol)
    y1 = coords(space, y1, "y1")
    y2 = coords(space, y2, "y2")
    for name, v in (("y1", y1), ("y2", y2)):
        if abs(norm(space, v) - 1.0) > tol.tau_norm:
            raise InputError(f"{name} must be a unit vector")
    s = y1 + y2
    ns = norm(space, s)
    if ns <= tol.tau_norm:
        return False
    cut = 1.0 - tol.tau_norm
    F = face.vertices
    # f(s) is linear on the face: |f(s)| stays near 1 everywhere only if every
    # vertex norms s with the same sign.
    vals = F @ (s / ns)
    all_norming = bool(np.all(vals >= cut) or np.all(vals <= -cut))
    return bool(np.any(np.abs(F @ y1) < cut) and np.any(np.abs(F @ y2) < cut) and all_norming)
