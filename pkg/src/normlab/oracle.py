"""Brute-force and sampling checks that do not share code paths with the analytic routines."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.stats import norm as _gauss
from scipy.stats import qmc

from . import polytope
from .config import DEFAULT_TOL, Tolerances
from .errors import InputError
from .orthogonality import check_def_inequality, def_inequality_slack, eps_min
from .spaces import Polyhedral, Space, coords, dual_norm, dual_space, is_polyhedral, norm
from .support import support_set


@dataclass(frozen=True, eq=False)
class SampleSet:
    seed: int
    count: int
    points: np.ndarray


def sphere_samples(space: Space, count: int, seed: int = 0) -> SampleSet:
    """Deterministic, evenly spread points on the unit sphere of ``space``.

    Polygons are sampled at equal arc length measured in their own norm, with
    a seeded offset. Every unit vector is then within ``perimeter / (2 count)``
    of a sample, and that perimeter is at most 8 for any symmetric convex
    curve. Other planar norms use equally spaced angles; higher dimensions a
    scrambled Sobol sequence pushed through the Gaussian quantile function.
    """
    d = space.dim
    offset = np.random.default_rng(seed).random()
    if d == 2 and is_polyhedral(space):
        return SampleSet(seed, count, _polygon_arc_samples(space, count, offset))
    if d == 1:
        dirs = np.array([[1.0], [-1.0]] * ((count + 1) // 2))[:count]
    elif d == 2:
        t = 2.0 * np.pi * (np.arange(count) + offset) / count
        dirs = np.column_stack([np.cos(t), np.sin(t)])
    else:
        with warnings.catch_warnings():
            # balance is only a nicety here; counts need not be powers of 2
            warnings.simplefilter("ignore", UserWarning)
            u = qmc.Sobol(d, scramble=True, seed=seed).random(count)
        dirs = _gauss.ppf(np.clip(u, 1e-12, 1 - 1e-12))
    pts = dirs / np.asarray(norm(space, dirs))[:, None]
    return SampleSet(seed, count, pts)


def _polygon_arc_samples(space: Space, count: int, offset: float) -> np.ndarray:
    V = space.polytope.vertices  # counter-clockwise
    W = np.roll(V, -1, axis=0)
    lengths = np.asarray(norm(space, W - V))
    cum = np.concatenate([[0.0], np.cumsum(lengths)])
    s = (np.arange(count) + offset) / count * cum[-1]
    k = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(V) - 1)
    t = ((s - cum[k]) / lengths[k])[:, None]
    return (1.0 - t) * V[k] + t * W[k]


def random_polygon(seed, m: int) -> Polyhedral:
    """Symmetric polygon with at most 2m vertices.

    ``m`` angles in (0, pi) with radii in [0.5, 2], reflected through the
    origin. Points that are barely extreme (within 1e-6 of the hull of the
    others) are dropped, so face membership is never a near-tie.
    """
    if m < 2:
        raise InputError("m must be >= 2")
    rng = np.random.default_rng(seed)
    while True:
        ang = np.sort(rng.uniform(0.0, np.pi, m))
        r = rng.uniform(0.5, 2.0, m)
        half = np.column_stack([r * np.cos(ang), r * np.sin(ang)])
        pts = np.vstack([half, -half])
        try:
            hull = polytope.polygon(pts, DEFAULT_TOL.with_(tau_v=1e-6 / 4))
        except InputError:
            continue
        return Polyhedral(polytope.polygon(hull.vertices))


def random_vector(rng: np.random.Generator, space: Space, scale=(0.2, 5.0)) -> np.ndarray:
    v = rng.normal(size=space.dim)
    while not np.any(v):
        v = rng.normal(size=space.dim)
    return v / norm(space, v) * rng.uniform(*scale)


def verify_support_by_sampling(
    space: Space, x, samples: SampleSet | None = None, tol: Tolerances = DEFAULT_TOL
) -> bool:
    """Check a computed ``J(x)`` against the definition.

    Every face vertex must have dual norm 1 and attain ``||x||`` at ``x``. No
    candidate outside the face may attain ``||x||`` within ``tau/10``. For
    polytopal spaces the candidates are all dual-ball vertices; otherwise
    ``samples`` on the dual sphere (points within 1e-2 of the face in dual
    norm count as inside).
    """
    face = support_set(space, x, tol)
    x = coords(space, x)
    nx = face.attained_value
    F = face.vertices
    if np.any(np.abs(np.asarray(dual_norm(space, F)) - 1.0) > tol.tau_norm):
        return False
    if np.any(np.abs(F @ x - nx) > tol.tau_face * nx):
        return False
    sep = tol.tau_face / 10.0
    if is_polyhedral(space):
        cands = space.polytope.facets
        outside = [g for g in cands if np.min(np.abs(F - g).max(axis=1)) > tol.tau_v]
    else:
        if samples is None:
            samples = sphere_samples(dual_space(space), 2048, seed=0)
        cands = samples.points
        diffs = (F[None, :, :] - cands[:, None, :]).reshape(-1, F.shape[1])
        dist = np.asarray(dual_norm(space, diffs)).reshape(len(cands), len(F)).min(axis=1)
        outside = list(cands[dist > 1e-2])
    return all(float(g @ x) < nx * (1.0 - sep) for g in outside)


def adaptive_lambda_grid(space: Space, x, y, eps: float, count: int = 40, rounds: int = 2) -> np.ndarray:
    """Symmetric grid for the defining inequality, refined near its worst point.

    Starts from ``count`` geometric steps per sign over ``|t| in [1e-6, 1e3]``
    (relative to ``||x|| / ||y||``) and zooms a decade either side of the
    most violated step, ``rounds`` times.
    """
    x = coords(space, x)
    y = coords(space, y, "y")
    scale = norm(space, x) / norm(space, y)
    mags = np.geomspace(1e-6, 1e3, count) * scale
    grid = np.concatenate([-mags[::-1], mags])
    for _ in range(rounds):
        slack = def_inequality_slack(space, x, y, eps, grid)
        worst = abs(grid[int(np.argmin(slack))])
        mags = np.geomspace(worst / 10.0, worst * 10.0, count)
        grid = np.unique(np.concatenate([grid, -mags, mags]))
    return grid


def verify_eq2_vs_epsmin(space: Space, x, y, lam_count: int = 40, tol: Tolerances = DEFAULT_TOL) -> bool:
    """The inequality holds at ``eps_min + 1e-6`` and fails at ``eps_min - 1e-3``."""
    e = eps_min(space, x, y, tol)
    hi = e + 1e-6
    ok = check_def_inequality(space, x, y, hi, adaptive_lambda_grid(space, x, y, hi, lam_count), tol)
    if e > 1e-3:
        lo = e - 1e-3
        ok = ok and not check_def_inequality(
            space, x, y, lo, adaptive_lambda_grid(space, x, y, lo, lam_count), tol
        )
    return ok


def longest_sphere_segment(space: Space, tol: Tolerances = DEFAULT_TOL) -> float:
    """Longest segment on the unit sphere, by testing every vertex pair.

    ``[a, b]`` lies on the sphere iff its midpoint does (the norm is convex and
    equals 1 at both ends), and a longest segment can be taken between vertices.
    """
    V = space.polytope.vertices
    best = 0.0
    for a, b in combinations(V, 2):
        if norm(space, (a + b) / 2.0) >= 1.0 - tol.tau_norm:
            best = max(best, norm(space, a - b))
    return best


def sampled_smoothness_gap(space: Space, x, samples: SampleSet, tol: Tolerances = DEFAULT_TOL) -> float:
    """Max over sampled unit ``y`` of ``rho_plus(x, y) - rho_minus(x, y)``."""
    face = support_set(space, x, tol)
    vals = face.vertices @ samples.points.T
    return float(face.attained_value * (vals.max(axis=0) - vals.min(axis=0)).max())


def same_point_set(a, b, atol: float) -> bool:
    a, b = np.atleast_2d(a), np.atleast_2d(b)
    return contains_points(a, b, atol) and contains_points(b, a, atol)


def contains_points(big, small, atol: float) -> bool:
    """Whether every row of ``small`` is within ``atol`` (max-norm) of some row of ``big``."""
    big, small = np.atleast_2d(big), np.atleast_2d(small)
    return all(np.min(np.abs(big - s).max(axis=1)) <= atol for s in small)
