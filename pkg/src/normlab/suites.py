"""Seeded randomized suites.

Every trial draws from its own generator, ``default_rng([seed, SUITE_ID, i])``,
so a failing trial can be replayed from ``(seed, i)`` alone. Suites return a
``SuiteResult`` whose ``failures`` carry enough context to reproduce.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .catalog import example31_space, prism_space, real_line, regular_polygon_space
from .config import DEFAULT_TOL, Tolerances
from .derivatives import rho, rho_numeric
from .oracle import (
    contains_points,
    longest_sphere_segment,
    random_polygon,
    random_vector,
    same_point_set,
    verify_eq2_vs_epsmin,
    verify_support_by_sampling,
)
from .orthogonality import FAIL, additivity_report
from .spaces import INF, DirectSum, Lp, Polyhedral, Space, dual_norm, norm
from .support import (
    adjacent_pair_E,
    diam_support,
    direct_sum_support,
    face_diameter,
    space_constants,
    support_set,
)

MAX_FAILURES_KEPT = 20


@dataclass
class SuiteResult:
    name: str
    seed: int
    trials: int = 0
    vacuous: int = 0
    failures: list = field(default_factory=list)
    violations: int = 0
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def fail(self, **dossier) -> None:
        self.violations += 1
        if len(self.failures) < MAX_FAILURES_KEPT:
            self.failures.append({"seed": self.seed, **_jsonable(dossier)})

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "seed": self.seed,
            "trials": self.trials,
            "vacuous": self.vacuous,
            "violations": self.violations,
            "passed": self.passed,
            "stats": _jsonable(self.stats),
            "failures": self.failures,
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def trial_rng(seed: int, suite_id: int, i: int) -> np.random.Generator:
    return np.random.default_rng([seed, suite_id, i])


@lru_cache(maxsize=32)
def polygon_pool(seed: int, count: int = 64, m_range: tuple[int, int] = (2, 10)) -> tuple[Polyhedral, ...]:
    """``count`` random polygons with ``m`` drawn from ``m_range`` (inclusive)."""
    rng = np.random.default_rng([seed, 0xB0B])
    return tuple(
        random_polygon(rng, int(rng.integers(m_range[0], m_range[1] + 1))) for _ in range(count)
    )


@lru_cache(maxsize=8)
def mixed_pool(seed: int) -> tuple[Space, ...]:
    """Polygons, prisms, l_p spaces and sums of several kinds."""
    polys = polygon_pool(seed, 16)
    return polys + (
        regular_polygon_space(3).space,
        regular_polygon_space(4).space,
        example31_space(0.5),
        prism_space(3),
        DirectSum(INF, polys[0], real_line()),
        DirectSum(1.0, polys[1], polys[2]),
        DirectSum(INF, polys[3], polys[4]),
        Lp(2, 2),
        Lp(2, 3),
        Lp(3, 2),
        Lp(INF, 3),
        Lp(1, 3),
        DirectSum(2.0, polys[5], polys[6]),
        DirectSum(1.5, Lp(2, 2), real_line()),
        DirectSum(INF, Lp(2, 2), Lp(3, 1)),
    )


def _pick_x(rng: np.random.Generator, space: Space) -> np.ndarray:
    # Vertices are where faces are large; keep them half the time.
    if rng.random() < 0.5 and isinstance(space, (Polyhedral, DirectSum)) and space.dim <= 4:
        try:
            V = space.polytope.vertices
            return V[rng.integers(len(V))] * rng.uniform(0.5, 3.0)
        except NotImplementedError:
            pass
    return random_vector(rng, space)


def _face_point(rng: np.random.Generator, F: np.ndarray) -> np.ndarray:
    return rng.dirichlet(np.ones(len(F))) @ F


def _kernel_vector(rng: np.random.Generator, space: Space, f: np.ndarray) -> np.ndarray:
    v = rng.normal(size=f.size)
    v -= (v @ f) / (f @ f) * f
    return v / norm(space, v)


# -- right additivity ---------------------------------------------------------

ADDITIVITY_POOL_SEED = 7


def _additivity_spaces(seed: int) -> tuple[Space, ...]:
    polys = polygon_pool(seed ^ ADDITIVITY_POOL_SEED, 48, (3, 12))
    regular = tuple(regular_polygon_space(n).space for n in range(2, 13))
    return polys + regular + (prism_space(6), DirectSum(INF, polys[0], real_line()))


def _additivity_suite(name: str, suite_id: int, seed: int, trials: int, make_ys, key: str,
                      tol: Tolerances) -> SuiteResult:
    res = SuiteResult(name, seed)
    spaces = _additivity_spaces(seed)
    attempts = 0
    margin = -np.inf
    while res.trials < trials and attempts < 50 * trials:
        rng = trial_rng(seed, suite_id, attempts)
        attempts += 1
        space = spaces[int(rng.integers(len(spaces)))]
        x = _pick_x(rng, space)
        F = support_set(space, x, tol).vertices
        y1, y2 = make_ys(rng, space, x, F)
        rep = additivity_report(space, x, y1, y2, tol)
        verdict = rep.verdicts[key]
        if verdict == "vacuous":
            res.vacuous += 1
            continue
        res.trials += 1
        bound = rep.eps_x / 2.0 if key == "4.6" else 1.0
        margin = max(margin, rep.eps_out - bound)
        if verdict == FAIL:
            res.fail(trial=attempts - 1, x=x, y1=y1, y2=y2, eps_x=rep.eps_x, eps_out=rep.eps_out)
    res.stats["attempts"] = attempts
    # closest approach of eps_out to the bound (negative = slack)
    res.stats["max_eps_out_minus_bound"] = float(margin)
    return res


def _ys_approx(rng, space, x, F):
    xhat = x / norm(space, x)
    ys = []
    for _ in range(2):
        u = _kernel_vector(rng, space, _face_point(rng, F))
        tilt = rng.uniform(-0.3, 0.3) * rng.random()
        ys.append(rng.uniform(0.2, 5.0) * (rng.choice([-1.0, 1.0]) * u + tilt * xhat))
    return ys


def _ys_exact(rng, space, x, F):
    return [
        rng.uniform(0.2, 5.0) * rng.choice([-1.0, 1.0]) * _kernel_vector(rng, space, _face_point(rng, F))
        for _ in range(2)
    ]


def _ys_exact_unbalanced(rng, space, x, F):
    y1, y2 = _ys_exact(rng, space, x, F)
    if rng.random() < 0.5:
        # a 3:1 size ratio guarantees the norm condition
        y2 = y2 / norm(space, y2) * norm(space, y1) * rng.uniform(3.0, 6.0)
    return y1, y2


def additivity_window_suite(seed: int = 0, trials: int = 10_000, tol: Tolerances = DEFAULT_TOL) -> SuiteResult:
    return _additivity_suite("additivity_window", 42, seed, trials, _ys_approx, "4.2", tol)


def additivity_bj_suite(seed: int = 0, trials: int = 10_000, tol: Tolerances = DEFAULT_TOL) -> SuiteResult:
    return _additivity_suite("additivity_bj", 43, seed, trials, _ys_exact, "4.3", tol)


def additivity_half_suite(seed: int = 0, trials: int = 10_000, tol: Tolerances = DEFAULT_TOL) -> SuiteResult:
    return _additivity_suite("additivity_half", 46, seed, trials, _ys_exact_unbalanced, "4.6", tol)


# -- oracles against analytic routines -----------------------------------------

def support_suite(seed: int = 0, trials: int = 1000, tol: Tolerances = DEFAULT_TOL) -> SuiteResult:
    res = SuiteResult("support", seed)
    spaces = mixed_pool(seed)
    for i in range(trials):
        rng = trial_rng(seed, 1, i)
        space = spaces[i % len(spaces)]
        x = _pick_x(rng, space)
        res.trials += 1
        if not verify_support_by_sampling(space, x, tol=tol):
            res.fail(trial=i, space_index=i % len(spaces), x=x)
    return res


def derivative_suite(seed: int = 0, trials: int = 1000, tol: Tolerances = DEFAULT_TOL,
                     lam: float = 1e-6, bound: float = 1e-5) -> SuiteResult:
    """``trials`` sampled (x, y) per polytopal space in the mixed pool."""
    res = SuiteResult("derivative", seed)
    spaces = [s for s in mixed_pool(seed) if isinstance(s, Polyhedral) or
              (isinstance(s, (Lp, DirectSum)) and s.p in (1.0, INF))]
    worst = 0.0
    for k, space in enumerate(spaces):
        for i in range(trials):
            rng = trial_rng(seed, 2, k * trials + i)
            x = _pick_x(rng, space)
            y = random_vector(rng, space, (0.5, 2.0))
            pair = rho(space, x, y, tol)
            ep = abs(rho_numeric(space, x, y, lam) - pair.rho_plus)
            em = abs(rho_numeric(space, x, y, -lam) - pair.rho_minus)
            worst = max(worst, ep, em)
            res.trials += 1
            if ep > bound or em > bound:
                res.fail(trial=k * trials + i, space_index=k, x=x, y=y, err_plus=ep, err_minus=em)
    res.stats["max_abs_error"] = worst
    res.stats["spaces"] = len(spaces)
    return res


def inequality_suite(seed: int = 0, trials: int = 1000, tol: Tolerances = DEFAULT_TOL) -> SuiteResult:
    res = SuiteResult("inequality", seed)
    spaces = mixed_pool(seed)
    for i in range(trials):
        rng = trial_rng(seed, 3, i)
        space = spaces[i % len(spaces)]
        x = _pick_x(rng, space)
        if rng.random() < 0.3:
            F = support_set(space, x, tol).vertices
            y = _kernel_vector(rng, space, _face_point(rng, F)) * rng.uniform(0.2, 5.0)
        else:
            y = random_vector(rng, space)
        res.trials += 1
        if not verify_eq2_vs_epsmin(space, x, y, tol=tol):
            res.fail(trial=i, space_index=i % len(spaces), x=x, y=y)
    return res


def constants_suite(seed: int = 0, trials: int = 50, tol: Tolerances = DEFAULT_TOL) -> SuiteResult:
    """S = R, S = longest sphere segment, E = S(polar), E = adjacent-pair formula."""
    res = SuiteResult("constants", seed)
    worst = {"S_vs_segment": 0.0, "E_vs_S_polar": 0.0, "E_vs_pairs": 0.0}
    for i, space in enumerate(polygon_pool(seed, trials)):
        c = space_constants(space, tol)
        cp = space_constants(Polyhedral(space.polytope.polar()), tol)
        seg = longest_sphere_segment(space, tol)
        errs = {
            "S_vs_segment": abs(c.S - seg),
            "E_vs_S_polar": abs(c.E - cp.S),
            "E_vs_pairs": abs(c.E - adjacent_pair_E(space)),
        }
        for k, v in errs.items():
            worst[k] = max(worst[k], v)
        res.trials += 1
        if c.S != c.R or errs["S_vs_segment"] > 1e-12 or errs["E_vs_S_polar"] > 1e-9 or errs["E_vs_pairs"] > 1e-9:
            res.fail(trial=i, E=c.E, S=c.S, R=c.R, **errs)
    res.stats.update(worst)
    return res


def _direct_sum_points(rng, X: Space, Y: Space) -> list[np.ndarray]:
    x, y = _pick_x(rng, X), _pick_x(rng, Y)
    tie_y = y / norm(Y, y) * norm(X, x)
    zx, zy = np.zeros(X.dim), np.zeros(Y.dim)
    return [
        np.concatenate([x, y]),
        np.concatenate([x, zy]),
        np.concatenate([zx, y]),
        np.concatenate([x, tie_y]),
    ]


def sum_faces_suite(seed: int = 0, trials: int = 20, tol: Tolerances = DEFAULT_TOL,
                 atol: float = 1e-9) -> SuiteResult:
    """Direct-sum faces against the generic polytope route and the defining identities."""
    res = SuiteResult("sum_faces", seed)
    pool = polygon_pool(seed, 2 * trials, (2, 6))
    ties_equal = 0
    ties = 0
    worst_p = 0.0
    for i in range(trials):
        X, Y = pool[2 * i], pool[2 * i + 1]
        rng = trial_rng(seed, 61, i)
        for p in (1.0, INF):
            Z = DirectSum(p, X, Y)
            for z in _direct_sum_points(rng, X, Y):
                res.trials += 1
                prop = direct_sum_support(Z, z, tol)
                generic = support_set(Z, z, tol)
                assert not generic.inclusion_only
                if prop.inclusion_only:
                    ties += 1
                    ok = contains_points(generic.vertices, prop.vertices, atol)
                    ties_equal += same_point_set(generic.vertices, prop.vertices, atol)
                else:
                    ok = same_point_set(generic.vertices, prop.vertices, atol)
                if not ok:
                    res.fail(trial=i, p=str(p), z=z)
        for p in (1.5, 2.0, 3.0):
            Z = DirectSum(p, X, Y)
            for z in _direct_sum_points(rng, X, Y)[:3]:
                res.trials += 1
                face = direct_sum_support(Z, z, tol)
                nz = norm(Z, z)
                attain = np.abs(face.vertices @ z - nz).max()
                unit_err = np.abs(np.asarray(dual_norm(Z, face.vertices)) - 1.0).max()
                worst_p = max(worst_p, attain, unit_err)
                if attain > atol or unit_err > atol:
                    res.fail(trial=i, p=p, z=z, attain_err=attain, dual_norm_err=unit_err)
    res.stats.update(ties=ties, ties_with_equality=ties_equal, max_identity_error=worst_p)
    return res


def sums_suite(seed: int = 0, trials: int = 1000, tol: Tolerances = DEFAULT_TOL) -> SuiteResult:
    """diam J((x, y)) <= max(diam J(x), diam J(y)) in p-sums with 1 < p < inf."""
    res = SuiteResult("sums", seed)
    spaces = polygon_pool(seed, 32, (2, 8)) + (Lp(2, 2), regular_polygon_space(5).space, prism_space(3))
    for i in range(trials):
        rng = trial_rng(seed, 62, i)
        X = spaces[int(rng.integers(len(spaces)))]
        Y = spaces[int(rng.integers(len(spaces)))]
        p = float(rng.uniform(1.05, 6.0))
        x, y = _pick_x(rng, X), _pick_x(rng, Y)
        if rng.random() < 0.1:
            (x if rng.random() < 0.5 else y)[:] = 0.0
        Z = DirectSum(p, X, Y)
        # a zero block contributes a zero functional, i.e. diameter 0
        ex = diam_support(X, x, tol) if np.any(x) else 0.0
        ey = diam_support(Y, y, tol) if np.any(y) else 0.0
        dz = face_diameter(Z, direct_sum_support(Z, np.concatenate([x, y]), tol).vertices)
        res.trials += 1
        if dz > max(ex, ey) + 1e-9:
            res.fail(trial=i, p=p, x=x, y=y, diam=dz, eps_x=ex, eps_y=ey)
    return res


SUITES = {
    "support": support_suite,
    "derivative": derivative_suite,
    "inequality": inequality_suite,
    "constants": constants_suite,
    "sum_faces": sum_faces_suite,
    "sums": sums_suite,
    "additivity_window": additivity_window_suite,
    "additivity_bj": additivity_bj_suite,
    "additivity_half": additivity_half_suite,
}
