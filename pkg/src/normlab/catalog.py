"""Concrete spaces: regular polygons, the hexagonal family B_delta, l_p, sums, prisms.

Also reads the JSON space description used by the command line::

    {"type": "polyhedral", "vertices": [[1, 0], [0, 1], [-1, 0], [0, -1]]}
    {"type": "lp", "p": 2.0, "dim": 3}            # p may be the string "inf"
    {"type": "direct_sum", "p": "inf", "left": {...}, "right": {...}}
    {"type": "regular_polygon", "n": 4}
    {"type": "example_3_1", "delta": 0.25}
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import polytope
from .errors import InputError
from .spaces import INF, DirectSum, Lp, Polyhedral, Space
from .support import direct_sum_support  # noqa: F401  (re-exported)


@dataclass(frozen=True, eq=False)
class RegularPolygonSpace:
    n: int
    space: Polyhedral

    def vertex(self, k: int) -> np.ndarray:
        """Vertex ``x_k``, 1-based, ``k = 1..2n``."""
        return polygon_vertex(self.n, k)

    def facet(self, k: int) -> np.ndarray:
        """Functional ``f_k`` supporting the edge ``x_k x_{k+1}``, 1-based."""
        return polygon_facet(self.n, k)


def _check_n(n) -> int:
    if int(n) != n or n < 2:
        raise InputError(f"n must be an integer >= 2, got {n!r}")
    return int(n)


def polygon_vertex(n: int, k: int) -> np.ndarray:
    t = (k - 1) * math.pi / n
    return np.array([math.cos(t), math.sin(t)])


def polygon_facet(n: int, k: int) -> np.ndarray:
    t = (2 * k - 1) * math.pi / (2 * n)
    return np.array([math.cos(t), math.sin(t)]) / math.cos(math.pi / (2 * n))


def regular_polygon_space(n: int) -> RegularPolygonSpace:
    """The plane normed by a regular 2n-gon with a vertex at (1, 0)."""
    n = _check_n(n)
    pts = np.array([polygon_vertex(n, k) for k in range(1, 2 * n + 1)])
    return RegularPolygonSpace(n, Polyhedral(polytope.polygon(pts)))


def closed_form_E(n: int) -> float:
    """Largest ``diam J(x)`` on the unit sphere of the regular 2n-gon."""
    n = _check_n(n)
    e = 2.0 * math.tan(math.pi / (2 * n))
    if n % 2 == 1:
        e *= math.sin((n - 1) * math.pi / (2 * n))
    return e


def example31_space(delta: float) -> Polyhedral:
    """Hexagon ``conv{(+-1, +-1), (0, +-(1 + delta))}``."""
    if not delta > 0:
        raise InputError(f"delta must be positive, got {delta!r}")
    d = float(delta)
    pts = [(1, 1), (0, 1 + d), (-1, 1), (-1, -1), (0, -1 - d), (1, -1)]
    return Polyhedral(polytope.polygon(pts))


def example31_points(delta: float) -> dict[str, np.ndarray]:
    """The apex ``P`` and the two directions ``R1, R2`` with ``R1 + R2`` parallel to ``P``."""
    d = float(delta)
    return {
        "P": np.array([0.0, 1.0 + d]),
        "R1": np.array([1.0, d]),
        "R2": np.array([-1.0, d]),
    }


def example31_functionals(delta: float) -> tuple[np.ndarray, np.ndarray]:
    d = float(delta)
    return np.array([d / (1 + d), 1 / (1 + d)]), np.array([-d / (1 + d), 1 / (1 + d)])


def real_line() -> Polyhedral:
    return Polyhedral(polytope.segment())


def direct_sum_space(p: float, left: Space, right: Space) -> DirectSum:
    return DirectSum(p, left, right)


def prism_space(n: int) -> DirectSum:
    """Regular 2n-gon summed with the real line in the max-norm: a right prism."""
    return DirectSum(INF, regular_polygon_space(n).space, real_line())


def _exponent(value, where: str) -> float:
    if value == "inf":
        return INF
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{where}: expected a number or \"inf\", got {value!r}")
    if not value >= 1:
        raise InputError(f"{where}: exponent must be >= 1, got {value!r}")
    return float(value)


def _field(obj: dict, key: str, where: str):
    if key not in obj:
        raise InputError(f"{where}.{key}: missing field")
    return obj[key]


def space_from_dict(obj, where: str = "space") -> Space:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    kind = _field(obj, "type", where)
    if kind == "polyhedral":
        verts = _field(obj, "vertices", where)
        try:
            arr = np.asarray(verts, dtype=float)
        except (TypeError, ValueError):
            raise InputError(f"{where}.vertices: expected a list of equal-length number lists") from None
        try:
            return Polyhedral(polytope.from_vertices(arr))
        except InputError as exc:
            raise InputError(f"{where}.vertices: {exc}") from None
    if kind == "lp":
        p = _exponent(_field(obj, "p", where), f"{where}.p")
        dim = _field(obj, "dim", where)
        if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
            raise InputError(f"{where}.dim: expected a positive integer, got {dim!r}")
        return Lp(p, dim)
    if kind == "direct_sum":
        p = _exponent(_field(obj, "p", where), f"{where}.p")
        left = space_from_dict(_field(obj, "left", where), f"{where}.left")
        right = space_from_dict(_field(obj, "right", where), f"{where}.right")
        return DirectSum(p, left, right)
    if kind == "regular_polygon":
        n = _field(obj, "n", where)
        if isinstance(n, bool) or not isinstance(n, int) or n < 2:
            raise InputError(f"{where}.n: expected an integer >= 2, got {n!r}")
        return regular_polygon_space(n).space
    if kind == "example_3_1":
        delta = _field(obj, "delta", where)
        if isinstance(delta, bool) or not isinstance(delta, (int, float)) or not delta > 0:
            raise InputError(f"{where}.delta: expected a positive number, got {delta!r}")
        return example31_space(delta)
    raise InputError(f"{where}.type: unknown space type {kind!r}")


def load_space(text_or_path: str) -> Space:
    """Parse inline JSON (leading ``{``) or read a JSON file."""
    text = text_or_path.strip()
    if not text.startswith("{"):
        try:
            text = Path(text_or_path).read_text()
        except OSError as exc:
            raise InputError(f"space: cannot read {text_or_path!r}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"space: invalid JSON ({exc.msg} at char {exc.pos})") from None
    return space_from_dict(obj)
