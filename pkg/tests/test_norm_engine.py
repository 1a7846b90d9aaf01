import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from normlab import (
    INF,
    CapabilityError,
    DirectSum,
    InputError,
    Lp,
    Polyhedral,
    Tolerances,
    dual_norm,
    example31_space,
    face_of_ball,
    norm,
    polar,
    real_line,
    regular_polygon_space,
)
from normlab import polytope
from normlab.catalog import example31_functionals
from normlab.oracle import same_point_set
from normlab.spaces import conjugate, dual_space

finite = st.floats(-50, 50, allow_nan=False, allow_infinity=False)


def vec(d):
    return st.lists(finite, min_size=d, max_size=d).map(np.array)


# -- norms ----------------------------------------------------------------------

def test_sup_norm_corner(square):
    assert norm(square, [1, 1]) == 1.0


def test_hexagon_edge_sum_has_norm_two(hexagon):
    x = hexagon.vertex(1) + hexagon.vertex(2)
    np.testing.assert_allclose(x, [1.5, math.sqrt(3) / 2])
    assert norm(hexagon.space, x) == pytest.approx(2.0, abs=1e-12)


def test_example_apex_is_unit():
    assert norm(example31_space(1.0), [0, 2]) == pytest.approx(1.0, abs=1e-12)


def test_dual_norm_examples(square, hexagon):
    assert dual_norm(square, [1, -1]) == pytest.approx(2.0)
    assert dual_norm(Lp(2, 3), [3, 4, 0]) == pytest.approx(5.0)
    f = hexagon.facet(1) - hexagon.facet(6)
    assert dual_norm(hexagon.space, f) == pytest.approx(1.0, abs=1e-12)


def test_direct_sum_norm_combines_blocks():
    z = DirectSum(2.0, Lp(2, 2), Lp(1, 1))
    assert norm(z, [3, 4, -12]) == pytest.approx(13.0)
    assert dual_norm(z, [3, 4, 12]) == pytest.approx(math.hypot(5, 12))
    z_inf = DirectSum(INF, Lp(2, 2), real_line())
    assert norm(z_inf, [0.6, 0.8, -0.5]) == pytest.approx(1.0)
    assert dual_norm(z_inf, [0.6, 0.8, -0.5]) == pytest.approx(1.5)


def test_batch_norm_matches_rowwise(hexagon):
    X = np.array([[1, 2], [0.5, -3], [0, 0]])
    np.testing.assert_allclose(norm(hexagon.space, X), [norm(hexagon.space, r) for r in X])


def test_conjugate_exponents():
    assert conjugate(1.0) == INF
    assert conjugate(INF) == 1.0
    assert conjugate(2.0) == 2.0
    assert conjugate(3.0) == pytest.approx(1.5)


@pytest.mark.parametrize("bad", [[1, 2, 3], [1.0], [[1, 2, 3]]])
def test_dimension_mismatch(hexagon, bad):
    with pytest.raises(InputError):
        norm(hexagon.space, bad)


def test_nonfinite_rejected(square):
    with pytest.raises(InputError):
        norm(square, [np.nan, 1.0])


def test_zero_vector_has_zero_norm(polygon_zoo):
    for s in polygon_zoo:
        assert norm(s, [0.0, 0.0]) == 0.0


@given(vec(2), vec(2), st.floats(-20, 20))
def test_norm_axioms_polygon_zoo(polygon_zoo, x, y, a):
    tau = 1e-9
    for s in polygon_zoo:
        nx, ny = norm(s, x), norm(s, y)
        assert norm(s, x + y) <= nx + ny + tau * (1 + nx + ny)
        assert norm(s, a * x) == pytest.approx(abs(a) * nx, rel=1e-12, abs=1e-12)


@given(vec(3), vec(3))
def test_holder_on_sums(x, f):
    for s in (DirectSum(1.5, Lp(2, 2), real_line()), DirectSum(INF, regular_polygon_space(4).space, real_line()),
              DirectSum(1.0, real_line(), Lp(3, 2)), Lp(4, 3)):
        assert abs(f @ x) <= dual_norm(s, f) * norm(s, x) * (1 + 1e-12) + 1e-9


def test_direct_sum_dual_norm_matches_support_function():
    # polytopal summands: dual norm is the max of f over the composed vertices
    X, Y = regular_polygon_space(5).space, example31_space(0.3)
    rng = np.random.default_rng(11)
    for p in (1.0, INF):
        z = DirectSum(p, X, Y)
        V = z.polytope.vertices
        for f in rng.normal(size=(50, 4)):
            assert dual_norm(z, f) == pytest.approx(float(np.max(V @ f)), abs=1e-9)


# -- polytopes and polars ------------------------------------------------------

def test_polygon_vertices_are_counterclockwise(polygon_zoo):
    for s in polygon_zoo:
        V = s.polytope.vertices
        ang = np.unwrap(np.arctan2(V[:, 1], V[:, 0]))
        assert np.all(np.diff(ang) > 0)
        # facet k joins v_k and v_{k+1}
        for k, h in enumerate(s.polytope.facets):
            assert h @ V[k] == pytest.approx(1.0)
            assert h @ V[(k + 1) % len(V)] == pytest.approx(1.0)


def test_square_polar_is_cross_polytope(square):
    assert same_point_set(polar(square).vertices, [[1, 0], [0, 1], [-1, 0], [0, -1]], 1e-12)


def test_bipolar(polygon_zoo):
    for s in polygon_zoo:
        back = s.polytope.polar().polar()
        assert same_point_set(back.vertices, s.polytope.vertices, 1e-9)


def test_example_polar_contains_face_functionals():
    for d in (0.01, 0.5, 4.0):
        P = polar(example31_space(d)).vertices
        f, g = example31_functionals(d)
        assert len(P) == 6
        assert same_point_set(P, np.vstack([f, g, -f, -g, [1, 0], [-1, 0]]), 1e-12)


def test_polar_of_sum_composes():
    X, Y = regular_polygon_space(3).space, regular_polygon_space(2).space
    prod = DirectSum(INF, X, Y).polytope
    assert prod.dim == 4 and len(prod.vertices) == 6 * 4
    dual = polar(DirectSum(INF, X, Y))
    assert len(dual.vertices) == 6 + 4
    dual.check(Tolerances())
    assert same_point_set(dual.vertices, DirectSum(1.0, Polyhedral(X.polytope.polar()),
                                                   Polyhedral(Y.polytope.polar())).polytope.vertices, 1e-12)


def test_polar_rejects_smooth_leaf():
    with pytest.raises(CapabilityError):
        polar(Lp(2, 2))
    with pytest.raises(CapabilityError):
        polar(DirectSum(INF, Lp(3, 2), real_line()))


def test_lp_polytopes():
    assert same_point_set(Lp(1, 3).polytope.vertices, np.vstack([np.eye(3), -np.eye(3)]), 0)
    assert len(Lp(INF, 3).polytope.vertices) == 8
    assert dual_space(Lp(1, 3)).p == INF


def test_face_of_ball_examples(square, hexagon):
    assert same_point_set(face_of_ball(square, [1, 0]), [[1, 1], [1, -1]], 1e-12)
    assert same_point_set(face_of_ball(square, [1, 1]), [[1, 1]], 1e-12)
    assert same_point_set(face_of_ball(hexagon.space, hexagon.facet(1)),
                          [hexagon.vertex(1), hexagon.vertex(2)], 1e-12)
    with pytest.raises(InputError):
        face_of_ball(square, [0, 0])


def test_polygon_hull_drops_interior_points():
    pts = [(1, 0), (0, 1), (-1, 0), (0, -1), (0.2, 0.2), (-0.2, -0.2), (0.5, 0.5), (-0.5, -0.5)]
    ball = polytope.polygon(pts)
    assert len(ball.vertices) == 4


def test_asymmetric_polygon_rejected():
    with pytest.raises(InputError):
        polytope.from_vertices([[1, 0], [0, 1], [-1, 0], [0, -2]])


def test_high_dimensional_vertex_input_unsupported():
    with pytest.raises(CapabilityError):
        polytope.from_vertices(np.vstack([np.eye(3), -np.eye(3)]))


def test_tolerances_validated():
    with pytest.raises(ValueError):
        Tolerances(tau_face=0.0)
    with pytest.raises(ValueError):
        Tolerances.uniform(1e-2)
    assert Tolerances.uniform(1e-6).tau_strict == 1e-6
