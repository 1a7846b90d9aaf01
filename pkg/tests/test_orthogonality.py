import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from normlab import (
    InputError,
    Lp,
    additivity_report,
    check_def_inequality,
    eps_min,
    example31_space,
    is_bj_orthogonal,
    lemma44_check,
    norm,
    orthogonality_report,
)
from normlab.catalog import example31_points
from normlab.orthogonality import def_inequality_slack

ALPHA = 0.25
coord = st.floats(-10, 10, allow_nan=False)
vec2 = st.tuples(coord, coord).map(np.array).filter(lambda v: np.abs(v).max() > 1e-3)
GRID = np.concatenate([-np.logspace(-3, 3, 61), np.logspace(-3, 3, 61)])


def test_bj_examples(square):
    assert is_bj_orthogonal(square, [1, 1], [1, 0])
    assert not is_bj_orthogonal(Lp(2, 2), [1, 0], [1, 0])
    assert is_bj_orthogonal(square, [1, 1], [0, 0])
    with pytest.raises(InputError):
        is_bj_orthogonal(square, [0, 0], [1, 0])


@pytest.mark.parametrize("delta", [0.01, 1.0, 10.0])
def test_example_apex_orthogonal_to_both_directions(delta):
    space = example31_space(delta)
    pts = example31_points(delta)
    assert is_bj_orthogonal(space, pts["P"], pts["R1"])
    assert is_bj_orthogonal(space, pts["P"], pts["R2"])
    assert eps_min(space, pts["P"], pts["R1"] + pts["R2"]) == pytest.approx(1.0, abs=1e-12)


def test_eps_min_corner(square):
    assert eps_min(square, [1, 1], [1, ALPHA]) == pytest.approx(ALPHA)
    rep = orthogonality_report(square, [1, 1], [1, ALPHA])
    assert not rep.is_bj
    assert rep.witness @ np.array([1, ALPHA]) == pytest.approx(ALPHA)


def test_witness_on_sign_change(square):
    rep = orthogonality_report(square, [1, 1], [1, -0.5])
    assert rep.is_bj and rep.eps_min == 0.0
    assert rep.witness @ np.array([1, -0.5]) == pytest.approx(0.0, abs=1e-15)
    assert rep.witness.sum() == pytest.approx(1.0)


def test_def_inequality_examples(square):
    assert check_def_inequality(square, [1, 1], [1, ALPHA], ALPHA, GRID)
    assert not check_def_inequality(square, [1, 1], [1, ALPHA], 0.1, GRID)
    assert check_def_inequality(square, [1, 1], [0, 0], 0.0, GRID)


def test_def_inequality_grid_checks(square):
    with pytest.raises(InputError):
        check_def_inequality(square, [1, 1], [1, 0], 0.1, [0.1, 0.2])
    with pytest.raises(InputError):
        check_def_inequality(square, [1, 1], [1, 0], 0.1, [])


def test_hexagon_additivity_pass(hexagon):
    rep = additivity_report(hexagon.space, hexagon.vertex(1), [0, 1], [0, 3])
    assert rep.hyp_46 and rep.eps_out == 0.0
    assert rep.eps_x == pytest.approx(1.0)
    assert rep.verdicts["4.6"] == "pass"


def test_corner_counterexample_is_vacuous(square):
    rep = additivity_report(square, [1, 1], [1, -ALPHA], [-ALPHA, 1])
    assert rep.eps_out == pytest.approx(1.0)
    assert rep.eps_x == 2.0
    assert not rep.hyp_42 and not rep.hyp_43 and not rep.hyp_46
    assert set(rep.verdicts.values()) == {"vacuous"}
    assert rep.to_dict()["verdicts"] == {"4.2": "vacuous", "4.3": "vacuous", "4.6": "vacuous"}


def test_smooth_point_additivity():
    s = Lp(2, 3)
    rep = additivity_report(s, [1, 0, 0], [0, 1, 2], [0, -3, 0.5])
    assert rep.eps_out == 0.0 and rep.eps_x == 0.0
    assert all(v in ("pass", "vacuous") for v in rep.verdicts.values())
    assert rep.verdicts["4.3"] == "pass"


def test_degenerate_sum_is_vacuous_for_windows(square):
    rep = additivity_report(square, [1, 0.5], [0, 1], [0, -1])
    assert rep.verdicts["4.2"] == rep.verdicts["4.3"] == "vacuous"


def test_lemma44_examples(square):
    assert lemma44_check(square, [1, 1], [1, ALPHA], [ALPHA, 1])
    assert not lemma44_check(square, [1, 1], [1, -1], [-1, 1])
    for delta in (0.1, 1.0, 3.0):
        space = example31_space(delta)
        pts = example31_points(delta)
        y1 = pts["R1"] / norm(space, pts["R1"])
        y2 = pts["R2"] / norm(space, pts["R2"])
        assert lemma44_check(space, pts["P"], y1, y2)


def test_lemma44_requires_unit_vectors(square):
    with pytest.raises(InputError):
        lemma44_check(square, [1, 1], [2, 0], [0, 1])


def test_lemma44_smooth_point():
    # f = (1, 0) does not norm y1 or y2 but norms their normalized sum
    assert lemma44_check(Lp(2, 2), [1, 0], [0.6, 0.8], [0.6, -0.8])
    assert not lemma44_check(Lp(2, 2), [1, 0], [0.6, 0.8], [0.6, 0.8])


@given(vec2, vec2, st.integers(0, 11))
def test_bj_iff_eps_zero(polygon_zoo, x, y, k):
    s = polygon_zoo[k]
    rep = orthogonality_report(s, x, y)
    assert 0.0 <= rep.eps_min <= 1.0
    if rep.is_bj:
        assert rep.eps_min <= 1e-9
    else:
        assert rep.eps_min > 0.0


@given(vec2, vec2, st.integers(0, 11))
def test_eps_min_is_least(polygon_zoo, x, y, k):
    s = polygon_zoo[k]
    e = eps_min(s, x, y)
    ny = np.abs(y).max()
    assert check_def_inequality(s, x, y, e + 1e-9, GRID * np.abs(x).max() / ny)
    # the slack at eps_min is nonnegative up to rounding everywhere on the grid
    slack = def_inequality_slack(s, x, y, e, GRID)
    assert slack.min() >= -1e-9 * (1 + np.abs(x).max() ** 2)


@given(vec2, vec2, vec2, st.integers(0, 11))
def test_verdict_never_fails_without_hypotheses(polygon_zoo, x, y1, y2, k):
    rep = additivity_report(polygon_zoo[k], x, y1, y2)
    for key, flag in (("4.2", rep.hyp_42), ("4.3", rep.hyp_43), ("4.6", rep.hyp_46)):
        if not flag:
            assert rep.verdicts[key] == "vacuous"
        else:
            assert rep.verdicts[key] == "pass"
