import math
import os
import sys

import numpy as np
import pytest

sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from rindler.config import CAPTION_ALPHAS, R_AXIS, RIDGE_POINTS, GridSpec
from rindler.dirac import dirac_limit_coherence
from rindler.errors import BracketError, ToleranceInfeasibleError, ValidationError
from rindler.frames import FieldKind
from rindler.scalar import scalar_limit_coherence
from rindler.sweep import (
    RidgePoint,
    SweepSpec,
    check_unimodal,
    default_ridge_grid,
    evaluate_point,
    golden_section_maximize,
    is_limit,
    limit_param,
    loss_curve,
    maximize_alpha,
    ridge,
    surface,
    sweep,
)

LIMIT_ALPHA_SQUARED = (5 - math.sqrt(5)) / 5


# ═══════════════════════════════════════════════════════════════════════════════
# POINTS
# ═══════════════════════════════════════════════════════════════════════════════

def test_limit_parameters():
    assert limit_param("dirac") == math.pi / 4
    assert limit_param(FieldKind.SCALAR) == math.inf
    assert is_limit(FieldKind.DIRAC, None)
    assert is_limit(FieldKind.DIRAC, math.pi / 4)
    assert not is_limit(FieldKind.SCALAR, 50.0)


def test_evaluate_point_limit():
    alpha = 1 / math.sqrt(2)
    point = evaluate_point("dirac", alpha)
    assert point.param == math.pi / 4
    assert point.coherence == pytest.approx(0.688722, abs=1e-6)
    assert evaluate_point("dirac", alpha, math.pi / 4).coherence == point.coherence
    scalar = evaluate_point("scalar", alpha, math.inf)
    assert scalar.coherence == pytest.approx(scalar_limit_coherence(alpha))
    assert scalar.tail_guarantee == 0.0


def test_evaluate_point_series_only():
    point = evaluate_point("scalar", 0.6, 1.0, series_only=True)
    assert point.tail_guarantee > 0
    with pytest.raises(ToleranceInfeasibleError):
        evaluate_point("scalar", 0.6, 7.0, series_only=True)
    assert evaluate_point("scalar", 0.6, 7.0).coherence > scalar_limit_coherence(0.6)


# ═══════════════════════════════════════════════════════════════════════════════
# SWEEPS
# ═══════════════════════════════════════════════════════════════════════════════

def test_sweep_spec_validation():
    grid = GridSpec(0.0, 0.5, 3)
    with pytest.raises(ValidationError):
        SweepSpec("dirac", (), grid)
    with pytest.raises(ValidationError):
        SweepSpec("dirac", (1.5,), grid)
    with pytest.raises(ValidationError):
        SweepSpec("dirac", (0.5,), GridSpec(0.0, 1.0, 3))
    with pytest.raises(ValidationError):
        SweepSpec("scalar", (0.5,), GridSpec(-1.0, 1.0, 3))
    with pytest.raises(ValidationError):
        SweepSpec("scalar", (0.5,), grid, series_tol=0.0)
    spec = SweepSpec("scalar", [0.5], {"start": 0.0, "stop": 1.0, "count": 2})
    assert spec.field_kind is FieldKind.SCALAR
    assert spec.param_grid.values() == [0.0, 1.0]


def test_grid_spec():
    assert GridSpec(0, 1, 5).values() == [0.0, 0.25, 0.5, 0.75, 1.0]
    for bad in ((0, 1, 1), (1, 0, 3), (0, math.inf, 3)):
        with pytest.raises(ValidationError):
            GridSpec(*bad)


def test_sweep_is_alpha_major():
    spec = SweepSpec("dirac", (0.3, 0.6), GridSpec(0.0, 0.6, 4))
    points = sweep(spec)
    assert len(points) == 8
    assert [p.alpha for p in points] == [0.3] * 4 + [0.6] * 4
    assert [p.param for p in points[:4]] == spec.param_grid.values()


def test_sweep_reaching_quarter_pi_uses_limit():
    points = sweep(SweepSpec("dirac", (1 / math.sqrt(2),), GridSpec(0.0, math.pi / 4, 5)))
    assert points[0].coherence == pytest.approx(1.0, abs=1e-12)
    assert points[-1].coherence == pytest.approx(dirac_limit_coherence(1 / math.sqrt(2)))


def test_parallel_sweep_matches_serial():
    spec = SweepSpec("scalar", CAPTION_ALPHAS, GridSpec(0.0, 2.0, 5))
    serial = sweep(spec, workers=1)
    parallel = sweep(spec, workers=4)
    assert serial == parallel


def test_progress_reports_every_point():
    seen = []
    surface([0.2, 0.4, 0.6], [0.0, 0.3], "dirac", progress=lambda done, total: seen.append((done, total)))
    assert sorted(seen) == [(i, 6) for i in range(1, 7)]


def test_infeasible_grid_point_names_its_coordinates():
    with pytest.raises(ToleranceInfeasibleError) as info:
        surface([0.6], [1.0, 7.0], "scalar", series_only=True)
    assert "param=7" in str(info.value)
    assert info.value.achievable > info.value.requested


@pytest.mark.parametrize("low", [0.5, 1 / math.sqrt(8)])
@pytest.mark.parametrize("kind, param", [("scalar", 2.0), ("dirac", math.pi / 8)])
def test_curves_split_once_accelerated(low, kind, param):
    # alpha and sqrt(1 - alpha^2) coincide at rest and separate under acceleration
    high = math.sqrt(1 - low ** 2)
    rest = [evaluate_point(kind, a, 0.0).coherence for a in (low, high)]
    moving = [evaluate_point(kind, a, param).coherence for a in (low, high)]
    assert rest[0] == pytest.approx(rest[1], abs=1e-12)
    assert abs(moving[0] - moving[1]) > 1e-3


@pytest.mark.parametrize("kind", ["scalar", "dirac"])
def test_inertial_curves_match_binary_entropy(kind):
    for alpha in np.linspace(0.0, 1.0, 101):
        expected = -sum(p * math.log2(p) for p in (alpha ** 2, 1 - alpha ** 2) if p > 0)
        assert evaluate_point(kind, alpha, 0.0).coherence == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("kind, grid", [
    ("scalar", GridSpec(0.0, 8.0, 17)),
    ("dirac", GridSpec(0.0, math.pi / 4 - 1e-6, 30)),
])
def test_caption_curves_decrease_with_acceleration(kind, grid):
    points = sweep(SweepSpec(kind, CAPTION_ALPHAS, grid))
    for index in range(len(CAPTION_ALPHAS)):
        curve = [p.coherence for p in points[index * grid.count:(index + 1) * grid.count]]
        assert all(a > b for a, b in zip(curve, curve[1:]))


# ═══════════════════════════════════════════════════════════════════════════════
# MAXIMIZATION
# ═══════════════════════════════════════════════════════════════════════════════

def test_golden_section_finds_parabola_peak():
    result = golden_section_maximize(lambda x: -(x - 0.3) ** 2, 0.0, 1.0, tol_x=1e-9)
    assert result.converged
    assert result.x == pytest.approx(0.3, abs=1e-8)
    assert result.iterations > 10


@pytest.mark.parametrize("tol_x", [1e-3, 1e-6, 1e-9])
def test_golden_section_iteration_bound(tol_x):
    result = golden_section_maximize(lambda x: -(x - 0.3) ** 2, 0.0, 1.0, tol_x=tol_x)
    ratio = 2 / (1 + math.sqrt(5))
    assert result.converged
    assert result.iterations <= math.ceil(math.log(1 / tol_x) / math.log(1 / ratio))


def test_golden_section_prefers_better_endpoint():
    result = golden_section_maximize(lambda x: x, 0.0, 1.0)
    assert result.x == 1.0


def test_golden_section_validation():
    with pytest.raises(ValidationError):
        golden_section_maximize(lambda x: x, 1.0, 0.0)
    with pytest.raises(ValidationError):
        golden_section_maximize(lambda x: x, 0.0, 1.0, tol_x=0.0)


def test_golden_section_reports_non_convergence():
    result = golden_section_maximize(lambda x: -abs(x - 0.5), 0.0, 1.0, tol_x=1e-12, max_iterations=5)
    assert not result.converged
    assert result.iterations == 5


def test_unimodal_scan():
    lo, hi = check_unimodal(lambda x: -(x - 0.42) ** 2, 0.0, 1.0)
    assert lo < 0.42 < hi
    with pytest.raises(BracketError):
        check_unimodal(lambda x: math.sin(12 * x), 0.0, 1.0)


def test_maximize_at_rest_is_balanced_superposition():
    for kind in ("dirac", "scalar"):
        best = maximize_alpha(kind, 0.0)
        assert best.alpha_star == pytest.approx(1 / math.sqrt(2), abs=1e-6)
        assert best.coherence_max == pytest.approx(1.0, abs=1e-12)


def test_maximize_dirac_limit():
    best = maximize_alpha("dirac")
    assert best.param == math.pi / 4
    assert best.alpha_star ** 2 == pytest.approx(LIMIT_ALPHA_SQUARED, abs=1e-6)
    assert best.coherence_max == pytest.approx(0.694242, abs=1e-5)


def test_ridge_point_must_be_interior():
    with pytest.raises(ValidationError):
        RidgePoint(param=0.0, alpha_star=1.0, coherence_max=0.0)


def test_dirac_ridge_moves_towards_limit_maximizer():
    points = ridge("dirac", GridSpec(0.0, math.pi / 4 - 1e-6, 5), workers=2)
    assert len(points) == 5
    stars = [p.alpha_star for p in points]
    assert stars[0] == pytest.approx(1 / math.sqrt(2), abs=1e-6)
    assert stars[-1] ** 2 == pytest.approx(LIMIT_ALPHA_SQUARED, abs=1e-4)
    assert all(b >= a - 1e-6 for a, b in zip(stars, stars[1:]))
    maxima = [p.coherence_max for p in points]
    assert maxima == sorted(maxima, reverse=True)


def test_scalar_ridge_is_interior():
    points = ridge("scalar", GridSpec(0.0, 1.5, 4))
    for point in points:
        assert 0 < point.alpha_star < 1
        assert point.coherence_max >= evaluate_point("scalar", 0.5, point.param).coherence - 1e-9


def test_default_ridge_grid_follows_field():
    assert default_ridge_grid("scalar") == GridSpec(R_AXIS[0], R_AXIS[1], RIDGE_POINTS)
    assert default_ridge_grid("dirac").stop < math.pi / 4


def test_scalar_ridge_without_grid_spans_r_axis(monkeypatch):
    monkeypatch.setattr("rindler.sweep.RIDGE_POINTS", 3)
    points = ridge("scalar")
    assert [p.param for p in points] == [0.0, 4.0, 8.0]
    assert points[0].alpha_star == pytest.approx(1 / math.sqrt(2), abs=1e-6)


def test_dirac_ridge_rejects_grid_past_quarter_pi():
    with pytest.raises(ValidationError):
        ridge("dirac", GridSpec(0.0, 1.0, 3))


# ═══════════════════════════════════════════════════════════════════════════════
# LOSS
# ═══════════════════════════════════════════════════════════════════════════════

def test_loss_curve():
    points = loss_curve(np.linspace(0.0, 1.0, 11))
    for point in points:
        assert point.delta == pytest.approx(point.c_at_0 - point.c_at_limit, abs=1e-12)
        assert point.delta >= 0
    assert points[0].delta == 0.0
    best = max(points, key=lambda p: p.delta)
    assert best.alpha == pytest.approx(math.sqrt(0.4), abs=0.05)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
