import math
import os
import sys

import numpy as np
import pytest
from scipy.linalg import block_diag

sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from rindler.core import DensityMatrix, binary_entropy, rel_ent_coherence_matrix
from rindler.errors import ToleranceInfeasibleError, ValidationError
from rindler.frames import ScalarFrame
from rindler.scalar import (
    evaluate_scalar,
    geometric_entropy,
    scalar_block,
    scalar_block_matrix,
    scalar_block_stack,
    scalar_block_unnormalized,
    scalar_coherence,
    scalar_coherence_continuum,
    scalar_coherence_from_blocks,
    scalar_limit_coherence,
    scalar_spectrum,
    tail_entropy_bound,
    truncation_depth,
)

ALPHA = 1 / math.sqrt(2)
HALF_T = ScalarFrame.from_t(0.5)
ALPHAS = [0.1, 0.25, 0.4, 0.5, ALPHA, 0.8, 0.9, 0.99]


# ═══════════════════════════════════════════════════════════════════════════════
# BLOCKS
# ═══════════════════════════════════════════════════════════════════════════════

def test_block_values_at_half_tanh():
    block = scalar_block(ALPHA, HALF_T, 1)
    assert block.weight == pytest.approx(0.1875, abs=1e-15)
    assert block.p0 == pytest.approx(0.09375, abs=1e-15)
    assert block.p1 == pytest.approx(0.140625, abs=1e-15)
    assert block.lam == pytest.approx(0.234375, abs=1e-15)


def test_block_index_validation():
    with pytest.raises(ValidationError):
        scalar_block(ALPHA, HALF_T, -1)
    with pytest.raises(ValidationError):
        scalar_block(ALPHA, HALF_T, 1.5)
    with pytest.raises(ValidationError):
        scalar_block(1.2, HALF_T, 0)


def test_block_matrix_is_rank_one():
    unnormalized = scalar_block_unnormalized(0.6, HALF_T, 3)
    assert abs(np.linalg.det(unnormalized)) < 1e-15
    matrix = scalar_block_matrix(0.6, HALF_T, 3)
    eigenvalues = np.linalg.eigvalsh(matrix.entries)
    assert eigenvalues[0] == pytest.approx(0.0, abs=1e-12)
    assert eigenvalues[1] == pytest.approx(1.0, abs=1e-12)


def test_every_block_on_the_grid_is_rank_one():
    for alpha in np.linspace(0.0, 1.0, 11):
        for r in (0.0, 0.5, 1.0, 2.0, 3.0, 4.0):
            frame = ScalarFrame.from_r(r)
            stack = scalar_block_stack(alpha, frame, truncation_depth(frame))
            eigenvalues = np.linalg.eigvalsh(stack)
            assert np.all(np.abs(eigenvalues[:, 0]) < 1e-12)
            assert np.allclose(eigenvalues[:, 1], 1.0, atol=1e-12)


def test_block_stack_matches_single_blocks():
    stack = scalar_block_stack(0.6, HALF_T, 5)
    for n in range(5):
        assert np.allclose(stack[n], scalar_block_matrix(0.6, HALF_T, n).entries.real, atol=1e-15)
    with pytest.raises(ValidationError):
        scalar_block_stack(0.6, ScalarFrame.from_r(0.0), 2)
    with pytest.raises(ValidationError):
        scalar_block_stack(0.6, HALF_T, 0)


def test_deep_block_matrix_survives_weight_underflow():
    frame = ScalarFrame.from_r(0.5)
    assert scalar_block(0.6, frame, 5000).weight == 0.0
    matrix = scalar_block_matrix(0.6, frame, 5000)
    assert np.trace(matrix.entries).real == pytest.approx(1.0)
    with pytest.raises(ValidationError):
        scalar_block_matrix(0.6, ScalarFrame.from_r(0.0), 1)


# ═══════════════════════════════════════════════════════════════════════════════
# TRUNCATION
# ═══════════════════════════════════════════════════════════════════════════════

def test_truncation_depth_at_half_tanh():
    # N = 21 is the last kept index
    assert truncation_depth(HALF_T, 1e-12) == 22


def test_truncation_depth_grows_as_tolerance_shrinks():
    frame = ScalarFrame.from_r(1.0)
    depths = [truncation_depth(frame, tol) for tol in (1e-4, 1e-8, 1e-12, 1e-15)]
    assert depths == sorted(depths)
    assert depths[0] < depths[-1]


def test_truncation_depth_validation():
    assert truncation_depth(ScalarFrame.from_r(0.0), 1e-12) == 1
    with pytest.raises(ValidationError):
        truncation_depth(HALF_T, 0.0)


def test_truncation_depth_reports_achievable_tolerance():
    with pytest.raises(ToleranceInfeasibleError) as info:
        truncation_depth(ScalarFrame.from_r(7.0), 1e-12)
    assert info.value.requested == 1e-12
    assert info.value.achievable > 1e-12


def test_spectrum_masses_are_normalized():
    for r in (0.0, 0.3, 1.0, 2.5):
        spec = scalar_spectrum(0.6, ScalarFrame.from_r(r))
        spec.eigenvalues().check_normalized()
        spec.diagonal().check_normalized()
        assert spec.tail_mass_lam <= 1e-12
        assert not spec.lam.flags.writeable
    blocks = scalar_spectrum(ALPHA, HALF_T).blocks
    assert len(blocks) == 22
    assert blocks[1].lam == pytest.approx(0.234375)


# ═══════════════════════════════════════════════════════════════════════════════
# COHERENCE BY TRUNCATION
# ═══════════════════════════════════════════════════════════════════════════════

def test_scalar_coherence_at_half_tanh():
    report = scalar_coherence(ALPHA, HALF_T)
    assert report.value == pytest.approx(0.968, abs=1e-3)
    assert report.terms_used == 22
    assert report.tail_guarantee < 1e-9


@pytest.mark.parametrize("alpha", ALPHAS)
def test_inertial_scalar_coherence_is_binary_entropy(alpha):
    report = scalar_coherence(alpha, ScalarFrame.from_r(0.0))
    assert report.value == pytest.approx(binary_entropy(alpha ** 2), abs=1e-12)
    assert report.terms_used == 1
    assert report.tail_guarantee == 0.0


@pytest.mark.parametrize("alpha", [0.0, 1.0])
def test_product_states_carry_no_coherence(alpha):
    for r in (0.0, 1.0):
        assert scalar_coherence(alpha, ScalarFrame.from_r(r)).value == 0.0
        assert scalar_limit_coherence(alpha) == 0.0


def test_coherence_matches_dense_block_diagonal_matrix():
    for alpha in (0.3, ALPHA, 0.9):
        spec = scalar_spectrum(alpha, HALF_T)
        dense = block_diag(*[scalar_block_unnormalized(alpha, HALF_T, n) for n in range(spec.terms_used)])
        expected = rel_ent_coherence_matrix(DensityMatrix.from_array(dense)).value
        assert scalar_coherence(alpha, HALF_T).value == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("r", [0.0, 0.5, 1.0, 2.0, 3.0])
def test_coherence_matches_block_eigendecomposition(alpha, r):
    frame = ScalarFrame.from_r(r)
    fast = scalar_coherence(alpha, frame)
    slow = scalar_coherence_from_blocks(alpha, frame)
    assert fast.value == pytest.approx(slow.value, abs=1e-9 + fast.tail_guarantee)
    assert fast.s_rho == pytest.approx(slow.s_rho, abs=1e-9)


def test_block_eigendecomposition_on_fine_grid():
    for r in np.linspace(0.0, 4.0, 20):
        frame = ScalarFrame.from_r(r)
        for alpha in np.linspace(0.0, 1.0, 20):
            fast = scalar_coherence(alpha, frame)
            slow = scalar_coherence_from_blocks(alpha, frame)
            assert abs(fast.value - slow.value) <= 1e-9 + fast.tail_guarantee


def test_tail_guarantee_bounds_truncation_error():
    frame = ScalarFrame.from_r(1.0)
    loose = scalar_coherence(0.6, frame, tol=1e-6)
    tight = scalar_coherence(0.6, frame, tol=1e-14)
    assert 0 < tight.tail_guarantee < loose.tail_guarantee
    assert abs(loose.value - tight.value) <= loose.tail_guarantee + tight.tail_guarantee


def test_tail_entropy_bound_is_zero_at_rest():
    assert tail_entropy_bound(scalar_spectrum(0.6, ScalarFrame.from_r(0.0))) == (0.0, 0.0)


def test_geometric_entropy():
    assert geometric_entropy(0.0) == 0.0
    assert geometric_entropy(1.0) == pytest.approx(2.0)
    means = [0.1, 1.0, 10.0, 100.0]
    values = [geometric_entropy(m) for m in means]
    assert values == sorted(values)


# ═══════════════════════════════════════════════════════════════════════════════
# LARGE ACCELERATION
# ═══════════════════════════════════════════════════════════════════════════════

@pytest.mark.parametrize("probability, expected, tolerance", [
    (0.5, 0.84655, 1e-4),
    (0.125, 0.46616, 1e-4),
    (0.875, 0.478, 1e-3),
])
def test_limit_coherence_values(probability, expected, tolerance):
    assert scalar_limit_coherence(math.sqrt(probability)) == pytest.approx(expected, abs=tolerance)


def test_limit_coherence_stays_finite_near_one():
    value = scalar_limit_coherence(math.sqrt(1 - 1e-6))
    assert 0 <= value < 1e-4


def test_coherence_decreases_with_r_towards_limit():
    values = [evaluate_scalar(ALPHA, ScalarFrame.from_r(r)).value for r in np.arange(0.0, 8.25, 0.25)]
    assert all(a > b for a, b in zip(values, values[1:]))
    limit = scalar_limit_coherence(ALPHA)
    assert values[-1] > limit
    far = evaluate_scalar(ALPHA, ScalarFrame.from_r(10.0))
    assert abs(far.value - limit) < 1e-6


def test_continuum_agrees_with_series_where_both_apply():
    frame = ScalarFrame.from_r(5.0)
    for alpha in (0.3, ALPHA, 0.9):
        series = scalar_coherence(alpha, frame)
        continuum = scalar_coherence_continuum(alpha, frame)
        assert continuum.terms_used == 0
        assert continuum.value == pytest.approx(series.value, abs=continuum.tail_guarantee + 1e-9)
        assert continuum.s_rho == pytest.approx(series.s_rho, abs=1e-6)


def test_continuum_rejects_rest_frame():
    with pytest.raises(ValidationError):
        scalar_coherence_continuum(ALPHA, ScalarFrame.from_r(0.0))


def test_evaluate_scalar_switches_to_continuum():
    frame = ScalarFrame.from_r(7.0)
    report = evaluate_scalar(ALPHA, frame)
    assert report.terms_used == 0
    assert report.tail_guarantee < 1e-5
    with pytest.raises(ToleranceInfeasibleError):
        scalar_coherence(ALPHA, frame)
    near = evaluate_scalar(ALPHA, ScalarFrame.from_r(2.0))
    assert near.terms_used > 0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
