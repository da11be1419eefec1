import math
import os
import sys

import numpy as np
import pytest

sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from rindler.core import binary_entropy, rel_ent_coherence_matrix, spectrum
from rindler.dirac import (
    dirac_coherence,
    dirac_coherence_loss,
    dirac_eigenvalues,
    dirac_limit_coherence,
    dirac_limit_eigenvalues,
    dirac_state,
)
from rindler.errors import ValidationError
from rindler.frames import DiracFrame

THETAS = [0.0, 0.1, math.pi / 8, math.pi / 6, 0.7, math.pi / 4 - 1e-6]
ALPHAS = [0.0, 0.2, 0.5, 1 / math.sqrt(2), 0.9, 1.0]


def test_state_is_valid_and_sparse():
    state = dirac_state(0.5, DiracFrame.from_theta(math.pi / 6))
    state.matrix.validate()
    assert np.all(state.matrix.entries[2, :] == 0)
    assert np.all(state.matrix.entries[:, 2] == 0)
    assert state.matrix.entries[0, 3].real == pytest.approx(0.5 * math.sqrt(0.75) * math.sqrt(0.75))


def test_coherence_example():
    report = dirac_coherence(0.5, DiracFrame.from_theta(math.pi / 6))
    assert report.value == pytest.approx(0.676808, abs=1e-6)
    assert report.terms_used == 4
    assert report.tail_guarantee == 0.0


@pytest.mark.parametrize("alpha", ALPHAS)
def test_inertial_coherence_is_binary_entropy(alpha):
    assert dirac_coherence(alpha, DiracFrame.from_theta(0.0)).value == pytest.approx(
        binary_entropy(alpha ** 2), abs=1e-12)


@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("theta", THETAS)
def test_closed_form_matches_dense_matrix(alpha, theta):
    frame = DiracFrame.from_theta(theta)
    closed = dirac_coherence(alpha, frame)
    dense = rel_ent_coherence_matrix(dirac_state(alpha, frame).matrix)
    assert closed.value == pytest.approx(dense.value, abs=1e-9)
    assert closed.s_rho == pytest.approx(dense.s_rho, abs=1e-9)
    assert closed.s_diag == pytest.approx(dense.s_diag, abs=1e-9)


def test_closed_form_matches_dense_matrix_on_fine_grid():
    for theta in np.linspace(0.0, math.pi / 4 - 1e-6, 50):
        frame = DiracFrame.from_theta(theta)
        for alpha in np.linspace(0.0, 1.0, 50):
            dense = rel_ent_coherence_matrix(dirac_state(alpha, frame).matrix).value
            assert abs(dirac_coherence(alpha, frame).value - dense) < 1e-10


@pytest.mark.parametrize("theta", THETAS)
def test_eigenvalues_match_dense_spectrum(theta):
    frame = DiracFrame.from_theta(theta)
    dense = np.sort(spectrum(dirac_state(0.6, frame).matrix).entries)[-2:]
    closed = np.sort(dirac_eigenvalues(0.6, frame).entries)
    assert np.allclose(dense, closed, atol=1e-12)


def test_product_states_carry_no_coherence():
    for theta in THETAS:
        frame = DiracFrame.from_theta(theta)
        assert dirac_coherence(0.0, frame).value == 0.0
        assert dirac_coherence(1.0, frame).value == pytest.approx(0.0, abs=1e-15)


def test_coherence_decreases_with_theta():
    for alpha in (0.3, 0.5, 1 / math.sqrt(2), 0.9):
        values = [dirac_coherence(alpha, DiracFrame.from_theta(t)).value
                  for t in np.linspace(0.0, math.pi / 4 - 1e-6, 40)]
        assert all(a > b for a, b in zip(values, values[1:]))


# ═══════════════════════════════════════════════════════════════════════════════
# INFINITE ACCELERATION
# ═══════════════════════════════════════════════════════════════════════════════

def test_limit_values():
    assert dirac_limit_coherence(1 / math.sqrt(2)) == pytest.approx(0.688722, abs=1e-6)
    best = math.sqrt((5 - math.sqrt(5)) / 5)
    assert best == pytest.approx(0.743496, abs=1e-6)
    assert dirac_limit_coherence(best) == pytest.approx(0.694242, abs=1e-5)
    assert dirac_limit_coherence(0.0) == 0.0
    assert dirac_limit_coherence(1.0) == pytest.approx(0.0, abs=1e-15)


def test_limit_maximum_location():
    alphas = np.linspace(0.0, 1.0, 10001)
    values = [dirac_limit_coherence(a) for a in alphas]
    assert alphas[int(np.argmax(values))] ** 2 == pytest.approx((5 - math.sqrt(5)) / 5, abs=1e-3)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_finite_theta_approaches_limit(alpha):
    frame = DiracFrame.from_theta(math.pi / 4 - 1e-11)
    assert dirac_coherence(alpha, frame).value == pytest.approx(dirac_limit_coherence(alpha), abs=1e-9)
    assert np.allclose(dirac_eigenvalues(alpha, frame).entries,
                       dirac_limit_eigenvalues(alpha).entries, atol=1e-10)


def test_limit_stays_positive_inside():
    for alpha in np.linspace(0.01, 0.99, 50):
        assert dirac_limit_coherence(alpha) > 0


# ═══════════════════════════════════════════════════════════════════════════════
# LOSS
# ═══════════════════════════════════════════════════════════════════════════════

@pytest.mark.parametrize("alpha", ALPHAS)
def test_loss_is_difference_of_endpoints(alpha):
    at_rest = dirac_coherence(alpha, DiracFrame.from_theta(0.0)).value
    assert dirac_coherence_loss(alpha) == pytest.approx(at_rest - dirac_limit_coherence(alpha), abs=1e-12)


def test_loss_maximum():
    assert dirac_coherence_loss(math.sqrt(0.4)) == pytest.approx(0.321928, abs=1e-6)
    alphas = np.linspace(0.0, 1.0, 10001)
    losses = [dirac_coherence_loss(a) for a in alphas]
    assert max(losses) == pytest.approx(0.321928, abs=1e-6)
    assert alphas[int(np.argmax(losses))] ** 2 == pytest.approx(0.4, abs=1e-3)


def test_alpha_validation():
    frame = DiracFrame.from_theta(0.2)
    for bad in (-0.1, 1.1):
        with pytest.raises(ValidationError):
            dirac_coherence(bad, frame)
        with pytest.raises(ValidationError):
            dirac_limit_coherence(bad)
        with pytest.raises(ValidationError):
            dirac_coherence_loss(bad)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
