import math
import os
import sys

import numpy as np
import pytest

sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from rindler.config import Tolerances
from rindler.core import (
    CoherenceReport,
    DensityMatrix,
    ProbVector,
    apply_incoherent_channel,
    binary_entropy,
    check_incoherent_kraus,
    dephase,
    dephasing_kraus,
    identity_kraus,
    is_incoherent,
    mix,
    permutation_kraus,
    post_selection_average,
    projector,
    quantum_relative_entropy,
    random_density_matrix,
    rel_ent_coherence_matrix,
    shannon_entropy,
    spectrum,
    von_neumann_entropy,
)
from rindler.dirac import dirac_diagonal_state, dirac_state
from rindler.errors import ValidationError
from rindler.frames import DiracFrame

PLUS = projector([1.0, 1.0])
NEAR_QUARTER_PI = math.pi / 4 - 1e-11


# ═══════════════════════════════════════════════════════════════════════════════
# ENTROPIES
# ═══════════════════════════════════════════════════════════════════════════════

def test_shannon_entropy_examples():
    assert shannon_entropy(ProbVector([1.0])) == 0.0
    assert shannon_entropy(ProbVector([0.5, 0.5])) == pytest.approx(1.0, abs=1e-15)
    assert shannon_entropy([0.25, 0.75]) == pytest.approx(0.811278, abs=1e-6)


def test_zero_times_log_zero_is_zero():
    assert shannon_entropy([0.0, 1.0]) == 0.0
    assert shannon_entropy([0.0, 0.5, 0.0, 0.5]) == pytest.approx(1.0, abs=1e-15)
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0


def test_shannon_rejects_negative_entries():
    with pytest.raises(ValidationError):
        shannon_entropy([1.1, -0.1])
    with pytest.raises(ValidationError):
        ProbVector([0.5, -1e-3])
    # tiny negative rounding is clipped
    assert ProbVector([1.0, -1e-14]).entries[1] == 0.0


@pytest.mark.parametrize("dim", range(2, 9))
def test_shannon_is_permutation_invariant_and_maximal_at_uniform(dim):
    rng = np.random.default_rng(dim)
    for _ in range(20):
        p = rng.dirichlet(np.ones(dim))
        assert shannon_entropy(p) == pytest.approx(shannon_entropy(rng.permutation(p)), abs=1e-13)
        assert shannon_entropy(p) <= math.log2(dim) + 1e-12
    assert shannon_entropy(np.full(dim, 1.0 / dim)) == pytest.approx(math.log2(dim), abs=1e-12)


def test_prob_vector_normalization_counts_tail():
    ProbVector([0.5, 0.25], tail_bound=0.25).check_normalized()
    with pytest.raises(ValidationError):
        ProbVector([0.5, 0.25]).check_normalized()


def test_von_neumann_entropy_examples():
    assert von_neumann_entropy(DensityMatrix.from_array(np.eye(2) / 2)) == pytest.approx(1.0, abs=1e-12)
    assert von_neumann_entropy(PLUS) == pytest.approx(0.0, abs=1e-12)
    state = dirac_state(1 / math.sqrt(2), DiracFrame.from_theta(NEAR_QUARTER_PI))
    eigenvalues = spectrum(state.matrix).entries
    assert max(eigenvalues[eigenvalues < 0.5]) == pytest.approx(0.25, abs=1e-10)
    assert von_neumann_entropy(state.matrix) == pytest.approx(shannon_entropy([0.75, 0.25]), abs=1e-9)


def test_von_neumann_rejects_non_hermitian_and_negative_spectrum():
    with pytest.raises(ValidationError):
        von_neumann_entropy(DensityMatrix(np.array([[0.5, 0.3], [0.0, 0.5]])))
    with pytest.raises(ValidationError):
        von_neumann_entropy(DensityMatrix(np.diag([1.2, -0.2])))


def test_spectrum_refuses_large_trace_drift():
    with pytest.raises(ValidationError):
        spectrum(DensityMatrix(np.diag([0.6, 0.6])))


def test_density_matrix_validation():
    with pytest.raises(ValidationError):
        DensityMatrix.from_array(np.ones((2, 3)) / 2)
    with pytest.raises(ValidationError):
        DensityMatrix.from_array(np.diag([0.7, 0.7]))
    with pytest.raises(ValidationError):
        DensityMatrix.from_array([[0.5, 0.6], [0.6, 0.5]])
    strict = Tolerances(norm=1e-3, herm=1e-3, psd=1e-3)
    DensityMatrix.from_array(np.diag([0.5, 0.5005]), strict)


# ═══════════════════════════════════════════════════════════════════════════════
# DEPHASING AND COHERENCE
# ═══════════════════════════════════════════════════════════════════════════════

def test_dephase_examples():
    diagonal = DensityMatrix.from_array(np.diag([0.2, 0.3, 0.5]))
    assert np.array_equal(dephase(diagonal).entries, diagonal.entries)
    assert np.allclose(dephase(PLUS).entries, np.eye(2) / 2)
    state = dirac_state(0.6, DiracFrame.from_theta(0.4))
    assert np.allclose(dephase(state.matrix).entries, dirac_diagonal_state(0.6, state.frame).entries, atol=1e-15)


def test_dephase_is_idempotent_and_raises_entropy():
    for seed in range(20):
        rho = random_density_matrix(3, seed)
        once = dephase(rho)
        assert np.array_equal(dephase(once).entries, once.entries)
        assert np.trace(once.entries).real == pytest.approx(1.0, abs=1e-12)
        assert von_neumann_entropy(once) >= von_neumann_entropy(rho) - 1e-10


def test_rel_ent_coherence_examples():
    report = rel_ent_coherence_matrix(DensityMatrix.from_array(np.diag([0.1, 0.9])))
    assert report.value == pytest.approx(0.0, abs=1e-12)
    assert report.tail_guarantee == 0.0
    assert rel_ent_coherence_matrix(PLUS).value == pytest.approx(1.0, abs=1e-12)
    state = dirac_state(0.5, DiracFrame.from_theta(math.pi / 6))
    assert rel_ent_coherence_matrix(state.matrix).value == pytest.approx(0.6768, abs=1e-4)


def test_coherence_report_invariants():
    CoherenceReport(value=0.5, s_diag=1.0, s_rho=0.5, terms_used=2)
    with pytest.raises(ValidationError):
        CoherenceReport(value=0.4, s_diag=1.0, s_rho=0.5, terms_used=2)
    with pytest.raises(ValidationError):
        CoherenceReport(value=-0.1, s_diag=0.4, s_rho=0.5, terms_used=2)
    clamped = CoherenceReport.from_entropies(0.5, 0.5 + 1e-13, terms_used=2)
    assert clamped.value == 0.0


def test_is_incoherent():
    assert is_incoherent(DensityMatrix.from_array(np.eye(3) / 3))
    assert not is_incoherent(PLUS)
    assert is_incoherent(dirac_state(1.0, DiracFrame.from_theta(0.3)).matrix)


def test_coherence_zero_iff_incoherent():
    for seed in range(50):
        rho = random_density_matrix(2 + seed % 3, seed)
        value = rel_ent_coherence_matrix(rho).value
        assert value >= -1e-10
        assert (value <= 1e-10) == is_incoherent(rho, 1e-10)


def test_relative_entropy_is_minimized_by_dephased_state():
    rng = np.random.default_rng(3)
    for seed in range(20):
        rho = random_density_matrix(3, seed)
        c = rel_ent_coherence_matrix(rho).value
        assert quantum_relative_entropy(rho, dephase(rho)) == pytest.approx(c, abs=1e-10)
        other = DensityMatrix.from_array(np.diag(rng.dirichlet(np.ones(3))))
        assert quantum_relative_entropy(rho, other) >= c - 1e-10


def test_relative_entropy_outside_support_is_infinite():
    zero = DensityMatrix.from_array(np.diag([1.0, 0.0]))
    assert quantum_relative_entropy(PLUS, zero) == math.inf
    with pytest.raises(ValidationError):
        quantum_relative_entropy(PLUS, DensityMatrix.from_array(np.eye(3) / 3))


# ═══════════════════════════════════════════════════════════════════════════════
# CHANNELS
# ═══════════════════════════════════════════════════════════════════════════════

def test_identity_channel_leaves_state_unchanged():
    rho = random_density_matrix(3, 11)
    out = apply_incoherent_channel(rho, identity_kraus(3))
    assert np.allclose(out.entries, rho.entries, atol=1e-14)


def test_permutation_channel_permutes_diagonal():
    rho = DensityMatrix.from_array(np.diag([0.1, 0.2, 0.7]))
    out = apply_incoherent_channel(rho, permutation_kraus([2, 0, 1]))
    assert np.allclose(out.diagonal(), [0.2, 0.7, 0.1])


def test_dephasing_channel_on_plus_state():
    out = apply_incoherent_channel(PLUS, dephasing_kraus(2))
    assert np.allclose(out.entries, np.eye(2) / 2)


def test_kraus_validation():
    with pytest.raises(ValidationError):
        check_incoherent_kraus([np.eye(2) * 0.5], 2)
    hadamard = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    with pytest.raises(ValidationError):
        check_incoherent_kraus([hadamard], 2)
    with pytest.raises(ValidationError):
        permutation_kraus([0, 0, 1])
    with pytest.raises(ValidationError):
        check_incoherent_kraus([], 2)


def test_post_selection_after_dephasing_carries_no_coherence():
    rho = random_density_matrix(4, 5)
    assert post_selection_average(rho, dephasing_kraus(4)) == pytest.approx(0.0, abs=1e-12)


def test_mix_is_convex_for_coherence():
    first, second = random_density_matrix(3, 1), random_density_matrix(3, 2)
    mixed = mix([first, second], [0.3, 0.7])
    bound = 0.3 * rel_ent_coherence_matrix(first).value + 0.7 * rel_ent_coherence_matrix(second).value
    assert rel_ent_coherence_matrix(mixed).value <= bound + 1e-10
    with pytest.raises(ValidationError):
        mix([first, second], [0.5, 0.6])


# ═══════════════════════════════════════════════════════════════════════════════
# RANDOM STATES
# ═══════════════════════════════════════════════════════════════════════════════

@pytest.mark.parametrize("dim", [1, 2, 3, 4])
def test_random_density_matrix_is_valid(dim):
    rho = random_density_matrix(dim, 42)
    rho.validate()
    eigenvalues = spectrum(rho).entries
    assert np.all((eigenvalues >= 0) & (eigenvalues <= 1))


def test_random_density_matrix_is_deterministic():
    assert np.array_equal(random_density_matrix(4, 7).entries, random_density_matrix(4, 7).entries)
    assert not np.array_equal(random_density_matrix(4, 7).entries, random_density_matrix(4, 8).entries)


def test_random_density_matrix_rejects_bad_dim():
    with pytest.raises(ValidationError):
        random_density_matrix(0, 1)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
