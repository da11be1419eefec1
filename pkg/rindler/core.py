#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Rindler Coherence Core - entropy kernels, density matrices and incoherent channels

Field-agnostic building blocks: Shannon and von Neumann entropies (base 2),
dephasing, the relative entropy of coherence of a dense density matrix, and
structured incoherent channels used to spot-check the coherence axioms.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np
from scipy.special import entr, xlogy

from rindler.config import DEFAULT_TOLERANCES, EPS_NORM, LOG_BASE, Tolerances
from rindler.errors import ValidationError

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)

ArrayLike = Union[Sequence[float], np.ndarray]


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


# ═══════════════════════════════════════════════════════════════════════════════
# DOMAIN TYPES
# ═══════════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True, eq=False)
class ProbVector:
    """
    Probability entries plus a certified bound on the mass left out.

    Entries within `EPS_PSD` below zero are clipped to zero; anything more
    negative is rejected.
    """
    entries: np.ndarray
    tail_bound: float = 0.0

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float).ravel()
        if not np.all(np.isfinite(entries)):
            raise ValidationError("Probability entries must be finite")
        if entries.size and entries.min() < -DEFAULT_TOLERANCES.psd:
            raise ValidationError(f"Negative probability entry {entries.min():.3e}")
        tail = float(self.tail_bound)
        if not (tail >= 0 and math.isfinite(tail)):
            raise ValidationError(f"Tail bound must be a nonnegative number, got {tail!r}")
        object.__setattr__(self, "entries", _readonly(np.clip(entries, 0.0, None)))
        object.__setattr__(self, "tail_bound", tail)

    def __len__(self) -> int:
        return int(self.entries.size)

    @property
    def total(self) -> float:
        return float(np.sum(self.entries))

    def check_normalized(self, tolerance: float = EPS_NORM):
        """Raise unless entries plus tail bound sum to one within `tolerance`."""
        drift = self.total + self.tail_bound - 1.0
        if abs(drift) > tolerance:
            raise ValidationError(f"Probability vector is not normalized (drift {drift:.3e})")


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    Square complex matrix meant to be a quantum state.

    Construction only checks shape and finiteness; use `from_array` (or
    `validate`) to enforce Hermiticity, unit trace and positivity.
    """
    entries: np.ndarray

    def __post_init__(self):
        matrix = np.asarray(self.entries, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 1:
            raise ValidationError(f"Density matrix must be square and non-empty, got shape {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise ValidationError("Density matrix entries must be finite")
        object.__setattr__(self, "entries", _readonly(matrix))

    @classmethod
    def from_array(cls, array: ArrayLike, tolerances: Tolerances = DEFAULT_TOLERANCES) -> "DensityMatrix":
        rho = cls(np.asarray(array))
        rho.validate(tolerances)
        return rho

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    def diagonal(self) -> np.ndarray:
        return np.real(np.diag(self.entries)).copy()

    def hermitian_part(self) -> np.ndarray:
        return 0.5 * (self.entries + self.entries.conj().T)

    def validate(self, tolerances: Tolerances = DEFAULT_TOLERANCES):
        """Check Hermiticity, unit trace and positive semidefiniteness."""
        asymmetry = float(np.max(np.abs(self.entries - self.entries.conj().T)))
        if asymmetry > tolerances.herm:
            raise ValidationError(f"Matrix is not Hermitian (max asymmetry {asymmetry:.3e})")
        trace = complex(np.trace(self.entries))
        if abs(trace - 1.0) > tolerances.norm:
            raise ValidationError(f"Trace is {trace.real:.12g}, expected 1")
        lowest = float(np.linalg.eigvalsh(self.hermitian_part())[0])
        if lowest < -tolerances.psd:
            raise ValidationError(f"Matrix is not positive semidefinite (eigenvalue {lowest:.3e})")


@dataclass(frozen=True)
class CoherenceReport:
    """Relative entropy of coherence in bits, with truncation metadata."""
    value: float
    s_diag: float
    s_rho: float
    terms_used: int
    tail_guarantee: float = 0.0
    log_base: int = LOG_BASE

    def __post_init__(self):
        if self.value < -EPS_NORM:
            raise ValidationError(f"Coherence {self.value:.3e} is negative beyond tolerance")
        gap = abs(self.value - (self.s_diag - self.s_rho))
        if gap > EPS_NORM * max(1.0, abs(self.s_diag)):
            raise ValidationError(f"Coherence disagrees with S(diag) - S(rho) by {gap:.3e}")
        if self.tail_guarantee < 0:
            raise ValidationError("Tail guarantee must be nonnegative")

    @classmethod
    def from_entropies(cls, s_diag: float, s_rho: float, terms_used: int,
                       tail_guarantee: float = 0.0) -> "CoherenceReport":
        value = s_diag - s_rho
        if -EPS_NORM <= value < 0:
            value = 0.0
        return cls(value=value, s_diag=s_diag, s_rho=s_rho,
                   terms_used=int(terms_used), tail_guarantee=float(tail_guarantee))


# ═══════════════════════════════════════════════════════════════════════════════
# ENTROPY KERNELS
# ═══════════════════════════════════════════════════════════════════════════════

def shannon_entropy(p: Union[ProbVector, ArrayLike],
                    tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """
    Shannon entropy in bits, with 0 * log 0 = 0.

    Args:
        p: a ProbVector or a plain sequence of probabilities
        tolerances: entries below -tolerances.psd are rejected

    Returns:
        -sum(p_i log2 p_i), never negative
    """
    values = p.entries if isinstance(p, ProbVector) else np.asarray(p, dtype=float).ravel()
    if values.size == 0:
        return 0.0
    if values.min() < -tolerances.psd:
        raise ValidationError(f"Negative probability entry {values.min():.3e}")
    entropy = float(np.sum(entr(np.clip(values, 0.0, None)))) / LN2
    return max(entropy, 0.0)


def binary_entropy(x: float) -> float:
    """H2(x) = -x log2 x - (1 - x) log2(1 - x)."""
    if not 0.0 <= x <= 1.0:
        raise ValidationError(f"Binary entropy argument must lie in [0, 1], got {x!r}")
    return shannon_entropy([x, 1.0 - x])


def _require_hermitian(rho: DensityMatrix, tolerances: Tolerances):
    asymmetry = float(np.max(np.abs(rho.entries - rho.entries.conj().T)))
    if asymmetry > tolerances.herm:
        raise ValidationError(f"Matrix is not Hermitian (max asymmetry {asymmetry:.3e})")


def spectrum(rho: DensityMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ProbVector:
    """
    Eigenvalues of a density matrix as a probability vector.

    Eigenvalues below -psd are an error; the rest are clamped into [0, 1] and
    renormalized only when the total drift is below the norm tolerance.
    """
    _require_hermitian(rho, tolerances)
    eigenvalues = np.linalg.eigvalsh(rho.hermitian_part())
    if eigenvalues[0] < -tolerances.psd:
        raise ValidationError(f"Eigenvalue {eigenvalues[0]:.3e} is below -{tolerances.psd:g}")
    eigenvalues = np.clip(eigenvalues, 0.0, 1.0)
    drift = float(eigenvalues.sum()) - 1.0
    if abs(drift) >= tolerances.norm:
        raise ValidationError(f"Spectrum sums to 1{drift:+.3e}; trace is off")
    if drift != 0.0:
        eigenvalues = eigenvalues / eigenvalues.sum()
    return ProbVector(eigenvalues)


def von_neumann_entropy(rho: DensityMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Von Neumann entropy S(rho) in bits."""
    return shannon_entropy(spectrum(rho, tolerances), tolerances)


def dephase(rho: DensityMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """Keep only the diagonal of rho (complete dephasing in the reference basis)."""
    rho.validate(tolerances)
    return DensityMatrix(np.diag(rho.diagonal()))


def rel_ent_coherence_matrix(rho: DensityMatrix,
                             tolerances: Tolerances = DEFAULT_TOLERANCES) -> CoherenceReport:
    """C(rho) = S(rho_diag) - S(rho) for a finite density matrix."""
    s_diag = von_neumann_entropy(dephase(rho, tolerances), tolerances)
    s_rho = von_neumann_entropy(rho, tolerances)
    return CoherenceReport.from_entropies(s_diag, s_rho, terms_used=rho.dim)


def is_incoherent(rho: DensityMatrix, tol: float = DEFAULT_TOLERANCES.herm) -> bool:
    """True when every off-diagonal magnitude is at most `tol`."""
    off_diagonal = rho.entries - np.diag(np.diag(rho.entries))
    return bool(np.max(np.abs(off_diagonal)) <= tol)


def quantum_relative_entropy(rho: DensityMatrix, sigma: DensityMatrix,
                             tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """
    S(rho || sigma) = Tr rho log2 rho - Tr rho log2 sigma, in bits.

    Returns +inf when rho has weight outside the support of sigma.
    """
    if rho.dim != sigma.dim:
        raise ValidationError(f"Dimension mismatch: {rho.dim} vs {sigma.dim}")
    rho_eigs = spectrum(rho, tolerances).entries
    sigma_eigs, sigma_vecs = np.linalg.eigh(sigma.hermitian_part())
    overlaps = np.real(np.einsum("ji,jk,ki->i", sigma_vecs.conj(), rho.hermitian_part(), sigma_vecs))
    support = sigma_eigs > tolerances.psd
    if np.any(overlaps[~support] > tolerances.norm):
        return math.inf
    neg_entropy = float(np.sum(xlogy(rho_eigs, rho_eigs)))
    cross = float(np.sum(overlaps[support] * np.log(sigma_eigs[support])))
    return max((neg_entropy - cross) / LN2, 0.0)


# ═══════════════════════════════════════════════════════════════════════════════
# INCOHERENT CHANNELS
# ═══════════════════════════════════════════════════════════════════════════════

def _kraus_arrays(kraus: Sequence[ArrayLike], dim: int) -> List[np.ndarray]:
    operators = [np.asarray(k, dtype=complex) for k in kraus]
    if not operators:
        raise ValidationError("Kraus set is empty")
    for k in operators:
        if k.shape != (dim, dim):
            raise ValidationError(f"Kraus operator has shape {k.shape}, expected {(dim, dim)}")
    return operators


def check_incoherent_kraus(kraus: Sequence[ArrayLike], dim: int,
                           tolerances: Tolerances = DEFAULT_TOLERANCES) -> List[np.ndarray]:
    """
    Validate a Kraus set: completeness sum(K^dag K) = I, and every K sends
    each basis projector |i><i| to a diagonal matrix.
    """
    operators = _kraus_arrays(kraus, dim)
    completeness = sum(k.conj().T @ k for k in operators)
    defect = float(np.max(np.abs(completeness - np.eye(dim))))
    if defect > tolerances.norm:
        raise ValidationError(f"Kraus set is not trace preserving (defect {defect:.3e})")
    for index, k in enumerate(operators):
        for i in range(dim):
            column = k[:, i:i + 1]
            image = column @ column.conj().T
            off_diagonal = image - np.diag(np.diag(image))
            if np.max(np.abs(off_diagonal)) > tolerances.herm:
                raise ValidationError(f"Kraus operator {index} creates coherence from |{i}><{i}|")
    return operators


def apply_incoherent_channel(rho: DensityMatrix, kraus: Sequence[ArrayLike],
                             tolerances: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """Phi(rho) = sum K rho K^dag for a validated incoherent Kraus set."""
    rho.validate(tolerances)
    operators = check_incoherent_kraus(kraus, rho.dim, tolerances)
    out = sum(k @ rho.entries @ k.conj().T for k in operators)
    out = out / np.real(np.trace(out))
    return DensityMatrix.from_array(0.5 * (out + out.conj().T), tolerances)


def post_selection_average(rho: DensityMatrix, kraus: Sequence[ArrayLike],
                           tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Average coherence sum_n p_n C(rho_n) after selecting on Kraus outcomes."""
    rho.validate(tolerances)
    operators = check_incoherent_kraus(kraus, rho.dim, tolerances)
    average = 0.0
    for k in operators:
        branch = k @ rho.entries @ k.conj().T
        weight = float(np.real(np.trace(branch)))
        if weight <= tolerances.norm:
            continue
        branch = branch / weight
        state = DensityMatrix.from_array(0.5 * (branch + branch.conj().T), tolerances)
        average += weight * rel_ent_coherence_matrix(state, tolerances).value
    return average


def identity_kraus(dim: int) -> List[np.ndarray]:
    return [np.eye(dim, dtype=complex)]


def dephasing_kraus(dim: int) -> List[np.ndarray]:
    """Projectors onto the reference basis."""
    operators = []
    for i in range(dim):
        projector = np.zeros((dim, dim), dtype=complex)
        projector[i, i] = 1.0
        operators.append(projector)
    return operators


def permutation_kraus(permutation: Sequence[int]) -> List[np.ndarray]:
    """Single unitary Kraus operator sending |i> to |permutation[i]>."""
    dim = len(permutation)
    if sorted(permutation) != list(range(dim)):
        raise ValidationError(f"Not a permutation of 0..{dim - 1}: {list(permutation)}")
    operator = np.zeros((dim, dim), dtype=complex)
    for source, target in enumerate(permutation):
        operator[target, source] = 1.0
    return [operator]


# ═══════════════════════════════════════════════════════════════════════════════
# CONSTRUCTORS
# ═══════════════════════════════════════════════════════════════════════════════

def projector(vector: ArrayLike) -> DensityMatrix:
    """Pure state |psi><psi| of a (not necessarily normalized) vector."""
    psi = np.asarray(vector, dtype=complex).ravel()
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise ValidationError("Cannot build a projector from the zero vector")
    psi = psi / norm
    return DensityMatrix.from_array(np.outer(psi, psi.conj()))


def mix(states: Sequence[DensityMatrix], weights: Sequence[float],
        tolerances: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """Convex combination sum_n w_n rho_n."""
    if len(states) != len(weights) or not states:
        raise ValidationError("Need one weight per state and at least one state")
    w = np.asarray(weights, dtype=float)
    if w.min() < 0 or abs(w.sum() - 1.0) > tolerances.norm:
        raise ValidationError(f"Weights must be a probability distribution, got {w.tolist()}")
    dims = {s.dim for s in states}
    if len(dims) != 1:
        raise ValidationError(f"States have different dimensions: {sorted(dims)}")
    out = sum(wi * s.entries for wi, s in zip(w, states))
    return DensityMatrix.from_array(out, tolerances)


def random_density_matrix(dim: int, seed: Optional[int] = None) -> DensityMatrix:
    """
    Random full-rank state G G^dag / Tr(G G^dag), G complex Gaussian.

    Deterministic for a fixed seed.
    """
    if int(dim) < 1:
        raise ValidationError(f"Dimension must be at least 1, got {dim}")
    dim = int(dim)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return DensityMatrix.from_array(m / np.real(np.trace(m)))
