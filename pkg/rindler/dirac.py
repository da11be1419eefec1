#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Rindler Dirac Field - closed-form reduced state, coherence, limit and loss

Basis order is |00>, |01>, |10>, |11> (Alice's qubit, then Rob's region-I
occupation). The |10> row and column are identically zero.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import entr

from rindler.core import LN2, CoherenceReport, DensityMatrix, ProbVector
from rindler.frames import DiracFrame, check_alpha


def _eta(p: float) -> float:
    return float(entr(p)) / LN2


@dataclass(frozen=True, eq=False)
class DiracState:
    alpha: float
    frame: DiracFrame
    matrix: DensityMatrix


def dirac_state(alpha: float, frame: DiracFrame) -> DiracState:
    """Reduced Alice-Rob state for the Dirac field at angle frame.theta."""
    alpha = check_alpha(alpha)
    a2 = alpha * alpha
    coupling = alpha * math.sqrt(1.0 - a2) * frame.cos
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = a2 * frame.cos2
    m[1, 1] = a2 * frame.sin2
    m[3, 3] = 1.0 - a2
    m[0, 3] = m[3, 0] = coupling
    return DiracState(alpha=alpha, frame=frame, matrix=DensityMatrix.from_array(m))


def dirac_diagonal_state(alpha: float, frame: DiracFrame) -> DensityMatrix:
    """The dephased Dirac state diag(a^2 cos^2, a^2 sin^2, 0, 1 - a^2)."""
    alpha = check_alpha(alpha)
    a2 = alpha * alpha
    return DensityMatrix.from_array(np.diag([a2 * frame.cos2, a2 * frame.sin2, 0.0, 1.0 - a2]))


def dirac_eigenvalues(alpha: float, frame: DiracFrame) -> ProbVector:
    """Nonzero eigenvalues {1 - a^2 sin^2, a^2 sin^2}."""
    alpha = check_alpha(alpha)
    low = alpha * alpha * frame.sin2
    return ProbVector([1.0 - low, low])


def dirac_limit_eigenvalues(alpha: float) -> ProbVector:
    """Eigenvalues at theta = pi/4: {1 - a^2 / 2, a^2 / 2}."""
    alpha = check_alpha(alpha)
    low = alpha * alpha / 2.0
    return ProbVector([1.0 - low, low])


def dirac_coherence(alpha: float, frame: DiracFrame) -> CoherenceReport:
    """
    Closed-form relative entropy of coherence of the Dirac state.

    C = -a^2 cos^2 log2(a^2 cos^2) - (1 - a^2) log2(1 - a^2)
        + (1 - a^2 sin^2) log2(1 - a^2 sin^2)
    """
    alpha = check_alpha(alpha)
    a2 = alpha * alpha
    upper = _eta(a2 * frame.cos2)
    lower = _eta(a2 * frame.sin2)
    vacuum = _eta(1.0 - a2)
    mixed = _eta(1.0 - a2 * frame.sin2)
    value = upper + vacuum - mixed
    return CoherenceReport(
        value=max(value, 0.0),
        s_diag=upper + lower + vacuum,
        s_rho=mixed + lower,
        terms_used=4,
    )


def dirac_limit_coherence(alpha: float) -> float:
    """
    Coherence left at infinite acceleration (theta = pi/4), in bits.

    -(1 - a^2) log2(1 - a^2) - (a^2 / 2) log2(a^2 / 2)
        + ((2 - a^2) / 2) log2((2 - a^2) / 2)
    """
    x = check_alpha(alpha) ** 2
    value = _eta(1.0 - x) + _eta(x / 2.0) - _eta((2.0 - x) / 2.0)
    return max(value, 0.0)


def dirac_coherence_loss(alpha: float) -> float:
    """
    Coherence lost between theta = 0 and theta = pi/4, in bits.

    -a^2 log2 a^2 + (a^2 / 2) log2(a^2 / 2) - ((2 - a^2) / 2) log2((2 - a^2) / 2)
    """
    x = check_alpha(alpha) ** 2
    value = _eta(x) - _eta(x / 2.0) + _eta((2.0 - x) / 2.0)
    return max(value, 0.0)
