#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Rindler Axiom Suite - seeded spot-checks of the coherence-measure axioms

Every check reports its worst margin: how far the inequality held on the
least favourable trial (negative means violated). A trial counts as a
violation only when the margin drops below -AXIOM_TOL.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence

import numpy as np

from rindler.config import AXIOM_TOL, DEFAULT_TOLERANCES, Tolerances
from rindler.core import (
    DensityMatrix,
    apply_incoherent_channel,
    dephase,
    dephasing_kraus,
    is_incoherent,
    mix,
    permutation_kraus,
    post_selection_average,
    quantum_relative_entropy,
    random_density_matrix,
    rel_ent_coherence_matrix,
)
from rindler.errors import ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    dim: int
    trials: int
    violations: int
    worst_margin: float

    @property
    def passed(self) -> bool:
        return self.violations == 0


def _coherence(rho: DensityMatrix, tolerances: Tolerances) -> float:
    return rel_ent_coherence_matrix(rho, tolerances).value


# Each check takes (rng, dim, tolerances) and returns the margin of one trial.

def _faithfulness(rng: np.random.Generator, dim: int, tolerances: Tolerances) -> float:
    rho = random_density_matrix(dim, int(rng.integers(2**32)))
    delta = dephase(rho, tolerances)
    c_rho = _coherence(rho, tolerances)
    c_delta = _coherence(delta, tolerances)
    # zero exactly on incoherent states
    agrees = (c_rho <= tolerances.norm) == is_incoherent(rho, tolerances.herm)
    if not (agrees and is_incoherent(delta, tolerances.herm)):
        return -np.inf
    return min(c_rho, -abs(c_delta))


def _dephasing_monotone(rng: np.random.Generator, dim: int, tolerances: Tolerances) -> float:
    rho = random_density_matrix(dim, int(rng.integers(2**32)))
    out = apply_incoherent_channel(rho, dephasing_kraus(dim), tolerances)
    return _coherence(rho, tolerances) - _coherence(out, tolerances)


def _permutation_monotone(rng: np.random.Generator, dim: int, tolerances: Tolerances) -> float:
    rho = random_density_matrix(dim, int(rng.integers(2**32)))
    kraus = permutation_kraus([int(i) for i in rng.permutation(dim)])
    out = apply_incoherent_channel(rho, kraus, tolerances)
    return _coherence(rho, tolerances) - _coherence(out, tolerances)


def _post_selection_monotone(rng: np.random.Generator, dim: int, tolerances: Tolerances) -> float:
    rho = random_density_matrix(dim, int(rng.integers(2**32)))
    return _coherence(rho, tolerances) - post_selection_average(rho, dephasing_kraus(dim), tolerances)


def _convexity(rng: np.random.Generator, dim: int, tolerances: Tolerances) -> float:
    first = random_density_matrix(dim, int(rng.integers(2**32)))
    second = random_density_matrix(dim, int(rng.integers(2**32)))
    p = float(rng.uniform())
    mixed = mix([first, second], [p, 1.0 - p], tolerances)
    bound = p * _coherence(first, tolerances) + (1.0 - p) * _coherence(second, tolerances)
    return bound - _coherence(mixed, tolerances)


def _closest_incoherent(rng: np.random.Generator, dim: int, tolerances: Tolerances) -> float:
    """S(rho || delta) >= C(rho) for a random incoherent delta, with equality at the dephased state."""
    rho = random_density_matrix(dim, int(rng.integers(2**32)))
    c_rho = _coherence(rho, tolerances)
    weights = rng.dirichlet(np.ones(dim))
    delta = DensityMatrix.from_array(np.diag(weights), tolerances)
    above = quantum_relative_entropy(rho, delta, tolerances) - c_rho
    at_dephased = quantum_relative_entropy(rho, dephase(rho, tolerances), tolerances) - c_rho
    return min(above, -abs(at_dephased))


CHECKS: Dict[str, Callable[[np.random.Generator, int, Tolerances], float]] = {
    "faithfulness": _faithfulness,
    "monotone_dephasing": _dephasing_monotone,
    "monotone_permutation": _permutation_monotone,
    "post_selection_dephasing": _post_selection_monotone,
    "convexity": _convexity,
    "closest_incoherent": _closest_incoherent,
}


def run_axiom_suite(seed: int = 0, trials: int = 1000, dims: Sequence[int] = (2, 3, 4),
                    tolerances: Tolerances = DEFAULT_TOLERANCES,
                    tolerance: float = AXIOM_TOL) -> List[AxiomCheck]:
    """
    Run every check for `trials` seeded random states at each dimension.

    Args:
        seed: root seed; each (check, dim) pair gets its own child stream
        trials: random trials per check and dimension
        dims: matrix dimensions to test
        tolerances: kernel tolerances
        tolerance: allowed slack on every inequality

    Returns:
        one AxiomCheck per (check, dim), checks in CHECKS order
    """
    if trials < 1:
        raise ValidationError(f"Need at least one trial, got {trials}")
    results = []
    for index, (name, check) in enumerate(CHECKS.items()):
        for dim in dims:
            if int(dim) < 2:
                raise ValidationError(f"Axiom checks need dim >= 2, got {dim}")
            rng = np.random.default_rng([seed, index, int(dim)])
            margins = np.array([check(rng, int(dim), tolerances) for _ in range(trials)])
            violations = int(np.sum(margins < -tolerance))
            results.append(AxiomCheck(name=name, dim=int(dim), trials=trials,
                                      violations=violations, worst_margin=float(margins.min())))
            logger.info("%s dim=%d: %d/%d violations, worst margin %.3e",
                        name, dim, violations, trials, margins.min())
    return results
