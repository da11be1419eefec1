#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Rindler Scalar Field - block spectrum and coherence of the bosonic state

Tracing out region II leaves Rob's mode in a two-mode squeezed mixture. In the
basis |m, n> (Alice's qubit m, Rob's Rindler occupation n) the reduced state
is block diagonal: block n lives on {|0, n>, |1, n+1>} and carries weight

    w_n = tanh^(2n) r / cosh^2 r

with diagonal masses p0 = w_n a^2 and p1 = w_n (1 - a^2)(n + 1) / cosh^2 r.
Every block is rank one, so its only nonzero eigenvalue is lam = p0 + p1 and
the coherence collapses to

    C = sum_n lam_n * H2(p0_n / lam_n)

The infinite sum is truncated with closed-form tail masses, and the entropy of
the omitted tail is bounded by the maximum entropy of a distribution on the
nonnegative integers with a known mean (the geometric distribution).

When the certified truncation would need more than SERIES_HARD_CAP blocks
(r beyond roughly 6 at tol 1e-12) `evaluate_scalar` switches to a continuum
evaluation of the same sum, and `scalar_limit_coherence` gives the r -> inf
value in closed form.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize_scalar
from scipy.special import entr, exp1, xlogy

from rindler.config import EPS_NORM, EPS_PSD, SERIES_HARD_CAP, SERIES_TOL
from rindler.core import (
    LN2,
    CoherenceReport,
    DensityMatrix,
    ProbVector,
    shannon_entropy,
)
from rindler.errors import ToleranceInfeasibleError, ValidationError
from rindler.frames import ScalarFrame, check_alpha

logger = logging.getLogger(__name__)

# e^z E1(z) switches to its asymptotic series beyond this point
EXP1_ASYMPTOTIC_FROM = 600.0


def _eta(p):
    """-p log2 p, elementwise, with 0 log 0 = 0."""
    return entr(p) / LN2


# ═══════════════════════════════════════════════════════════════════════════════
# BLOCK TYPES
# ═══════════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class ScalarBlock:
    """One 2x2 block of the reduced scalar state, scaled by its weight."""
    n: int
    weight: float
    p0: float
    p1: float
    lam: float

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError(f"Block index must be >= 0, got {self.n}")
        if self.p0 < 0 or self.p1 < 0:
            raise ValidationError("Block diagonal masses must be nonnegative")
        if self.lam != self.p0 + self.p1:
            raise ValidationError("Block eigenvalue must equal p0 + p1")


@dataclass(frozen=True, eq=False)
class ScalarSpectrum:
    """
    Blocks 0..N as parallel arrays plus certified tail masses.

    Arrays are read-only; `blocks` materializes ScalarBlock objects on demand.
    """
    alpha: float
    frame: ScalarFrame
    weight: np.ndarray
    p0: np.ndarray
    p1: np.ndarray
    lam: np.ndarray
    tail_mass_lam: float
    tail_mass_p0: float
    tail_mass_p1: float

    def __post_init__(self):
        for name in ("weight", "p0", "p1", "lam"):
            array = np.array(getattr(self, name), dtype=float, copy=True)
            array.setflags(write=False)
            object.__setattr__(self, name, array)
        eigen_mass = float(np.sum(self.lam)) + self.tail_mass_lam
        diag_mass = float(np.sum(self.p0) + np.sum(self.p1)) + self.tail_mass_p0 + self.tail_mass_p1
        for label, mass in (("eigenvalue", eigen_mass), ("diagonal", diag_mass)):
            if not (1.0 - EPS_NORM <= mass <= 1.0 + EPS_NORM):
                raise ValidationError(f"Scalar {label} mass {mass!r} is not within tolerance of 1")

    @property
    def terms_used(self) -> int:
        return int(self.lam.size)

    @property
    def blocks(self) -> List[ScalarBlock]:
        return [
            ScalarBlock(n=n, weight=float(w), p0=float(a), p1=float(b), lam=float(a) + float(b))
            for n, (w, a, b) in enumerate(zip(self.weight, self.p0, self.p1))
        ]

    def eigenvalues(self) -> ProbVector:
        return ProbVector(self.lam, tail_bound=self.tail_mass_lam)

    def diagonal(self) -> ProbVector:
        return ProbVector(np.concatenate([self.p0, self.p1]),
                          tail_bound=self.tail_mass_p0 + self.tail_mass_p1)


# ═══════════════════════════════════════════════════════════════════════════════
# BLOCKS AND TRUNCATION
# ═══════════════════════════════════════════════════════════════════════════════

def _log_weight(frame: ScalarFrame, n: int) -> float:
    if n == 0:
        return math.log(frame.sech2)
    if frame.r == 0:
        return -math.inf
    return n * frame.log_t2 + math.log(frame.sech2)


def scalar_block(alpha: float, frame: ScalarFrame, n: int) -> ScalarBlock:
    """
    Weight, diagonal masses and eigenvalue of block n.

    The weight is accumulated in the log domain so tanh^(2n) r never
    underflows before the final exponential.
    """
    alpha = check_alpha(alpha)
    if int(n) != n or n < 0:
        raise ValidationError(f"Block index must be a nonnegative integer, got {n!r}")
    n = int(n)
    a2 = alpha * alpha
    weight = math.exp(_log_weight(frame, n))
    p0 = weight * a2
    p1 = weight * (1.0 - a2) * (n + 1) * frame.sech2
    return ScalarBlock(n=n, weight=weight, p0=p0, p1=p1, lam=p0 + p1)


def _log_tail(frame: ScalarFrame, blocks: int) -> float:
    """ln of t^(2M) (1 + M sech^2 r) for M kept blocks; decreasing in M."""
    return blocks * frame.log_t2 + math.log1p(blocks * frame.sech2)


def truncation_depth(frame: ScalarFrame, tol: float = SERIES_TOL,
                     hard_cap: int = SERIES_HARD_CAP) -> int:
    """
    Smallest number of blocks M = N + 1 whose omitted tails both fall below tol.

    The two tails are t^(2M) and t^(2M)(1 + M sech^2 r); the second dominates,
    so only it is tested. Raises ToleranceInfeasibleError when M would exceed
    `hard_cap`, reporting the tolerance that `hard_cap` blocks do achieve.
    """
    if not (tol > 0 and math.isfinite(tol)):
        raise ValidationError(f"Series tolerance must be positive, got {tol!r}")
    if frame.r == 0:
        return 1
    log_tol = math.log(tol)
    if _log_tail(frame, 1) < log_tol:
        return 1
    if _log_tail(frame, hard_cap) >= log_tol:
        achievable = math.exp(_log_tail(frame, hard_cap))
        raise ToleranceInfeasibleError(
            f"Series tolerance {tol:.3g} at r={frame.r:g} needs more than {hard_cap} terms; "
            f"best achievable is {achievable:.3g}",
            requested=tol, achievable=achievable)
    lo, hi = 1, hard_cap  # tail(lo) >= tol > tail(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _log_tail(frame, mid) < log_tol:
            hi = mid
        else:
            lo = mid
    return hi


def scalar_spectrum(alpha: float, frame: ScalarFrame, tol: float = SERIES_TOL) -> ScalarSpectrum:
    """Blocks 0..N with N chosen by `truncation_depth`, plus analytic tail masses."""
    alpha = check_alpha(alpha)
    blocks = truncation_depth(frame, tol)
    a2 = alpha * alpha
    n = np.arange(blocks, dtype=float)
    if frame.r == 0:
        weight = np.ones(1)
        tail_w = tail_1 = 0.0
    else:
        weight = np.exp(n * frame.log_t2 + math.log(frame.sech2))
        tail_w = math.exp(blocks * frame.log_t2)
        tail_1 = math.exp(_log_tail(frame, blocks))
    p0 = a2 * weight
    p1 = (1.0 - a2) * (n + 1) * frame.sech2 * weight
    logger.debug("scalar spectrum alpha=%.6g r=%.6g: %d blocks", alpha, frame.r, blocks)
    return ScalarSpectrum(
        alpha=alpha, frame=frame, weight=weight, p0=p0, p1=p1, lam=p0 + p1,
        tail_mass_lam=a2 * tail_w + (1.0 - a2) * tail_1,
        tail_mass_p0=a2 * tail_w,
        tail_mass_p1=(1.0 - a2) * tail_1,
    )


# ═══════════════════════════════════════════════════════════════════════════════
# TAIL ENTROPY BOUND
# ═══════════════════════════════════════════════════════════════════════════════

def geometric_entropy(mean: float) -> float:
    """
    Entropy in bits of the geometric law on {0, 1, ...} with the given mean.

    This is the largest entropy any distribution on the nonnegative integers
    with that mean can have.
    """
    if mean <= 0:
        return 0.0
    return (math.log1p(mean) + mean * math.log1p(1.0 / mean)) / LN2


def _tail_entropy(mass: float, mean: float) -> float:
    """Upper bound on -sum p log2 p over a tail of total `mass` and index mean <= `mean`."""
    if mass <= 0:
        return 0.0
    return mass * geometric_entropy(mean) - float(xlogy(mass, mass)) / LN2


def tail_entropy_bound(spec: ScalarSpectrum) -> Tuple[float, float]:
    """
    Bounds on the entropy the truncation drops from S(diag) and S(rho).

    Indices are counted from the first omitted block. The p0 tail is geometric
    with ratio t^2, the p1 tail has weights (n + 1) t^(2n), and the eigenvalue
    tail is their sum, so its mean is the mass-weighted mix of the two.
    """
    frame = spec.frame
    if frame.r == 0:
        return 0.0, 0.0
    s = frame.sech2
    x = math.exp(frame.log_t2)
    m = spec.terms_used
    mean_p0 = x / s
    mean_p1 = (x * (1.0 + x) / s + (m + 1) * x) / (x + (m + 1) * s)
    m0, m1 = spec.tail_mass_p0, spec.tail_mass_p1
    mixed = (m0 * mean_p0 + m1 * mean_p1) / (m0 + m1) if m0 + m1 > 0 else 0.0
    diag = _tail_entropy(m0, mean_p0) + _tail_entropy(m1, mean_p1)
    rho = _tail_entropy(spec.tail_mass_lam, mixed)
    return diag, rho


# ═══════════════════════════════════════════════════════════════════════════════
# COHERENCE
# ═══════════════════════════════════════════════════════════════════════════════

def scalar_coherence(alpha: float, frame: ScalarFrame, tol: float = SERIES_TOL) -> CoherenceReport:
    """
    Relative entropy of coherence of the scalar state by certified truncation.

    Args:
        alpha: superposition amplitude in [0, 1]
        frame: scalar acceleration frame
        tol: bound on each omitted probability tail

    Returns:
        CoherenceReport; tail_guarantee bounds |C_true - value|

    Raises:
        ToleranceInfeasibleError: tol needs more than SERIES_HARD_CAP blocks
    """
    spec = scalar_spectrum(alpha, frame, tol)
    s_rho = shannon_entropy(spec.eigenvalues())
    tail_diag, tail_rho = tail_entropy_bound(spec)
    guarantee = max(tail_diag, tail_rho)
    alpha = spec.alpha
    if alpha in (0.0, 1.0):
        # p0 or p1 vanishes in every block: the state is already diagonal
        return CoherenceReport(value=0.0, s_diag=s_rho, s_rho=s_rho,
                               terms_used=spec.terms_used, tail_guarantee=guarantee)
    s_diag = shannon_entropy(spec.diagonal())
    lam = spec.lam
    live = lam > 0
    q = spec.p0[live] / lam[live]
    value = float(np.sum(lam[live] * (entr(q) + entr(1.0 - q)))) / LN2
    return CoherenceReport(value=max(value, 0.0), s_diag=s_diag, s_rho=s_rho,
                           terms_used=spec.terms_used, tail_guarantee=guarantee)


def scalar_block_unnormalized(alpha: float, frame: ScalarFrame, n: int) -> np.ndarray:
    """Block n as written in the reduced state, weight included (trace = lam)."""
    block = scalar_block(alpha, frame, n)
    off = math.sqrt(block.p0 * block.p1)
    return np.array([[block.p0, off], [off, block.p1]], dtype=complex)


def scalar_block_matrix(alpha: float, frame: ScalarFrame, n: int) -> DensityMatrix:
    """
    Block n renormalized to unit trace, for cross-checks against the dense kernels.

    The entries depend only on q = a^2 / (a^2 + (1 - a^2)(n + 1) sech^2 r),
    so deep blocks whose weight underflows are still exact.
    """
    scalar_block(alpha, frame, n)
    if frame.r == 0 and n > 0:
        raise ValidationError(f"Block {n} is empty at r=0")
    a2 = alpha * alpha
    b = (1.0 - a2) * (n + 1) * frame.sech2
    q = a2 / (a2 + b)
    off = math.sqrt(q * (1.0 - q))
    return DensityMatrix.from_array([[q, off], [off, 1.0 - q]])


def scalar_block_stack(alpha: float, frame: ScalarFrame, terms: int) -> np.ndarray:
    """Blocks 0..terms-1 renormalized to unit trace, stacked as a (terms, 2, 2) array."""
    check_alpha(alpha)
    if terms < 1:
        raise ValidationError(f"Need at least one block, got {terms}")
    if frame.r == 0 and terms > 1:
        raise ValidationError("Only block 0 is populated at r=0")
    a2 = alpha * alpha
    n = np.arange(terms, dtype=float)
    q = a2 / (a2 + (1.0 - a2) * (n + 1.0) * frame.sech2)
    off = np.sqrt(q * (1.0 - q))
    stack = np.empty((terms, 2, 2))
    stack[:, 0, 0] = q
    stack[:, 0, 1] = off
    stack[:, 1, 0] = off
    stack[:, 1, 1] = 1.0 - q
    return stack


def scalar_coherence_from_blocks(alpha: float, frame: ScalarFrame,
                                 tol: float = SERIES_TOL) -> CoherenceReport:
    """
    Brute-force path: eigendecompose every block matrix and feed the dense kernels.

    Shares only the truncation depth and tail masses with `scalar_coherence`.
    All blocks go through one batched `eigvalsh` call.
    """
    spec = scalar_spectrum(alpha, frame, tol)
    stack = scalar_block_stack(alpha, frame, spec.terms_used)
    eigenvalues = np.linalg.eigvalsh(stack)
    if eigenvalues.min() < -EPS_PSD:
        raise ValidationError(f"Block eigenvalue {eigenvalues.min():.3e} is below -{EPS_PSD:g}")
    weights = spec.lam[:, None]
    eigenvalues = np.clip(eigenvalues, 0.0, 1.0) * weights
    diagonals = np.diagonal(stack, axis1=1, axis2=2) * weights
    s_rho = shannon_entropy(ProbVector(eigenvalues.ravel(), spec.tail_mass_lam))
    s_diag = shannon_entropy(ProbVector(diagonals.ravel(),
                                        spec.tail_mass_p0 + spec.tail_mass_p1))
    tail_diag, tail_rho = tail_entropy_bound(spec)
    return CoherenceReport.from_entropies(s_diag, s_rho, terms_used=spec.terms_used,
                                          tail_guarantee=max(tail_diag, tail_rho))


# ═══════════════════════════════════════════════════════════════════════════════
# LARGE ACCELERATION
# ═══════════════════════════════════════════════════════════════════════════════

def _exp_exp1(z: float) -> float:
    """e^z E1(z) for z > 0."""
    if z < EXP1_ASYMPTOTIC_FROM:
        return math.exp(z) * float(exp1(z))
    total, term = 0.0, 1.0 / z
    for k in range(1, 8):
        total += term
        term *= -k / z
    return total


def scalar_limit_coherence(alpha: float) -> float:
    """
    r -> inf limit of the scalar coherence, in bits.

    With x = a^2, y = 1 - a^2 and z = x / y the per-block sum becomes a Laplace
    integral, giving y (ln z + gamma + e^z E1(z)) / ln 2. Zero at alpha = 0, 1.
    """
    alpha = check_alpha(alpha)
    x = alpha * alpha
    y = 1.0 - x
    if x == 0.0 or y == 0.0:
        return 0.0
    z = x / y
    return max(y * (math.log(z) + np.euler_gamma + _exp_exp1(z)) / LN2, 0.0)


def _block_sum(frame: ScalarFrame, profile) -> Tuple[float, float, float]:
    """
    Approximate sum_n f(n), f(n) = s (1 - s)^n profile((n + 1) s), by
    integral + f(0) / 2.

    Returns (estimate, first-order remainder bound, quadrature error). With
    u = n s the integral is int_0^inf exp(-c u) profile(u + s) du where
    c = -ln(1 - s) / s. For unimodal f the remainder is at most
    max f - f(0) / 2.
    """
    s = frame.sech2
    c = -math.log1p(-s) / s

    def integrand(u: float) -> float:
        return math.exp(-c * u) * profile(u + s)

    head, head_err = quad(integrand, 0.0, 1.0, epsabs=1e-13, epsrel=1e-12, limit=200)
    tail, tail_err = quad(integrand, 1.0, math.inf, epsabs=1e-13, epsrel=1e-12, limit=200)
    first = integrand(0.0)
    peak = minimize_scalar(lambda u: -integrand(u), bounds=(0.0, 60.0 / c), method="bounded",
                           options={"xatol": 1e-10})
    highest = max(first, -float(peak.fun))
    estimate = head + tail + 0.5 * s * first
    return estimate, s * (highest - 0.5 * first), head_err + tail_err


def scalar_coherence_continuum(alpha: float, frame: ScalarFrame) -> CoherenceReport:
    """
    Scalar coherence for deep acceleration, where the certified series is too long.

    Each block contributes w_n * phi((n + 1) sech^2 r) with
    phi(v) = eta(a^2) + eta((1 - a^2) v) - eta(a^2 + (1 - a^2) v). phi is
    increasing and concave, so the summand is log-concave in n and hence
    unimodal; the reported guarantee is the Euler-Maclaurin remainder bound
    plus the quadrature error.
    """
    alpha = check_alpha(alpha)
    if frame.r == 0:
        raise ValidationError("Continuum evaluation needs r > 0")
    a = alpha * alpha
    b = 1.0 - a
    s = frame.sech2
    x_log = math.log1p(-s)

    def phi(v: float) -> float:
        return float(_eta(a) + _eta(b * v) - _eta(a + b * v))

    def eta_lam(v: float) -> float:
        return float(_eta(a + b * v))

    # S(rho) = sum eta(w_n A_n), A_n = a + b (n + 1) s; eta(w A) = A eta(w) + w eta(A)
    # and sum w_n A_n (-log2 w_n) has a closed form.
    mean_index = math.exp(x_log) * (a + 2.0 * b) / s
    s_rho_closed = (-math.log(s) - x_log * mean_index) / LN2
    s_rho_sum, _, _ = _block_sum(frame, eta_lam)
    s_rho = s_rho_closed + s_rho_sum

    if a in (0.0, 1.0):
        return CoherenceReport(value=0.0, s_diag=s_rho, s_rho=s_rho, terms_used=0)
    value, remainder, quad_err = _block_sum(frame, phi)
    value = max(value, 0.0)
    logger.debug("continuum scalar alpha=%.6g r=%.6g: C=%.15g remainder=%.3g",
                 alpha, frame.r, value, remainder)
    return CoherenceReport(value=value, s_diag=s_rho + value, s_rho=s_rho,
                           terms_used=0, tail_guarantee=remainder + quad_err)


def evaluate_scalar(alpha: float, frame: ScalarFrame, tol: float = SERIES_TOL) -> CoherenceReport:
    """Certified series when it fits under the term cap, continuum evaluation otherwise."""
    try:
        truncation_depth(frame, tol)
    except ToleranceInfeasibleError as e:
        logger.debug("series infeasible (%s); using continuum evaluation", e)
        return scalar_coherence_continuum(alpha, frame)
    return scalar_coherence(alpha, frame, tol)
