#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Rindler Sweeps - curves over (alpha, r) and (alpha, theta), maximization over
alpha, the maximal-coherence ridge and the Dirac loss curve.

Grid points are independent; `workers > 1` evaluates them on a thread pool and
the results are always returned in grid order.
"""

import logging
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from rindler.config import (
    EPS_NORM,
    GOLDEN_MAX_ITERATIONS,
    GOLDEN_TOL,
    R_AXIS,
    R_MAX,
    RIDGE_POINTS,
    SERIES_TOL,
    THETA_LIMIT,
    THETA_OPEN_MARGIN,
    UNIMODAL_SCAN_POINTS,
    UNIMODAL_SLACK,
    GridSpec,
)
from rindler.dirac import dirac_coherence, dirac_coherence_loss, dirac_limit_coherence
from rindler.errors import BracketError, ToleranceInfeasibleError, ValidationError
from rindler.frames import DiracFrame, FieldKind, ModeParameters, frame_from_parameter
from rindler.scalar import evaluate_scalar, scalar_coherence, scalar_limit_coherence

logger = logging.getLogger(__name__)

PHI_RATIO = 2 / (1 + math.sqrt(5))

Progress = Callable[[int, int], None]


# ═══════════════════════════════════════════════════════════════════════════════
# RESULT TYPES
# ═══════════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class SweepSpec:
    """What to sweep: one curve per alpha over an r or theta grid."""
    field_kind: FieldKind
    alpha_values: Tuple[float, ...]
    param_grid: GridSpec
    series_tol: float = SERIES_TOL
    series_only: bool = False

    def __post_init__(self):
        object.__setattr__(self, "field_kind", FieldKind.parse(self.field_kind))
        alphas = tuple(ModeParameters(a).alpha for a in self.alpha_values)
        if not alphas:
            raise ValidationError("Sweep needs at least one alpha value")
        object.__setattr__(self, "alpha_values", alphas)
        if isinstance(self.param_grid, dict):
            object.__setattr__(self, "param_grid", GridSpec(**self.param_grid))
        grid = self.param_grid
        if grid.start < 0:
            raise ValidationError(f"Grid start must be >= 0, got {grid.start}")
        # theta = pi/4 itself is allowed and evaluated by the limit formula
        if self.field_kind is FieldKind.DIRAC and grid.stop > THETA_LIMIT:
            raise ValidationError(f"Dirac grid must stay within [0, pi/4], got stop={grid.stop}")
        if self.field_kind is FieldKind.SCALAR and grid.stop > R_MAX:
            raise ValidationError(f"Scalar grid must stay within [0, {R_MAX:g}], got stop={grid.stop}")
        if not (self.series_tol > 0):
            raise ValidationError(f"Series tolerance must be positive, got {self.series_tol!r}")


@dataclass(frozen=True)
class CurvePoint:
    alpha: float
    param: float
    coherence: float
    tail_guarantee: float = 0.0

    def __post_init__(self):
        if self.coherence < -EPS_NORM:
            raise ValidationError(f"Coherence {self.coherence:.3e} is negative beyond tolerance")


@dataclass(frozen=True)
class RidgePoint:
    """Best alpha at one acceleration parameter."""
    param: float
    alpha_star: float
    coherence_max: float
    iterations: int = 0

    def __post_init__(self):
        if not (0.0 < self.alpha_star < 1.0):
            raise ValidationError(f"Maximizer {self.alpha_star!r} is not interior to (0, 1)")


@dataclass(frozen=True)
class LossPoint:
    alpha: float
    c_at_0: float
    c_at_limit: float
    delta: float


@dataclass(frozen=True)
class GoldenResult:
    x: float
    value: float
    iterations: int
    converged: bool


# ═══════════════════════════════════════════════════════════════════════════════
# POINT EVALUATION
# ═══════════════════════════════════════════════════════════════════════════════

def limit_param(field_kind: Union[FieldKind, str]) -> float:
    """Parameter value that stands for infinite acceleration."""
    return THETA_LIMIT if FieldKind.parse(field_kind) is FieldKind.DIRAC else math.inf


def is_limit(field_kind: FieldKind, param: Optional[float]) -> bool:
    if param is None:
        return True
    if field_kind is FieldKind.DIRAC:
        return param == THETA_LIMIT
    return math.isinf(param)


def evaluate_point(field_kind: Union[FieldKind, str], alpha: float,
                   param: Optional[float] = None, series_tol: float = SERIES_TOL,
                   series_only: bool = False) -> CurvePoint:
    """
    Coherence at one (alpha, r) or (alpha, theta).

    `param=None` (or theta = pi/4, r = inf) gives the infinite-acceleration
    limit. For the scalar field `series_only` disables the continuum fallback,
    so too-deep acceleration raises ToleranceInfeasibleError.
    """
    kind = FieldKind.parse(field_kind)
    alpha = ModeParameters(alpha).alpha
    if is_limit(kind, param):
        if kind is FieldKind.DIRAC:
            value = dirac_limit_coherence(alpha)
        else:
            value = scalar_limit_coherence(alpha)
        return CurvePoint(alpha=alpha, param=limit_param(kind), coherence=value)

    frame = frame_from_parameter(param, kind)
    if kind is FieldKind.DIRAC:
        report = dirac_coherence(alpha, frame)
    elif series_only:
        report = scalar_coherence(alpha, frame, series_tol)
    else:
        report = evaluate_scalar(alpha, frame, series_tol)
    return CurvePoint(alpha=alpha, param=float(param), coherence=report.value,
                      tail_guarantee=report.tail_guarantee)


def _run_ordered(tasks: Sequence, fn: Callable, workers: int = 1,
                 progress: Optional[Progress] = None) -> List:
    """fn(*task) for every task, concurrently if asked, results in task order."""
    total = len(tasks)
    done = 0
    lock = threading.Lock()

    def call(task):
        nonlocal done
        result = fn(*task)
        if progress is not None:
            with lock:
                done += 1
                count = done
            progress(count, total)
        return result

    if workers <= 1 or total <= 1:
        return [call(task) for task in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(call, tasks))


def surface(alpha_values: Sequence[float], param_values: Sequence[float],
            field_kind: Union[FieldKind, str] = FieldKind.DIRAC,
            series_tol: float = SERIES_TOL, series_only: bool = False,
            workers: int = 1, progress: Optional[Progress] = None) -> List[CurvePoint]:
    """Coherence on the full alpha x param product, ordered alpha-major."""
    kind = FieldKind.parse(field_kind)
    tasks = [(a, p) for a in alpha_values for p in param_values]

    def point(alpha: float, param: float) -> CurvePoint:
        try:
            return evaluate_point(kind, alpha, param, series_tol, series_only)
        except ToleranceInfeasibleError as e:
            raise ToleranceInfeasibleError(
                f"alpha={alpha:.6g}, param={param:.6g}: {e}",
                requested=e.requested, achievable=e.achievable) from e

    return _run_ordered(tasks, point, workers, progress)


def sweep(spec: SweepSpec, workers: int = 1, progress: Optional[Progress] = None) -> List[CurvePoint]:
    """One CurvePoint per (alpha, grid value), ordered by (alpha index, grid index)."""
    logger.info("Sweeping %s field: %d alpha values x %d grid points",
                spec.field_kind.value, len(spec.alpha_values), spec.param_grid.count)
    return surface(spec.alpha_values, spec.param_grid.values(), spec.field_kind,
                   spec.series_tol, spec.series_only, workers, progress)


# ═══════════════════════════════════════════════════════════════════════════════
# MAXIMIZATION
# ═══════════════════════════════════════════════════════════════════════════════

def golden_section_maximize(f: Callable[[float], float], lo: float, hi: float,
                            tol_x: float = GOLDEN_TOL,
                            max_iterations: int = GOLDEN_MAX_ITERATIONS) -> GoldenResult:
    """
    Golden-section search for the maximum of a unimodal f on [lo, hi].

    Stops once the bracket is narrower than tol_x; the returned x is the
    bracket midpoint unless an endpoint scores higher.
    """
    if not (tol_x > 0):
        raise ValidationError(f"tol_x must be positive, got {tol_x!r}")
    if lo > hi:
        raise ValidationError(f"Empty bracket [{lo}, {hi}]")
    lo0, hi0 = lo, hi
    x1 = hi - PHI_RATIO * (hi - lo)
    x2 = lo + PHI_RATIO * (hi - lo)
    f1, f2 = f(x1), f(x2)
    iteration = 0
    while iteration < max_iterations and abs(hi - lo) > tol_x:
        if f1 > f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - PHI_RATIO * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + PHI_RATIO * (hi - lo)
            f2 = f(x2)
        iteration += 1

    x = 0.5 * (lo + hi)
    value = f(x)
    for edge in (lo0, hi0):
        edge_value = f(edge)
        if edge_value > value:
            x, value = edge, edge_value
    converged = not (math.isnan(f1) or math.isnan(f2)) and abs(hi - lo) <= tol_x
    logger.debug("golden section: x=%.10g f=%.12g after %d iterations", x, value, iteration)
    return GoldenResult(x=x, value=value, iterations=iteration, converged=converged)


def check_unimodal(f: Callable[[float], float], lo: float, hi: float,
                   points: int = UNIMODAL_SCAN_POINTS,
                   slack: float = UNIMODAL_SLACK) -> Tuple[float, float]:
    """
    Coarse scan of f; returns the grid cell pair around the largest sample.

    Raises BracketError when the samples rise again after the peak or fall
    before it by more than `slack` (scaled by the largest |f|).
    """
    xs = np.linspace(lo, hi, points)
    values = np.array([f(float(x)) for x in xs])
    peak = int(np.argmax(values))
    diffs = np.diff(values)
    margin = slack * max(1.0, float(np.max(np.abs(values))))
    falls_before = np.flatnonzero(diffs[:peak] < -margin)
    rises_after = np.flatnonzero(diffs[peak:] > margin)
    if falls_before.size or rises_after.size:
        raise BracketError(
            f"Coarse scan of {points} points is not unimodal: peak at x={xs[peak]:.6g}, "
            f"{falls_before.size + rises_after.size} direction changes")
    return float(xs[max(peak - 1, 0)]), float(xs[min(peak + 1, points - 1)])


def maximize_alpha(field_kind: Union[FieldKind, str], param: Optional[float] = None,
                   tol_x: float = GOLDEN_TOL, series_tol: float = SERIES_TOL) -> RidgePoint:
    """
    Alpha that maximizes the coherence at a fixed acceleration parameter.

    Unimodality in alpha is checked with a coarse scan first; golden section
    then runs inside the cell pair around the best sample.
    """
    kind = FieldKind.parse(field_kind)

    def objective(alpha: float) -> float:
        return evaluate_point(kind, alpha, param, series_tol).coherence

    lo, hi = check_unimodal(objective, 0.0, 1.0)
    result = golden_section_maximize(objective, lo, hi, tol_x)
    if not result.converged:
        logger.warning("Golden section did not converge for %s at param=%s", kind.value, param)
    at = limit_param(kind) if is_limit(kind, param) else float(param)
    return RidgePoint(param=at, alpha_star=result.x, coherence_max=result.value,
                      iterations=result.iterations)


def default_ridge_grid(field_kind: Union[FieldKind, str] = FieldKind.DIRAC) -> GridSpec:
    if FieldKind.parse(field_kind) is FieldKind.SCALAR:
        return GridSpec(R_AXIS[0], R_AXIS[1], RIDGE_POINTS)
    return GridSpec(0.0, THETA_LIMIT - THETA_OPEN_MARGIN, RIDGE_POINTS)


def ridge(field_kind: Union[FieldKind, str] = FieldKind.DIRAC, grid: Optional[GridSpec] = None,
          tol_x: float = GOLDEN_TOL, series_tol: float = SERIES_TOL,
          workers: int = 1, progress: Optional[Progress] = None) -> List[RidgePoint]:
    """
    maximize_alpha at every grid value.

    Without a grid the Dirac ridge spans [0, pi/4) and the scalar ridge the
    default r axis.
    """
    kind = FieldKind.parse(field_kind)
    grid = grid or default_ridge_grid(kind)
    if kind is FieldKind.DIRAC and grid.stop > THETA_LIMIT:
        raise ValidationError(f"Dirac ridge grid must stay within [0, pi/4], got stop={grid.stop}")
    tasks = [(kind, p, tol_x, series_tol) for p in grid.values()]
    points = _run_ordered(tasks, maximize_alpha, workers, progress)
    for before, after in zip(points, points[1:]):
        if after.alpha_star < before.alpha_star - 10 * tol_x:
            logger.warning("Ridge maximizer moves backwards between param=%.6g and %.6g (%.8g -> %.8g)",
                           before.param, after.param, before.alpha_star, after.alpha_star)
    return points


def loss_curve(alpha_values: Sequence[float]) -> List[LossPoint]:
    """Dirac coherence at theta = 0, at the limit, and the loss between them."""
    at_rest = DiracFrame.from_theta(0.0)
    points = []
    for alpha in alpha_values:
        alpha = ModeParameters(alpha).alpha
        points.append(LossPoint(
            alpha=alpha,
            c_at_0=dirac_coherence(alpha, at_rest).value,
            c_at_limit=dirac_limit_coherence(alpha),
            delta=dirac_coherence_loss(alpha),
        ))
    return points
