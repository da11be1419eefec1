#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Rindler Frames - acceleration parameters for the scalar and Dirac fields

Physical acceleration a maps to the scalar squeezing parameter r through
tanh r = exp(-pi |k| c / a), and to the Dirac angle theta through
cos theta = (1 + exp(-2 pi omega c / a))^(-1/2). a = 0 is taken as the limit
r = theta = 0. Natural units (|k| = omega = c = 1) are the defaults.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

from scipy.special import expit

from rindler.config import EPS_NORM, R_MAX, THETA_LIMIT
from rindler.errors import ValidationError


class FieldKind(Enum):
    SCALAR = "scalar"   # bosonic, Bose-Einstein squeezing
    DIRAC = "dirac"     # fermionic, two-level

    @classmethod
    def parse(cls, value: Union["FieldKind", str]) -> "FieldKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValidationError(f"Unknown field kind {value!r}; expected 'scalar' or 'dirac'") from None


# ═══════════════════════════════════════════════════════════════════════════════
# FRAME TYPES
# ═══════════════════════════════════════════════════════════════════════════════

def check_alpha(alpha: float) -> float:
    """Return alpha as float, raising unless it lies in [0, 1]."""
    alpha = float(alpha)
    if not (0.0 <= alpha <= 1.0):
        raise ValidationError(f"alpha must lie in [0, 1], got {alpha!r}")
    return alpha


@dataclass(frozen=True)
class ModeParameters:
    """Amplitude alpha of the initial state alpha|0>|0> + sqrt(1 - alpha^2)|1>|1>."""
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_alpha(self.alpha))

    @property
    def vacuum_probability(self) -> float:
        return self.alpha * self.alpha

    @property
    def excited_probability(self) -> float:
        return 1.0 - self.alpha * self.alpha

    @classmethod
    def from_probability(cls, probability: float) -> "ModeParameters":
        if not (0.0 <= probability <= 1.0):
            raise ValidationError(f"Probability must lie in [0, 1], got {probability!r}")
        return cls(math.sqrt(probability))


@dataclass(frozen=True)
class PhysicalParams:
    """Acceleration a plus the mode constants |k|, omega and c."""
    acceleration: float
    k_abs: float = 1.0
    omega: float = 1.0
    light_speed: float = 1.0

    def __post_init__(self):
        if not (self.acceleration >= 0 and math.isfinite(self.acceleration)):
            raise ValidationError(f"Acceleration must be finite and >= 0, got {self.acceleration!r}")
        for name in ("k_abs", "omega", "light_speed"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValidationError(f"{name} must be finite and > 0, got {value!r}")

    @property
    def scalar_exponent(self) -> float:
        """pi |k| c / a (infinite at a = 0)."""
        if self.acceleration == 0:
            return math.inf
        return math.pi * self.k_abs * self.light_speed / self.acceleration

    @property
    def dirac_exponent(self) -> float:
        """2 pi omega c / a (infinite at a = 0)."""
        if self.acceleration == 0:
            return math.inf
        return 2 * math.pi * self.omega * self.light_speed / self.acceleration


@dataclass(frozen=True)
class ScalarFrame:
    """
    Scalar-field acceleration parameter r with cached hyperbolic values.

    `sech2` = 1 - tanh^2 r and `log_t2` = ln tanh^2 r are computed without
    cancellation so large r stays usable.
    """
    r: float
    t: float
    cosh2: float
    sech2: float
    log_t2: float

    def __post_init__(self):
        if not (0 <= self.r <= R_MAX):
            raise ValidationError(f"Scalar parameter r must lie in [0, {R_MAX:g}], got {self.r!r}")
        if not (0 <= self.t <= 1) or self.cosh2 < 1 or not (0 < self.sech2 <= 1):
            raise ValidationError("Inconsistent scalar frame values")
        if abs(self.cosh2 * self.sech2 - 1) > EPS_NORM:
            raise ValidationError("cosh^2 r and 1 - tanh^2 r are not reciprocal")

    @classmethod
    def from_r(cls, r: float) -> "ScalarFrame":
        r = float(r)
        if not (0 <= r <= R_MAX):
            raise ValidationError(f"Scalar parameter r must lie in [0, {R_MAX:g}], got {r!r}")
        if r == 0:
            return cls(r=0.0, t=0.0, cosh2=1.0, sech2=1.0, log_t2=-math.inf)
        e = math.exp(-2 * r)
        if r < 1:
            log_t2 = 2 * math.log(math.tanh(r))
        else:
            log_t2 = 2 * (math.log1p(-e) - math.log1p(e))
        return cls(
            r=r,
            t=math.tanh(r),
            cosh2=math.cosh(r) ** 2,
            sech2=4 * e / (1 + e) ** 2,
            log_t2=log_t2,
        )

    @classmethod
    def from_t(cls, t: float) -> "ScalarFrame":
        """Frame with tanh r = t, t in [0, 1)."""
        if not (0 <= t < 1):
            raise ValidationError(f"tanh r must lie in [0, 1), got {t!r}")
        return cls.from_r(math.atanh(t))


@dataclass(frozen=True)
class DiracFrame:
    """Dirac-field acceleration angle theta in [0, pi/4) with cos^2 and sin^2."""
    theta: float
    cos2: float
    sin2: float

    def __post_init__(self):
        if not (0 <= self.theta < THETA_LIMIT):
            raise ValidationError(f"Dirac angle theta must lie in [0, pi/4), got {self.theta!r}")
        if abs(self.cos2 + self.sin2 - 1) > EPS_NORM or not (0 <= self.sin2 < 0.5):
            raise ValidationError("Inconsistent Dirac frame values")

    @classmethod
    def from_theta(cls, theta: float) -> "DiracFrame":
        theta = float(theta)
        if not (0 <= theta < THETA_LIMIT):
            raise ValidationError(f"Dirac angle theta must lie in [0, pi/4), got {theta!r}")
        return cls(theta=theta, cos2=math.cos(theta) ** 2, sin2=math.sin(theta) ** 2)

    @property
    def cos(self) -> float:
        return math.sqrt(self.cos2)


# ═══════════════════════════════════════════════════════════════════════════════
# CONVERSIONS
# ═══════════════════════════════════════════════════════════════════════════════

def scalar_frame_from_acceleration(params: PhysicalParams) -> ScalarFrame:
    """r = artanh(exp(-pi |k| c / a)); a = 0 gives r = 0."""
    x = params.scalar_exponent
    if math.isinf(x):
        return ScalarFrame.from_r(0.0)
    t = math.exp(-x)
    # artanh t = 1/2 ln((1 + t) / (1 - t)), with 1 - t = -expm1(-x)
    r = 0.5 * math.log((1 + t) / -math.expm1(-x))
    if r > R_MAX:
        raise ValidationError(f"Acceleration {params.acceleration:g} is beyond the resolvable range (r > {R_MAX:g})")
    return ScalarFrame.from_r(r)


def dirac_frame_from_acceleration(params: PhysicalParams) -> DiracFrame:
    """cos^2 theta = 1 / (1 + exp(-2 pi omega c / a)); a = 0 gives theta = 0."""
    x = params.dirac_exponent
    if math.isinf(x):
        return DiracFrame.from_theta(0.0)
    theta = math.atan(math.exp(-x / 2))
    if theta >= THETA_LIMIT:
        raise ValidationError(
            f"Acceleration {params.acceleration:g} is indistinguishable from the infinite limit; use the limit formula")
    return DiracFrame(theta=theta, cos2=float(expit(x)), sin2=float(expit(-x)))


def acceleration_from_scalar_frame(frame: ScalarFrame, params: PhysicalParams) -> float:
    """Invert tanh r = exp(-pi |k| c / a) using the constants in `params`."""
    if frame.r == 0:
        return 0.0
    exponent = -0.5 * frame.log_t2
    return math.pi * params.k_abs * params.light_speed / exponent


def acceleration_from_dirac_frame(frame: DiracFrame, params: PhysicalParams) -> float:
    """Invert cos theta = (1 + exp(-2 pi omega c / a))^(-1/2)."""
    if frame.theta == 0:
        return 0.0
    exponent = math.log(frame.cos2) - math.log(frame.sin2)
    return 2 * math.pi * params.omega * params.light_speed / exponent


def frame_from_parameter(value: float, kind: Union[FieldKind, str]) -> Union[ScalarFrame, DiracFrame]:
    """Build a frame straight from r (scalar) or theta (dirac)."""
    kind = FieldKind.parse(kind)
    if not math.isfinite(value):
        raise ValidationError(f"Frame parameter must be finite, got {value!r}")
    if kind is FieldKind.SCALAR:
        return ScalarFrame.from_r(value)
    return DiracFrame.from_theta(value)


def frame_from_acceleration(params: PhysicalParams, kind: Union[FieldKind, str]) -> Union[ScalarFrame, DiracFrame]:
    kind = FieldKind.parse(kind)
    if kind is FieldKind.SCALAR:
        return scalar_frame_from_acceleration(params)
    return dirac_frame_from_acceleration(params)
