#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Rindler configuration - numerical tolerances, sweep defaults and run configs
"""

import json
import math
import os
from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, List, Optional, Union

import numpy as np

from rindler.errors import ValidationError, OutputError

# ═══════════════════════════════════════════════════════════════════════════════
# CONFIGURATION
# ═══════════════════════════════════════════════════════════════════════════════

EPS_NORM = 1e-10
EPS_HERM = 1e-10
EPS_PSD = 1e-10
LOG_BASE = 2

SERIES_TOL = 1e-12
SERIES_HARD_CAP = 1_000_000
R_MAX = 300.0  # keeps cosh^2 r finite

GOLDEN_TOL = 1e-7
GOLDEN_MAX_ITERATIONS = 200
UNIMODAL_SCAN_POINTS = 64
UNIMODAL_SLACK = 1e-12

THETA_LIMIT = math.pi / 4
THETA_OPEN_MARGIN = 1e-6
RIDGE_POINTS = 101
SWEEP_POINTS = 81
LOSS_POINTS = 101
SURFACE_POINTS = 41

R_AXIS = (0.0, 8.0)
THETA_AXIS = (0.0, THETA_LIMIT - THETA_OPEN_MARGIN)

# Figure caption order: black, red, blue, green, orange
CAPTION_ALPHAS = (
    1 / math.sqrt(2),
    1 / 2,
    math.sqrt(3 / 4),
    1 / math.sqrt(8),
    math.sqrt(7 / 8),
)

FLOAT_DIGITS = 17
AXIOM_TOL = 1e-9
DEFAULT_WORKERS = min(4, os.cpu_count() or 1)

COMMANDS = ("point", "sweep", "maximize", "ridge", "loss", "figures", "axioms")
FIELD_KINDS = ("scalar", "dirac")
OUTPUT_FORMATS = ("csv", "json", "table")


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by the density-matrix kernels."""
    norm: float = EPS_NORM
    herm: float = EPS_HERM
    psd: float = EPS_PSD

    def __post_init__(self):
        for name in ("norm", "herm", "psd"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValidationError(f"Tolerance '{name}' must be positive, got {value!r}")


DEFAULT_TOLERANCES = Tolerances()


# ═══════════════════════════════════════════════════════════════════════════════
# RUN CONFIGURATION
# ═══════════════════════════════════════════════════════════════════════════════

@dataclass
class GridSpec:
    """Evenly spaced grid {start, stop, count}, endpoints included."""
    start: float
    stop: float
    count: int

    def __post_init__(self):
        self.start = float(self.start)
        self.stop = float(self.stop)
        self.count = int(self.count)
        if self.count < 2:
            raise ValidationError(f"Grid needs at least 2 points, got {self.count}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValidationError("Grid bounds must be finite")
        if self.start > self.stop:
            raise ValidationError(f"Grid start {self.start} exceeds stop {self.stop}")

    def values(self) -> List[float]:
        """Grid values; the last value is exactly `stop`."""
        return [float(v) for v in np.linspace(self.start, self.stop, self.count)]


@dataclass
class RunConfig:
    """One CLI invocation, as parsed from flags or loaded from JSON."""
    command: str
    field_kind: str = "dirac"
    alpha: Optional[Union[float, List[float]]] = None
    param: Optional[float] = None
    grid: Optional[GridSpec] = None
    limit: bool = False
    acceleration: Optional[float] = None
    k_abs: float = 1.0
    omega: float = 1.0
    light_speed: float = 1.0
    series_tol: float = SERIES_TOL
    series_only: bool = False
    tol_x: float = GOLDEN_TOL
    output_format: str = "csv"
    output_path: Optional[str] = None
    seed: int = 0
    trials: int = 1000
    dims: List[int] = field(default_factory=lambda: [2, 3, 4])
    workers: int = DEFAULT_WORKERS

    def __post_init__(self):
        if isinstance(self.grid, dict):
            self.grid = GridSpec(**self.grid)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValidationError(f"Unknown config keys: {', '.join(unknown)}")
        if "command" not in data:
            raise ValidationError("Config is missing 'command'")
        try:
            return cls(**data)
        except TypeError as e:
            raise ValidationError(f"Invalid config: {e}") from e

    @classmethod
    def from_json(cls, path: str) -> "RunConfig":
        """Load a RunConfig from a JSON file."""
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except FileNotFoundError as e:
            raise ValidationError(f"Config file not found: {path}") from e
        except json.JSONDecodeError as e:
            raise ValidationError(f"Config file is not valid JSON: {e}") from e
        except OSError as e:
            raise OutputError(f"Cannot read config file {path}: {e}") from e
        if not isinstance(data, dict):
            raise ValidationError("Config file must hold a JSON object")
        return cls.from_dict(data)

    def merged(self, overrides: Dict[str, Any]) -> "RunConfig":
        """Return a copy with every non-None override applied."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        if isinstance(changes.get("grid"), dict):
            changes["grid"] = GridSpec(**changes["grid"])
        return replace(self, **changes)

