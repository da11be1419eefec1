#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
╔═══════════════════════════════════════════════════════════════════════════════╗
║                       RINDLER - Coherence Under Acceleration                  ║
║                                                                               ║
║  Relative entropy of coherence for scalar and Dirac field modes shared        ║
║  between an inertial and a uniformly accelerated observer.                    ║
║                                                                               ║
║  Commands: point | sweep | maximize | ridge | loss | figures | axioms         ║
╚═══════════════════════════════════════════════════════════════════════════════╝

Examples:
    python rindler_cli.py point --field dirac --alpha 0.70710678 --theta 0
    python rindler_cli.py maximize --field dirac --theta-limit
    python rindler_cli.py loss --alpha 0.63245553
    python rindler_cli.py figures --output figures/
"""

import argparse
import logging
import os
import sys
from abc import ABC, abstractmethod
from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.progress import Progress

from rindler.axioms import run_axiom_suite
from rindler.config import (
    CAPTION_ALPHAS,
    COMMANDS,
    FIELD_KINDS,
    LOSS_POINTS,
    OUTPUT_FORMATS,
    R_AXIS,
    RIDGE_POINTS,
    SURFACE_POINTS,
    SWEEP_POINTS,
    THETA_AXIS,
    GridSpec,
    RunConfig,
)
from rindler.errors import RindlerError, ValidationError
from rindler.formatter import (
    Dataset,
    ResultFormatter,
    axiom_dataset,
    curve_dataset,
    emit,
    loss_dataset,
    ridge_dataset,
    surface_dataset,
    write_text,
)
from rindler.frames import FieldKind, PhysicalParams, frame_from_acceleration
from rindler.sweep import (
    SweepSpec,
    default_ridge_grid,
    evaluate_point,
    loss_curve,
    maximize_alpha,
    ridge,
    surface,
    sweep,
)

# ═══════════════════════════════════════════════════════════════════════════════
# CONFIGURATION
# ═══════════════════════════════════════════════════════════════════════════════

VERSION = "1.0.0"

logger = logging.getLogger("rindler")

# Results go to stdout; logs and progress to stderr
stderr_console = Console(stderr=True)


def setup_logging(verbosity: int = 0):
    """WARNING by default, INFO with -v, DEBUG with -vv."""
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=stderr_console, show_path=False, rich_tracebacks=False)],
        force=True,
    )


# ═══════════════════════════════════════════════════════════════════════════════
# COMMAND SYSTEM
# ═══════════════════════════════════════════════════════════════════════════════

class CommandKind(Enum):
    EVALUATE = "evaluate"   # single values and curves
    OPTIMIZE = "optimize"   # maximization over alpha
    EMIT = "emit"           # figure datasets
    VERIFY = "verify"       # property checks


@dataclass
class CommandResult:
    """Result from a command execution."""
    success: bool
    output: str = ""
    error: Optional[str] = None
    data: Any = None
    exit_code: int = 0


class BaseCommand(ABC):
    """Abstract base class for all commands."""

    def __init__(
        self,
        name: str,
        display_name: str,
        description: str,
        kind: CommandKind,
        parameter_schema: Dict[str, Any],
    ):
        self.name = name
        self.display_name = display_name
        self.description = description
        self.kind = kind
        self.parameter_schema = parameter_schema

    def validate_params(self, config: RunConfig) -> Optional[str]:
        """Validate the config for this command. Return error message if invalid, None if valid."""
        for req in self.parameter_schema.get("required", []):
            if getattr(config, req) is None:
                return f"{self.name}: missing required parameter '{req}'"
        if config.field_kind not in FIELD_KINDS:
            return f"Unknown field kind {config.field_kind!r}; expected one of {FIELD_KINDS}"
        if config.output_format not in OUTPUT_FORMATS:
            return f"Unknown output format {config.output_format!r}; expected one of {OUTPUT_FORMATS}"
        if config.workers < 1:
            return f"workers must be >= 1, got {config.workers}"
        return None

    def metadata(self, config: RunConfig) -> Dict[str, Any]:
        return {"command": self.name, "field_kind": config.field_kind, "series_tol": config.series_tol}

    @abstractmethod
    def execute(self, config: RunConfig) -> CommandResult:
        """Execute the command with the given config."""
        pass


def _alpha_list(config: RunConfig) -> List[float]:
    if config.alpha is None:
        return list(CAPTION_ALPHAS)
    if isinstance(config.alpha, (list, tuple)):
        return [float(a) for a in config.alpha]
    return [float(config.alpha)]


def _single_alpha(config: RunConfig) -> float:
    alphas = _alpha_list(config)
    if config.alpha is None or len(alphas) != 1:
        raise ValidationError(f"{config.command} needs exactly one --alpha value")
    return alphas[0]


def _acceleration_param(config: RunConfig) -> Optional[float]:
    """
    Resolve the acceleration parameter from --param/--r/--theta, --acceleration
    or --limit. None stands for the infinite-acceleration limit.
    """
    given = [config.param is not None, config.acceleration is not None, bool(config.limit)]
    if sum(given) != 1:
        raise ValidationError(f"{config.command} needs exactly one of --param (--r/--theta), --acceleration, --limit")
    if config.limit:
        return None
    if config.acceleration is not None:
        params = PhysicalParams(config.acceleration, config.k_abs, config.omega, config.light_speed)
        frame = frame_from_acceleration(params, config.field_kind)
        return frame.r if FieldKind.parse(config.field_kind) is FieldKind.SCALAR else frame.theta
    return float(config.param)


def _axis_grid(config: RunConfig, count: int) -> GridSpec:
    if config.grid is not None:
        return config.grid
    if FieldKind.parse(config.field_kind) is FieldKind.SCALAR:
        return GridSpec(R_AXIS[0], R_AXIS[1], count)
    return GridSpec(THETA_AXIS[0], THETA_AXIS[1], count)


@contextmanager
def progress_callback(description: str, enabled: bool) -> Iterator[Optional[Any]]:
    """Rich progress bar on stderr; the callback is safe to call from worker threads."""
    if not enabled:
        yield None
        return
    with Progress(console=stderr_console, transient=True) as progress:
        task = progress.add_task(description, total=None)

        def update(done: int, total: int):
            progress.update(task, completed=done, total=total)

        yield update


class PointCommand(BaseCommand):
    def __init__(self):
        super().__init__(
            name="point",
            display_name="Point",
            description="Coherence at one alpha and one acceleration",
            kind=CommandKind.EVALUATE,
            parameter_schema={"required": ["alpha"]},
        )

    def execute(self, config: RunConfig) -> CommandResult:
        alpha = _single_alpha(config)
        param = _acceleration_param(config)
        point = evaluate_point(config.field_kind, alpha, param, config.series_tol, config.series_only)
        dataset = curve_dataset("point", [point], self.metadata(config))
        return CommandResult(success=True, output=f"C = {point.coherence:.12g} bits", data=dataset)


class SweepCommand(BaseCommand):
    def __init__(self):
        super().__init__(
            name="sweep",
            display_name="Sweep",
            description="Curves over r (scalar) or theta (dirac) for each alpha",
            kind=CommandKind.EVALUATE,
            parameter_schema={"required": []},
        )
        self.show_progress = False

    def execute(self, config: RunConfig) -> CommandResult:
        spec = SweepSpec(config.field_kind, tuple(_alpha_list(config)), _axis_grid(config, SWEEP_POINTS),
                         config.series_tol, config.series_only)
        with progress_callback("Sweeping", self.show_progress) as progress:
            points = sweep(spec, workers=config.workers, progress=progress)
        dataset = curve_dataset("sweep", points, self.metadata(config))
        return CommandResult(success=True, output=f"{len(points)} points", data=dataset)


class MaximizeCommand(BaseCommand):
    def __init__(self):
        super().__init__(
            name="maximize",
            display_name="Maximize",
            description="Alpha with the largest coherence at a fixed acceleration",
            kind=CommandKind.OPTIMIZE,
            parameter_schema={"required": []},
        )

    def execute(self, config: RunConfig) -> CommandResult:
        param = _acceleration_param(config)
        point = maximize_alpha(config.field_kind, param, config.tol_x, config.series_tol)
        dataset = ridge_dataset("maximize", [point], self.metadata(config))
        return CommandResult(
            success=True,
            output=f"alpha* = {point.alpha_star:.10g}, C = {point.coherence_max:.10g} bits",
            data=dataset,
        )


class RidgeCommand(BaseCommand):
    def __init__(self):
        super().__init__(
            name="ridge",
            display_name="Ridge",
            description="Maximizing alpha along the acceleration axis",
            kind=CommandKind.OPTIMIZE,
            parameter_schema={"required": []},
        )
        self.show_progress = False

    def execute(self, config: RunConfig) -> CommandResult:
        if config.grid is not None:
            grid = config.grid
        elif FieldKind.parse(config.field_kind) is FieldKind.DIRAC:
            grid = default_ridge_grid()
        else:
            grid = _axis_grid(config, RIDGE_POINTS)
        with progress_callback("Ridge", self.show_progress) as progress:
            points = ridge(config.field_kind, grid, config.tol_x, config.series_tol,
                           workers=config.workers, progress=progress)
        dataset = ridge_dataset("ridge", points, self.metadata(config))
        return CommandResult(success=True, output=f"{len(points)} ridge points", data=dataset)


class LossCommand(BaseCommand):
    def __init__(self):
        super().__init__(
            name="loss",
            display_name="Loss",
            description="Dirac coherence at theta = 0, at the limit, and the loss",
            kind=CommandKind.EVALUATE,
            parameter_schema={"required": []},
        )

    def execute(self, config: RunConfig) -> CommandResult:
        if config.alpha is not None:
            alphas = _alpha_list(config)
        else:
            alphas = (config.grid or GridSpec(0.0, 1.0, LOSS_POINTS)).values()
        points = loss_curve(alphas)
        metadata = {**self.metadata(config), "field_kind": "dirac"}
        dataset = loss_dataset("loss", points, metadata)
        best = max(points, key=lambda p: p.delta)
        return CommandResult(success=True, output=f"max delta = {best.delta:.10g} at alpha = {best.alpha:.10g}",
                             data=dataset)


class FiguresCommand(BaseCommand):
    """Writes fig2..fig5 into the output directory."""

    def __init__(self):
        super().__init__(
            name="figures",
            display_name="Figures",
            description="Emit the scalar/Dirac curves, the loss curve and the surface with its ridge",
            kind=CommandKind.EMIT,
            parameter_schema={"required": []},
        )
        self.show_progress = False

    def validate_params(self, config: RunConfig) -> Optional[str]:
        error = super().validate_params(config)
        if error is None and config.output_format == "table":
            return "figures writes files; use --format csv or json"
        return error

    def datasets(self, config: RunConfig) -> List[Dataset]:
        alphas = tuple(_alpha_list(config))
        scalar_meta = {"command": self.name, "field_kind": "scalar", "series_tol": config.series_tol}
        dirac_meta = {"command": self.name, "field_kind": "dirac", "series_tol": config.series_tol}

        with progress_callback("fig2", self.show_progress) as progress:
            scalar_spec = SweepSpec("scalar", alphas, GridSpec(R_AXIS[0], R_AXIS[1], SWEEP_POINTS),
                                    config.series_tol)
            fig2 = curve_dataset("fig2", sweep(scalar_spec, config.workers, progress), scalar_meta)
        dirac_spec = SweepSpec("dirac", alphas, GridSpec(THETA_AXIS[0], THETA_AXIS[1], SWEEP_POINTS))
        fig3 = curve_dataset("fig3", sweep(dirac_spec, config.workers), dirac_meta)
        fig4 = loss_dataset("fig4", loss_curve(GridSpec(0.0, 1.0, LOSS_POINTS).values()), dirac_meta)

        alpha_axis = GridSpec(0.0, 1.0, SURFACE_POINTS).values()
        theta_axis = GridSpec(THETA_AXIS[0], THETA_AXIS[1], SURFACE_POINTS).values()
        grid_points = surface(alpha_axis, theta_axis, "dirac", workers=config.workers)
        with progress_callback("fig5 ridge", self.show_progress) as progress:
            ridge_points = ridge("dirac", default_ridge_grid(), config.tol_x,
                                 workers=config.workers, progress=progress)
        fig5 = surface_dataset("fig5", grid_points, ridge_points, dirac_meta)
        return [fig2, fig3, fig4, fig5]

    def execute(self, config: RunConfig) -> CommandResult:
        directory = config.output_path or "."
        written = []
        for dataset in self.datasets(config):
            path = os.path.join(directory, f"{dataset.name}.{config.output_format}")
            write_text(path, ResultFormatter.render(dataset, config.output_format))
            written.append(path)
            logger.info("Wrote %s (%d rows)", path, len(dataset.rows))
        return CommandResult(success=True, output="Wrote " + ", ".join(written), data=None)


class AxiomsCommand(BaseCommand):
    def __init__(self):
        super().__init__(
            name="axioms",
            display_name="Axioms",
            description="Seeded spot-checks of faithfulness, monotonicity and convexity",
            kind=CommandKind.VERIFY,
            parameter_schema={"required": []},
        )

    def execute(self, config: RunConfig) -> CommandResult:
        checks = run_axiom_suite(config.seed, config.trials, config.dims)
        dataset = axiom_dataset("axioms", checks, {"command": self.name, "seed": config.seed})
        failed = [c for c in checks if not c.passed]
        if failed:
            names = ", ".join(f"{c.name}(dim={c.dim})" for c in failed)
            return CommandResult(success=False, error=f"Axiom violations: {names}", data=dataset, exit_code=1)
        return CommandResult(success=True, output=f"{len(checks)} checks passed", data=dataset)


class CommandRegistry:
    """Registry for managing available commands."""

    def __init__(self):
        self._commands: Dict[str, BaseCommand] = {}
        for command in (PointCommand(), SweepCommand(), MaximizeCommand(), RidgeCommand(),
                        LossCommand(), FiguresCommand(), AxiomsCommand()):
            self.register(command)

    def register(self, command: BaseCommand):
        self._commands[command.name] = command

    def get(self, name: str) -> Optional[BaseCommand]:
        return self._commands.get(name)

    @property
    def names(self) -> List[str]:
        return list(self._commands)


# ═══════════════════════════════════════════════════════════════════════════════
# ENTRY POINTS
# ═══════════════════════════════════════════════════════════════════════════════

def run(config: RunConfig, registry: Optional[CommandRegistry] = None,
        show_progress: bool = False) -> CommandResult:
    """
    Execute one config and emit its dataset.

    Args:
        config: the run to perform
        registry: command set (a fresh CommandRegistry by default)
        show_progress: draw progress bars on stderr for long commands

    Returns:
        CommandResult whose exit_code is 0 on success, 2 for invalid input,
        3 for an infeasible series tolerance and 4 for I/O failures
    """
    registry = registry or CommandRegistry()
    command = registry.get(config.command)
    if command is None:
        return CommandResult(success=False, error=f"Unknown command {config.command!r}; expected one of {COMMANDS}",
                             exit_code=ValidationError.exit_code)
    error = command.validate_params(config)
    if error:
        return CommandResult(success=False, error=error, exit_code=ValidationError.exit_code)
    if hasattr(command, "show_progress"):
        command.show_progress = show_progress
    try:
        result = command.execute(config)
        if isinstance(result.data, Dataset):
            emit(result.data, config.output_format, config.output_path)
    except RindlerError as e:
        logger.debug("command %s failed", config.command, exc_info=True)
        return CommandResult(success=False, error=str(e), exit_code=e.exit_code)
    return result


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file holding a RunConfig; flags override it")
    common.add_argument("--field", dest="field_kind", choices=FIELD_KINDS, default=None)
    common.add_argument("--alpha", type=float, nargs="+", default=None, help="Amplitude(s) in [0, 1]")
    common.add_argument("--param", "--r", "--theta", dest="param", type=float, default=None,
                        help="Acceleration parameter r (scalar) or theta (dirac)")
    common.add_argument("--limit", "--theta-limit", "--r-limit", dest="limit", action="store_true", default=None,
                        help="Use the infinite-acceleration limit")
    common.add_argument("--acceleration", type=float, default=None, help="Physical acceleration a >= 0")
    common.add_argument("--k-abs", type=float, default=None)
    common.add_argument("--omega", type=float, default=None)
    common.add_argument("--light-speed", type=float, default=None)
    common.add_argument("--start", type=float, default=None, help="Grid start")
    common.add_argument("--stop", type=float, default=None, help="Grid stop")
    common.add_argument("--count", type=int, default=None, help="Grid points")
    common.add_argument("--series-tol", type=float, default=None)
    common.add_argument("--series-only", action="store_true", default=None,
                        help="Scalar field: fail instead of switching to the continuum evaluation")
    common.add_argument("--tol-x", type=float, default=None, help="Golden-section tolerance on alpha")
    common.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default=None)
    common.add_argument("--output", "-o", dest="output_path", default=None,
                        help="Output file (figures: output directory)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--dims", type=int, nargs="+", default=None)
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--verbose", "-v", action="count", default=0)

    parser = argparse.ArgumentParser(prog="rindler", description="Coherence of field modes under acceleration")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    registry = CommandRegistry()
    for name in registry.names:
        subparsers.add_parser(name, parents=[common], help=registry.get(name).description)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """RunConfig from --config (if any) with explicit flags layered on top."""
    overrides: Dict[str, Any] = {
        "command": args.command,
        "field_kind": args.field_kind,
        "param": args.param,
        "limit": args.limit,
        "acceleration": args.acceleration,
        "k_abs": args.k_abs,
        "omega": args.omega,
        "light_speed": args.light_speed,
        "series_tol": args.series_tol,
        "series_only": args.series_only,
        "tol_x": args.tol_x,
        "output_format": args.output_format,
        "output_path": args.output_path,
        "seed": args.seed,
        "trials": args.trials,
        "dims": args.dims,
        "workers": args.workers,
    }
    if args.alpha is not None:
        overrides["alpha"] = args.alpha[0] if len(args.alpha) == 1 else list(args.alpha)
    grid_flags = (args.start, args.stop, args.count)
    if any(v is not None for v in grid_flags):
        if any(v is None for v in grid_flags):
            raise ValidationError("--start, --stop and --count must be given together")
        overrides["grid"] = {"start": args.start, "stop": args.stop, "count": args.count}
    base = RunConfig.from_json(args.config) if args.config else RunConfig(command=args.command)
    return base.merged(overrides)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)
    try:
        config = config_from_args(args)
    except RindlerError as e:
        stderr_console.print(f"[red]error:[/] {escape(str(e))}", highlight=False)
        return e.exit_code

    result = run(config, show_progress=args.verbose > 0 and stderr_console.is_terminal)
    if not result.success:
        stderr_console.print(f"[red]error:[/] {escape(str(result.error))}", highlight=False)
        return result.exit_code or 1
    if result.output:
        logger.info(result.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
