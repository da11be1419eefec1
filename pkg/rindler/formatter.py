"""Result datasets and their CSV / JSON / terminal renderings."""

import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.table import Table

from rindler.config import FLOAT_DIGITS, LOG_BASE, OUTPUT_FORMATS
from rindler.errors import OutputError, ValidationError


@dataclass
class Dataset:
    """Rows with a fixed column order plus run metadata."""
    name: str
    columns: Tuple[str, ...]
    rows: List[Tuple[Any, ...]] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def records(self) -> List[Dict[str, Any]]:
        return [dict(zip(self.columns, row)) for row in self.rows]


class ResultFormatter:
    """Utility for rendering datasets."""

    STYLES = {
        "ok": "green",
        "warning": "yellow",
        "failed": "red",
    }

    @staticmethod
    def format_value(value: Any) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, float):
            return format(value, f".{FLOAT_DIGITS}g")
        return str(value)

    @staticmethod
    def to_csv(dataset: Dataset) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(dataset.columns)
        for row in dataset.rows:
            writer.writerow([ResultFormatter.format_value(v) for v in row])
        return buffer.getvalue()

    @staticmethod
    def json_value(value: Any) -> Any:
        """Non-finite floats become the same strings the CSV writer uses."""
        if isinstance(value, float) and not math.isfinite(value):
            return ResultFormatter.format_value(value)
        return value

    @staticmethod
    def to_json(dataset: Dataset) -> str:
        metadata = {key: ResultFormatter.json_value(value)
                    for key, value in {"log_base": LOG_BASE, **dataset.metadata}.items()}
        rows = [{key: ResultFormatter.json_value(value) for key, value in record.items()}
                for record in dataset.records()]
        payload = {"metadata": metadata, "rows": rows}
        return json.dumps(payload, indent=2, allow_nan=False) + "\n"

    @staticmethod
    def to_table(dataset: Dataset) -> Table:
        table = Table(title=dataset.name, show_header=True, header_style="bold cyan")
        for column in dataset.columns:
            table.add_column(column, justify="right" if column != "check" else "left")
        for row in dataset.rows:
            cells = []
            for column, value in zip(dataset.columns, row):
                text = f"{value:.10g}" if isinstance(value, float) and math.isfinite(value) else str(value)
                if column == "violations":
                    style = ResultFormatter.STYLES["ok" if value == 0 else "failed"]
                    text = f"[{style}]{text}[/]"
                cells.append(text)
            table.add_row(*cells)
        return table

    @staticmethod
    def render(dataset: Dataset, output_format: str) -> str:
        if output_format == "csv":
            return ResultFormatter.to_csv(dataset)
        if output_format == "json":
            return ResultFormatter.to_json(dataset)
        raise ValidationError(f"Cannot render {output_format!r} as text; expected one of {OUTPUT_FORMATS}")


def write_text(path: str, text: str):
    """Write `text` to `path` (utf-8, line feeds), creating parent directories."""
    try:
        parent = os.path.dirname(os.path.abspath(path))
        os.makedirs(parent, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise OutputError(f"Cannot write {path}: {e}") from e


def emit(dataset: Dataset, output_format: str, output_path: Optional[str] = None,
         console: Optional[Console] = None):
    """Send a dataset to `output_path`, or to stdout when no path is given."""
    if output_format == "table":
        if output_path:
            raise ValidationError("Table output goes to the terminal; use csv or json with --output")
        (console or Console()).print(ResultFormatter.to_table(dataset))
        return
    text = ResultFormatter.render(dataset, output_format)
    if output_path:
        write_text(output_path, text)
    else:
        sys.stdout.write(text)


# ═══════════════════════════════════════════════════════════════════════════════
# DATASET BUILDERS
# ═══════════════════════════════════════════════════════════════════════════════

CURVE_COLUMNS = ("alpha", "param", "coherence", "tail_guarantee")
RIDGE_COLUMNS = ("param", "alpha_star", "coherence_max")
LOSS_COLUMNS = ("alpha", "c_at_0", "c_at_limit", "delta")
AXIOM_COLUMNS = ("check", "dim", "trials", "violations", "worst_margin")
SURFACE_COLUMNS = ("series",) + CURVE_COLUMNS


def curve_dataset(name: str, points: Sequence, metadata: Dict[str, Any]) -> Dataset:
    rows = [(p.alpha, p.param, p.coherence, p.tail_guarantee) for p in points]
    return Dataset(name, CURVE_COLUMNS, rows, dict(metadata))


def ridge_dataset(name: str, points: Sequence, metadata: Dict[str, Any]) -> Dataset:
    rows = [(p.param, p.alpha_star, p.coherence_max) for p in points]
    return Dataset(name, RIDGE_COLUMNS, rows, dict(metadata))


def loss_dataset(name: str, points: Sequence, metadata: Dict[str, Any]) -> Dataset:
    rows = [(p.alpha, p.c_at_0, p.c_at_limit, p.delta) for p in points]
    return Dataset(name, LOSS_COLUMNS, rows, dict(metadata))


def axiom_dataset(name: str, checks: Sequence, metadata: Dict[str, Any]) -> Dataset:
    rows = [(c.name, c.dim, c.trials, c.violations, c.worst_margin) for c in checks]
    return Dataset(name, AXIOM_COLUMNS, rows, dict(metadata))


def surface_dataset(name: str, surface_points: Sequence, ridge_points: Sequence,
                    metadata: Dict[str, Any]) -> Dataset:
    """Surface grid rows followed by ridge rows (alpha = alpha_star)."""
    rows = [("surface", p.alpha, p.param, p.coherence, p.tail_guarantee) for p in surface_points]
    rows += [("ridge", p.alpha_star, p.param, p.coherence_max, 0.0) for p in ridge_points]
    return Dataset(name, SURFACE_COLUMNS, rows, dict(metadata))
