import json
import math
import os
import sys

import pytest

sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from rindler.errors import OutputError, ValidationError
from rindler.formatter import Dataset, ResultFormatter, emit, surface_dataset, write_text
from rindler.sweep import CurvePoint, RidgePoint


def _dataset():
    return Dataset("demo", ("alpha", "coherence"), [(0.5, 1 / 3), (1.0, 0.0)], {"command": "point"})


def test_format_value():
    assert ResultFormatter.format_value(0.1) == "0.10000000000000001"
    assert ResultFormatter.format_value(True) == "true"
    assert ResultFormatter.format_value(3) == "3"
    assert ResultFormatter.format_value(math.inf) == "inf"


def test_csv_round_trips_doubles():
    text = ResultFormatter.to_csv(_dataset())
    lines = text.split("\n")
    assert lines[0] == "alpha,coherence"
    assert float(lines[1].split(",")[1]) == 1 / 3
    assert "\r" not in text


def test_json_puts_log_base_first():
    payload = json.loads(ResultFormatter.to_json(_dataset()))
    assert list(payload["metadata"]) == ["log_base", "command"]
    assert payload["rows"][0] == {"alpha": 0.5, "coherence": 1 / 3}


def test_json_writes_non_finite_floats_as_strings():
    def reject(name):
        raise ValueError(name)

    dataset = Dataset("limit", ("alpha", "param"), [(0.6, math.inf), (0.6, -math.inf)], {"stop": math.inf})
    payload = json.loads(ResultFormatter.to_json(dataset), parse_constant=reject)
    assert [row["param"] for row in payload["rows"]] == ["inf", "-inf"]
    assert payload["metadata"]["stop"] == "inf"
    assert ResultFormatter.json_value(0.25) == 0.25


def test_render_rejects_table():
    with pytest.raises(ValidationError):
        ResultFormatter.render(_dataset(), "table")


def test_emit_to_stdout_and_file(tmp_path, capsys):
    emit(_dataset(), "csv")
    assert capsys.readouterr().out.startswith("alpha,coherence\n")
    path = tmp_path / "demo.json"
    emit(_dataset(), "json", str(path))
    assert json.loads(path.read_text(encoding="utf-8"))["metadata"]["log_base"] == 2
    with pytest.raises(ValidationError):
        emit(_dataset(), "table", str(path))


def test_write_text_wraps_os_errors(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x", encoding="utf-8")
    with pytest.raises(OutputError):
        write_text(str(blocker / "child.csv"), "data")


def test_surface_dataset_appends_ridge_rows():
    dataset = surface_dataset(
        "fig5",
        [CurvePoint(0.5, 0.0, 0.8), CurvePoint(0.6, 0.0, 0.9)],
        [RidgePoint(0.0, 0.7071, 1.0)],
        {},
    )
    assert dataset.columns[0] == "series"
    assert [row[0] for row in dataset.rows] == ["surface", "surface", "ridge"]
    assert dataset.rows[-1][1:4] == (0.7071, 0.0, 1.0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
