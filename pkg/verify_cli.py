import csv
import io
import json
import math
import os
import sys

import pytest

sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from rindler.config import COMMANDS, RunConfig
from rindler.sweep import evaluate_point
from rindler_cli import CommandRegistry, main, run


def _rows(text: str):
    return list(csv.DictReader(io.StringIO(text)))


def test_registry_has_every_command():
    registry = CommandRegistry()
    assert registry.names == list(COMMANDS)
    assert registry.get("nope") is None


def test_unknown_command_in_config():
    result = run(RunConfig(command="plot"))
    assert not result.success
    assert result.exit_code == 2


# ═══════════════════════════════════════════════════════════════════════════════
# POINT
# ═══════════════════════════════════════════════════════════════════════════════

def test_point_dirac_csv(capsys):
    assert main(["point", "--field", "dirac", "--alpha", "0.5", "--theta", str(math.pi / 6)]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "alpha,param,coherence,tail_guarantee"
    rows = _rows(out)
    assert len(rows) == 1
    assert float(rows[0]["coherence"]) == pytest.approx(0.676808, abs=1e-6)


def test_point_scalar_from_acceleration_json(capsys):
    assert main(["point", "--field", "scalar", "--alpha", "0.6", "--acceleration", str(math.pi),
                 "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["metadata"]["log_base"] == 2
    assert list(payload["metadata"])[0] == "log_base"
    assert payload["rows"][0]["param"] == pytest.approx(math.atanh(math.exp(-1)), abs=1e-12)


def _reject_constant(name):
    raise ValueError(f"non-standard JSON constant {name}")


def test_scalar_limit_json_is_strict(capsys):
    assert main(["point", "--field", "scalar", "--alpha", "0.6", "--r-limit", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out, parse_constant=_reject_constant)
    assert payload["rows"][0]["param"] == "inf"
    assert payload["rows"][0]["coherence"] > 0


def test_point_limit(capsys):
    assert main(["point", "--field", "dirac", "--alpha", str(1 / math.sqrt(2)), "--theta-limit"]) == 0
    row = _rows(capsys.readouterr().out)[0]
    assert float(row["coherence"]) == pytest.approx(0.688722, abs=1e-6)
    assert float(row["param"]) == pytest.approx(math.pi / 4)


@pytest.mark.parametrize("argv", [
    ["point", "--field", "dirac", "--alpha", "0.5"],
    ["point", "--field", "dirac", "--alpha", "0.5", "--theta", "0.1", "--limit"],
    ["point", "--field", "dirac", "--theta", "0.1"],
    ["point", "--field", "dirac", "--alpha", "1.5", "--theta", "0.1"],
    ["point", "--field", "dirac", "--alpha", "0.5", "--theta", "1.0"],
    ["point", "--field", "dirac", "--alpha", "0.5", "0.6", "--theta", "0.1"],
    ["sweep", "--start", "0"],
])
def test_invalid_input_exits_with_two(argv, capsys):
    assert main(argv) == 2
    captured = capsys.readouterr()
    assert "error" in captured.err
    assert captured.out == ""


def test_series_only_infeasible_exits_with_three(capsys):
    argv = ["point", "--field", "scalar", "--alpha", "0.6", "--r", "7", "--series-only"]
    assert main(argv) == 3
    assert "best achievable" in capsys.readouterr().err.replace("\n", " ")


def test_table_output(capsys):
    assert main(["point", "--field", "dirac", "--alpha", "0.5", "--theta", "0", "--format", "table"]) == 0
    assert "coherence" in capsys.readouterr().out


def test_table_output_cannot_go_to_file(tmp_path):
    argv = ["point", "--field", "dirac", "--alpha", "0.5", "--theta", "0", "--format", "table",
            "--output", str(tmp_path / "out.txt")]
    assert main(argv) == 2


# ═══════════════════════════════════════════════════════════════════════════════
# FILES AND CONFIG
# ═══════════════════════════════════════════════════════════════════════════════

def test_output_file(tmp_path, capsys):
    path = tmp_path / "nested" / "point.csv"
    assert main(["point", "--field", "dirac", "--alpha", "0.5", "--theta", "0", "--output", str(path)]) == 0
    assert capsys.readouterr().out == ""
    rows = _rows(path.read_text(encoding="utf-8"))
    assert float(rows[0]["coherence"]) == pytest.approx(0.811278, abs=1e-6)


def test_unwritable_output_exits_with_four(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    argv = ["point", "--field", "dirac", "--alpha", "0.5", "--theta", "0", "--output", str(blocker / "x.csv")]
    assert main(argv) == 4


def test_config_file_with_flag_override(tmp_path, capsys):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"command": "point", "field_kind": "dirac", "alpha": 0.5, "param": 0.3}),
                      encoding="utf-8")
    assert main(["point", "--config", str(config), "--theta", "0"]) == 0
    row = _rows(capsys.readouterr().out)[0]
    assert float(row["param"]) == 0.0
    assert float(row["coherence"]) == pytest.approx(0.811278, abs=1e-6)


def test_config_file_errors(tmp_path):
    bad_key = tmp_path / "bad.json"
    bad_key.write_text(json.dumps({"command": "point", "colour": "red"}), encoding="utf-8")
    assert main(["point", "--config", str(bad_key)]) == 2
    assert main(["point", "--config", str(tmp_path / "missing.json")]) == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    assert main(["point", "--config", str(broken)]) == 2


# ═══════════════════════════════════════════════════════════════════════════════
# OTHER COMMANDS
# ═══════════════════════════════════════════════════════════════════════════════

def test_sweep_grid(capsys):
    argv = ["sweep", "--field", "scalar", "--alpha", "0.5", "0.7", "--start", "0", "--stop", "1", "--count", "3"]
    assert main(argv) == 0
    rows = _rows(capsys.readouterr().out)
    assert [(float(r["alpha"]), float(r["param"])) for r in rows] == [
        (0.5, 0.0), (0.5, 0.5), (0.5, 1.0), (0.7, 0.0), (0.7, 0.5), (0.7, 1.0)]


def test_maximize_limit(capsys):
    assert main(["maximize", "--field", "dirac", "--theta-limit"]) == 0
    row = _rows(capsys.readouterr().out)[0]
    assert float(row["alpha_star"]) ** 2 == pytest.approx((5 - math.sqrt(5)) / 5, abs=1e-6)


def test_loss(capsys):
    assert main(["loss", "--alpha", str(math.sqrt(0.4))]) == 0
    row = _rows(capsys.readouterr().out)[0]
    assert float(row["delta"]) == pytest.approx(0.321928, abs=1e-6)


def test_ridge_short_grid(capsys):
    argv = ["ridge", "--field", "dirac", "--start", "0", "--stop", "0.7", "--count", "3", "--workers", "2"]
    assert main(argv) == 0
    rows = _rows(capsys.readouterr().out)
    assert len(rows) == 3
    assert float(rows[0]["alpha_star"]) == pytest.approx(1 / math.sqrt(2), abs=1e-6)


def test_axioms(capsys):
    assert main(["axioms", "--trials", "5", "--dims", "2", "3", "--seed", "1"]) == 0
    rows = _rows(capsys.readouterr().out)
    assert {r["check"] for r in rows} >= {"faithfulness", "convexity"}
    assert all(r["violations"] == "0" for r in rows)


def test_sweep_csv_reproduces_coherence(tmp_path):
    path = tmp_path / "sweep.csv"
    assert main(["sweep", "--field", "scalar", "--start", "0", "--stop", "4", "--count", "9",
                 "-o", str(path)]) == 0
    rows = _rows(path.read_text(encoding="utf-8"))
    assert len(rows) == 45
    for row in rows:
        point = evaluate_point("scalar", float(row["alpha"]), float(row["param"]))
        assert float(row["coherence"]) == point.coherence


def test_figures_are_byte_identical_across_worker_counts(tmp_path):
    serial, parallel = tmp_path / "serial", tmp_path / "parallel"
    serial.mkdir()
    parallel.mkdir()
    assert main(["figures", "--output", str(serial), "--workers", "1"]) == 0
    assert main(["figures", "--output", str(parallel), "--workers", "4"]) == 0
    for name in ("fig2.csv", "fig3.csv", "fig4.csv", "fig5.csv"):
        assert (serial / name).read_bytes() == (parallel / name).read_bytes()


def test_figures(tmp_path):
    assert main(["figures", "--output", str(tmp_path), "--format", "json", "--workers", "2"]) == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["fig2.json", "fig3.json", "fig4.json", "fig5.json"]
    fig5 = json.loads((tmp_path / "fig5.json").read_text(encoding="utf-8"))
    series = {row["series"] for row in fig5["rows"]}
    assert series == {"surface", "ridge"}


def test_figures_refuse_table_format(tmp_path):
    assert main(["figures", "--output", str(tmp_path), "--format", "table"]) == 2


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
