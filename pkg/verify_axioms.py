import os
import sys

import pytest

sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from rindler.axioms import CHECKS, AxiomCheck, run_axiom_suite
from rindler.errors import ValidationError


def test_suite_passes_on_small_run():
    results = run_axiom_suite(seed=3, trials=40, dims=(2, 3))
    assert len(results) == 2 * len(CHECKS)
    assert [r.name for r in results[::2]] == list(CHECKS)
    for result in results:
        assert result.passed, f"{result.name} dim={result.dim} worst margin {result.worst_margin:.3e}"
        assert result.trials == 40
        assert result.worst_margin >= -1e-9


def test_suite_passes_on_full_run():
    results = run_axiom_suite(seed=0, trials=1000, dims=(2, 3, 4))
    assert len(results) == 3 * len(CHECKS)
    assert {r.dim for r in results} == {2, 3, 4}
    failed = [(r.name, r.dim, r.worst_margin) for r in results if not r.passed]
    assert failed == []
    assert all(r.trials == 1000 and r.violations == 0 for r in results)


def test_suite_is_deterministic_for_a_seed():
    first = run_axiom_suite(seed=11, trials=5, dims=(4,))
    second = run_axiom_suite(seed=11, trials=5, dims=(4,))
    assert first == second


def test_strict_inequalities_have_positive_margin():
    by_name = {r.name: r for r in run_axiom_suite(seed=0, trials=20, dims=(3,))}
    # random full-rank states always carry some coherence
    assert by_name["monotone_dephasing"].worst_margin > 0
    assert by_name["post_selection_dephasing"].worst_margin > 0


def test_axiom_check_passed_flag():
    assert AxiomCheck("convexity", 2, 10, 0, 0.0).passed
    assert not AxiomCheck("convexity", 2, 10, 1, -1.0).passed


def test_suite_validation():
    with pytest.raises(ValidationError):
        run_axiom_suite(trials=0)
    with pytest.raises(ValidationError):
        run_axiom_suite(trials=1, dims=(1,))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
