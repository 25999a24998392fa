"""
tests/test_checks.py

Tests the invariant-suite harness: result recording, failure capture,
suite selection and seed reproducibility.  The heavier suites are covered
by the per-module tests; here only the cheap ones run end to end.

Run: pytest tests/test_checks.py -v -s
"""

import sys
from pathlib import Path

import numpy as np
import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.errors import PoleError
from src.pipeline.checks import (
    SUITES,
    CheckReport,
    CheckResult,
    _Suite,
    run_checks,
    suite_elliptic,
    suite_lie_dims,
    suite_quantum,
)


# ── Recording ─────────────────────────────────────────────────────────────────

def test_record_pass_and_fail():
    s = _Suite("demo")
    s.record("small", 1e-3, lambda: 1e-6)
    s.record("large", 1e-3, lambda: 1.0)
    s.record("lower bound", 0.5, lambda: 0.7, at_least=True)
    assert [r.passed for r in s.results] == [True, False, True]
    assert s.results[2].to_dict()["comparison"] == ">="
    assert s.results[0].to_dict()["comparison"] == "<="


def test_record_captures_numerical_errors():
    def boom() -> float:
        raise PoleError("lattice point")

    s = _Suite("demo")
    s.record("pole", 1.0, boom)
    s.record("nan", 1.0, lambda: float("nan"))
    first, second = s.results
    assert not first.passed and first.residual is None
    assert first.error.startswith("PoleError")
    assert first.to_dict()["error"] == first.error
    assert second.error == "non-finite residual"


def test_report_summary():
    results = [CheckResult("a", "x", 0.0, 1.0, True), CheckResult("a", "y", None, 1.0, False, error="E")]
    doc = CheckReport(3, results).to_dict()
    assert doc["seed"] == 3
    assert doc["passed"] is False
    assert doc["n_checks"] == 2 and doc["n_failed"] == 1
    assert doc["checks"][1]["residual"] is None


# ── Suites ────────────────────────────────────────────────────────────────────

def test_suite_order():
    assert list(SUITES) == ["elliptic", "lie_dims", "brackets", "top", "lax", "cm",
                            "gaudin", "reality", "quantum"]


def test_elliptic_suite_small_sample():
    results = suite_elliptic(np.random.default_rng(0), n=5)
    failed = [r.name for r in results if not r.passed]
    assert not failed, failed


def test_lie_dims_and_quantum_pass():
    for suite in (suite_lie_dims, suite_quantum):
        results = suite(np.random.default_rng(1))
        assert results
        assert all(r.passed for r in results), [r.to_dict() for r in results if not r.passed]


def test_run_checks_selection():
    report = run_checks(seed=7, only=["quantum", "lie_dims"])
    suites = [r.suite for r in report.results]
    assert set(suites) == {"lie_dims", "quantum"}
    assert suites.index("quantum") > suites.index("lie_dims")    # fixed suite order
    assert report.passed
    print(f"✅ {len(report.results)} checks passed")


def test_selected_suite_reproduces_full_run_residuals():
    alone = run_checks(seed=11, only=["quantum"])
    paired = run_checks(seed=11, only=["lie_dims", "quantum"])
    quantum = [r.residual for r in paired.results if r.suite == "quantum"]
    assert [r.residual for r in alone.results] == pytest.approx(quantum)
