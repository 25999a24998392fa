"""
tests/test_lax_calibration.py

Tests that the Lax constants hard-coded in the models are re-derived by
the calibration search on several tori.

Run: pytest tests/test_lax_calibration.py -v -s
"""

import sys
from pathlib import Path
from unittest.mock import patch

import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.core.spin import SpinVector
from src.errors import NumericalError
from src.models.calogero import CM_SIGN
from src.models.gaudin import GAUDIN_RESIDUE_FACTOR
from src.models.lax_calibration import (
    calibrate,
    fit_cm_sign,
    fit_gaudin_residue_factor,
    fit_top_trace,
    recorded_constants,
    search_top_slots,
)
from src.models.top import TOP_LAX_SLOTS, TRACE_A0, TRACE_B0, top_h2
from src.tools.elliptic import EllipticCurve

TAUS = [1j, 0.2 + 0.8j, 0.5 + 1.3j]


@pytest.mark.parametrize("tau", TAUS)
def test_slot_search_finds_recorded_table(tau):
    assert search_top_slots(EllipticCurve(tau)) == TOP_LAX_SLOTS


@pytest.mark.parametrize("tau", TAUS)
def test_trace_fit_constants(tau):
    X = SpinVector(1.1 - 0.3j, 0.2 + 0.4j, -0.6 + 0.1j)
    a0, b0, residual = fit_top_trace(X, EllipticCurve(tau))
    assert abs(a0 - TRACE_A0) < 1e-8
    assert abs(b0 - TRACE_B0) < 1e-8
    assert residual < 1e-9


def test_trace_fit_rejects_complex_constants():
    X = SpinVector(1.1 - 0.3j, 0.2 + 0.4j, -0.6 + 0.1j)
    with patch("src.models.lax_calibration.top_h2", lambda x: 1j * top_h2(x)):
        with pytest.raises(NumericalError):
            fit_top_trace(X, EllipticCurve(1j))


def test_cm_sign():
    assert fit_cm_sign(EllipticCurve(0.2 + 0.8j)) == CM_SIGN


def test_gaudin_factor():
    assert fit_gaudin_residue_factor() == pytest.approx(GAUDIN_RESIDUE_FACTOR, abs=1e-8)


def test_calibrate_matches_recorded():
    report = calibrate(EllipticCurve(1j))
    assert report.matches_recorded()
    assert abs(report.wp_shift - report.wp_shift_richardson) < 1e-6
    doc = report.to_dict()
    assert doc["top_lax_slots"] == recorded_constants()["top_lax_slots"]
    assert doc["cm_sign"] == -1
    print(f"✅ calibration: a0={doc['trace_a0']:.6f}  b0={doc['trace_b0']:.6f}")


def test_recorded_constants_shape():
    doc = recorded_constants()
    assert doc["top_lax_slots"]["sigma2"] == {"phi": 2, "factor": [0.0, 1.0]}
    assert doc["trace_a0"] == 4.0 and doc["trace_b0"] == -4.0
    assert doc["gaudin_residue_factor"] == -2.0
    assert set(doc["phi_phases"]) == {"1", "2", "3"}
