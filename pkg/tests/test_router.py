"""
tests/test_router.py

Tests the action router and the output writer: payloads, file names,
schema validation of every written document, and reproducibility.

Run: pytest tests/test_router.py -v -s
"""

import json
import os
import sys
import tempfile
from dataclasses import replace
from pathlib import Path
from unittest.mock import patch

import pandas as pd
import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.errors import ReportSchemaError, ValidationError
from src.execution.writer import build_manifest, trajectory_frame, validate_report
from src.models.calogero import CMModel, CMVariant
from src.models.gaudin import GaudinModel
from src.models.lax_calibration import recorded_constants
from src.models.top import TopModel, TopParams
from src.pipeline.router import ELLIPTIC_SPECTRAL_POINTS, dispatch, spectral_points
from src.pipeline.scenario import parse_scenario
from src.tools.elliptic import EllipticCurve


def _scenario(doc: dict, out_dir: str | None = None):
    if out_dir is not None:
        doc = {**doc, "outputs": {"dir": out_dir}}
    with patch.dict(os.environ):
        os.environ.pop("SPINHIGGS_SEED", None)
        return parse_scenario(json.dumps(doc))


TOP_RUN = {
    "action": "simulate", "model": "top", "class": "TypeIII", "curve": {"tau_im": 1.0},
    "initial": "random:3", "integrator": {"dt": 0.01, "t_end": 0.2},
}


# ── Spectral points ───────────────────────────────────────────────────────────

def test_spectral_points_per_model():
    curve = EllipticCurve(1j)
    assert spectral_points(TopModel(TopParams(1, 2, 3))) == ()
    assert spectral_points(TopModel(TopParams(1, 2, 3), curve=curve)) == ELLIPTIC_SPECTRAL_POINTS
    assert spectral_points(CMModel(None, CMVariant.III)) == ()
    zs = spectral_points(GaudinModel([0, 1, 2]))
    assert len(zs) == 3
    assert all(abs(z) > 3 for z in zs)


# ── simulate ──────────────────────────────────────────────────────────────────

def test_simulate_writes_csv_report_and_manifest():
    with tempfile.TemporaryDirectory() as tmp:
        report = dispatch(_scenario(TOP_RUN, tmp))
        assert report.exit_code == 0
        assert report.files == ["simulate_trajectory.csv", "simulate_conservation.json",
                                "simulate_manifest.json"]

        frame = pd.read_csv(Path(tmp) / "simulate_trajectory.csv")
        assert len(frame) == 21
        assert list(frame.columns[:3]) == ["t", "p0_re", "p0_im"]
        assert {"c1_abs", "c2_abs", "reality_residual", "H0_re", "H2_im"} <= set(frame.columns)

        body = json.loads((Path(tmp) / "simulate_conservation.json").read_text())
        assert body["n_steps"] == 20
        assert body["model"]["class"] == "TypeIII"
        assert len(body["isospectral"]["samples"]) == 3
        assert body["max_reality_residual"] < 1e-10

        manifest = json.loads((Path(tmp) / "simulate_manifest.json").read_text())
        assert manifest["files"] == report.files
        assert manifest["integrator"]["dt"] == 0.01
        assert manifest["curve"] == {"tau_re": 0.0, "tau_im": 1.0}
        assert manifest["calibration"] == json.loads(json.dumps(recorded_constants()))


def test_simulate_outputs_are_reproducible():
    with tempfile.TemporaryDirectory() as a, tempfile.TemporaryDirectory() as b:
        dispatch(_scenario(TOP_RUN, a))
        dispatch(_scenario(TOP_RUN, b))
        for name in ("simulate_trajectory.csv", "simulate_conservation.json"):
            assert (Path(a) / name).read_bytes() == (Path(b) / name).read_bytes()


def test_simulate_real_cm_has_no_isospectral_block():
    doc = {"action": "simulate", "model": "cm", "class": "TypeIV", "params": {"variant": "III"},
           "initial": {"v": 0.2, "u": 0.3, "p": [0, 0.5, 0], "q": [1, 0, 0]},
           "integrator": {"dt": 0.01, "t_end": 0.1}}
    report = dispatch(_scenario(doc), write=False)
    assert "isospectral" not in report.payload
    assert report.files == []
    names = [row["observable"] for row in report.payload["observables"]]
    assert "H0" in names


@pytest.mark.parametrize("seed", [7, 21])
def test_random_cm_start_is_conserved(seed):
    doc = {"action": "simulate", "model": "cm", "curve": {"tau_im": 1.0}, "initial": f"random:{seed}",
           "integrator": {"dt": 1e-3, "t_end": 1.0}}
    payload = dispatch(_scenario(doc), write=False).payload
    drift = {row["observable"]: row["max_rel_drift"] for row in payload["observables"]}
    assert drift["XpXm"] < 1e-8
    assert drift["H0"] < 1e-8
    assert payload["max_c1_abs"] < 1e-9
    worst = max(max(s["trace_sq_rel_drift"], s["det_rel_drift"]) for s in payload["isospectral"]["samples"])
    assert worst < 1e-7


def test_explicit_start_outside_its_class_is_rejected():
    doc = {"action": "simulate", "model": "top", "class": "TypeIII", "params": {"J": [1, 2, 3]},
           "initial": {"p": [0, 0.3, 0.2], "q": [1, 0, 0]}, "integrator": {"dt": 0.01, "t_end": 0.1}}
    with pytest.raises(ValidationError) as exc:
        dispatch(_scenario(doc), write=False)
    assert exc.value.field == "initial"


def test_simulate_gaudin_frame_columns():
    doc = {"action": "simulate", "model": "gaudin", "params": {"marks": [0, 1]},
           "initial": "random:2", "integrator": {"dt": 0.01, "t_end": 0.05}}
    report = dispatch(_scenario(doc), write=False)
    frame = trajectory_frame(report.trajectory)
    assert "s1_q3_im" in frame.columns
    assert "moment_2_re" in frame.columns
    assert len(frame) == 6


def test_custom_prefix():
    with tempfile.TemporaryDirectory() as tmp:
        doc = {"action": "dims", "outputs": {"dir": tmp, "prefix": "ledger"}}
        with patch.dict(os.environ):
            os.environ.pop("SPINHIGGS_SEED", None)
            report = dispatch(parse_scenario(json.dumps(doc)))
        assert report.files == ["ledger_dims.json", "ledger_manifest.json"]


# ── dims / spectrum / check ───────────────────────────────────────────────────

def test_dims_payload():
    s = _scenario({"action": "dims", "params": {"types": ["A1", "D4"], "genus": 1, "marked": 1}})
    payload = dispatch(s, write=False).payload
    a1, d4 = payload["reports"]
    assert a1["type"] == "A1"
    assert a1["dims"]["dim_XV"] == 2
    assert a1["counts"]["dim_M_V"] == 4
    assert d4["type"] == "D4"
    assert "counts" in d4
    validate_report(payload, "dims")


def test_dims_without_counts():
    payload = dispatch(_scenario({"action": "dims"}), write=False).payload
    assert [entry["type"] for entry in payload["reports"]] == ["A1"]
    assert "counts" not in payload["reports"][0]


def test_spectrum_payload():
    s = _scenario({"action": "spectrum", "params": {"l": 1, "J": [1, 2, 3]}})
    payload = dispatch(s, write=False).payload
    assert payload["eigenvalues"] == pytest.approx([3, 4, 5])
    assert payload["J"] == [1.0, 2.0, 3.0]
    assert payload["hermitian"] is True
    validate_report(payload, "spectrum")


def test_complex_spectrum_payload_pairs():
    s = _scenario({"action": "spectrum", "params": {"l": 0.5, "J": [[1, 1], 2, 3]}})
    payload = dispatch(s, write=False).payload
    assert payload["hermitian"] is False
    assert payload["J"][0] == [1.0, 1.0]
    assert len(payload["eigenvalues"]) == 2


def test_check_action_exit_code():
    s = _scenario({"action": "check", "only": ["lie_dims"], "seed": 7})
    report = dispatch(s, write=False)
    assert report.exit_code == 0
    assert report.payload["passed"] is True
    validate_report(report.payload, "check")


# ── Writer ────────────────────────────────────────────────────────────────────

def test_schema_violation_raises():
    with pytest.raises(ReportSchemaError):
        validate_report({"l": 1}, "spectrum")


def test_manifest_without_curve():
    s = _scenario({"action": "check", "seed": 5})
    manifest = build_manifest(s, ["check_check.json", "check_manifest.json"])
    assert manifest["curve"] is None
    assert manifest["seed"] == 5
    assert "integrator" not in manifest
    validate_report(manifest, "manifest")


def test_manifest_records_simulate_settings():
    s = replace(_scenario(TOP_RUN), prefix="x")
    manifest = build_manifest(s, [])
    assert manifest["model"] == "top"
    assert manifest["class"] == "TypeIII"
