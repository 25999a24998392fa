"""
src/execution/writer.py

Writes a dispatch's outputs under the scenario's output directory.  No
network, no timestamps: a fixed scenario and seed give byte-identical files.

Files written (prefix defaults to the action name):
  <prefix>_trajectory.csv    simulate only; one row per step, t = 0 included
  <prefix>_<action>.json     the report body (conservation, dims, check, spectrum)
  <prefix>_manifest.json     seed, integrator, curve, recorded Lax constants, files

Trajectory columns:
  t, then <coord>_re / <coord>_im per flat coordinate in the model's order,
  then c1_abs, c2_abs, reality_residual, then <observable>_re / _im.

Every JSON document is validated against schemas/<name>.schema.json before
it is written.

Usage:
    from src.execution.writer import write_outputs
    files = write_outputs(scenario, report)
"""

import json
import logging
from pathlib import Path

import pandas as pd
from jsonschema import Draft202012Validator

from src import __version__
from src.errors import ReportSchemaError
from src.flow.integrator import Trajectory
from src.models.lax_calibration import recorded_constants
from src.pipeline.scenario import load_schema

logger = logging.getLogger(__name__)

_AUDIT_COLS = ["c1_abs", "c2_abs", "reality_residual"]

# Report schema per action.
_REPORT_SCHEMAS = {
    "simulate": "conservation",
    "dims": "dims",
    "check": "check",
    "spectrum": "spectrum",
}


# ── Tables ────────────────────────────────────────────────────────────────────

def trajectory_frame(traj: Trajectory) -> pd.DataFrame:
    """Flat table of a trajectory in the documented column order."""
    columns: dict[str, object] = {"t": traj.times}
    for k, label in enumerate(traj.model.coordinate_labels()):
        columns[f"{label}_re"] = traj.coords[:, k].real
        columns[f"{label}_im"] = traj.coords[:, k].imag
    for name in _AUDIT_COLS:
        columns[name] = [record[name] for record in traj.audit]
    for name in traj.model.observables():
        values = [complex(record[name]) for record in traj.audit]
        columns[f"{name}_re"] = [v.real for v in values]
        columns[f"{name}_im"] = [v.imag for v in values]
    return pd.DataFrame(columns)


def write_trajectory_csv(traj: Trajectory, path: Path) -> Path:
    trajectory_frame(traj).to_csv(path, index=False, float_format="%.17g")
    return path


# ── JSON ──────────────────────────────────────────────────────────────────────

def validate_report(doc: dict, schema_name: str) -> None:
    validator = Draft202012Validator(load_schema(schema_name))
    error = next(iter(validator.iter_errors(doc)), None)
    if error is not None:
        where = ".".join(str(p) for p in error.absolute_path) or "$"
        raise ReportSchemaError(f"{schema_name} report violates its schema at {where}: {error.message}")


def write_json(doc: dict, path: Path, schema_name: str | None = None) -> Path:
    """Pretty-printed, key-sorted JSON; validated first when a schema is named."""
    if schema_name is not None:
        validate_report(doc, schema_name)
    with open(path, "w") as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def build_manifest(scenario, files: list[str]) -> dict:
    manifest = {
        "version": __version__,
        "action": scenario.action,
        "seed": scenario.seed,
        "curve": scenario.curve.to_dict() if scenario.curve is not None else None,
        "calibration": recorded_constants(),
        "files": files,
    }
    if scenario.action == "simulate":
        manifest["integrator"] = scenario.integrator.to_dict()
        manifest["model"] = scenario.model
        manifest["class"] = scenario.cls.value
    return manifest


# ── Entry point ───────────────────────────────────────────────────────────────

def write_outputs(scenario, report) -> list[str]:
    """
    Persist a RunReport: trajectory CSV (simulate), the action's JSON report
    and the manifest.  Returns the written file names, manifest last.
    I/O errors propagate.
    """
    out_dir = Path(scenario.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    prefix = scenario.prefix
    files: list[str] = []

    if report.trajectory is not None:
        csv_path = write_trajectory_csv(report.trajectory, out_dir / f"{prefix}_trajectory.csv")
        files.append(csv_path.name)

    schema_name = _REPORT_SCHEMAS[report.action]
    json_path = write_json(report.payload, out_dir / f"{prefix}_{schema_name}.json", schema_name)
    files.append(json_path.name)

    manifest_path = out_dir / f"{prefix}_manifest.json"
    files.append(manifest_path.name)
    write_json(build_manifest(scenario, files), manifest_path, "manifest")

    logger.info("wrote %s to %s", ", ".join(files), out_dir)
    return files
