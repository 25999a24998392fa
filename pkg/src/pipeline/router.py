"""
src/pipeline/router.py

Dispatches a validated Scenario to the handler for its action and hands
the result to the writer.

Action → handler:
  simulate  → integrate the model, audit conservation (+ isospectrality
              when the model has a Lax operator), write CSV + JSON
  dims      → dimension ledger, moduli counts and center table per type
  check     → the named invariant suites; exit 2 when any check fails
  spectrum  → quantum top eigenvalues for spin l

Module errors propagate unchanged; src/main.py turns them into exit codes.

Usage:
    from src.pipeline import router
    report = router.dispatch(scenario)
"""

import logging
from dataclasses import dataclass, field

from src.execution.writer import write_outputs
from src.flow.audit import conservation_report, isospectral_check
from src.flow.integrator import Trajectory, integrate
from src.models.base import DynamicalModel
from src.models.quantum import quantum_top_spectrum
from src.pipeline.checks import run_checks
from src.pipeline.scenario import Scenario, build_model, initial_state, top_params
from src.tools.lie_dims import GroupType, center_admissible, count_report, dim_report

logger = logging.getLogger(__name__)

# Spectral points for the elliptic Lax operators, clear of the lattice.
ELLIPTIC_SPECTRAL_POINTS = (0.21 + 0.13j, 0.37 - 0.08j, 0.12 + 0.29j)


@dataclass
class RunReport:
    """What one dispatch produced: the JSON body, its exit status, the files written."""

    action: str
    payload: dict
    exit_code: int = 0
    trajectory: Trajectory | None = None
    files: list[str] = field(default_factory=list)


# ── Handlers ──────────────────────────────────────────────────────────────────

def spectral_points(model: DynamicalModel) -> tuple[complex, ...]:
    """Fixed z samples for the isospectral audit; empty when the model has no Lax operator."""
    if getattr(model, "curve", None) is not None:
        return ELLIPTIC_SPECTRAL_POINTS
    marks = getattr(model, "marks", None)
    if marks is not None:
        r = 1.0 + max(abs(x) for x in marks)
        return (r * (1 + 0.5j), r * (-0.5 + 1j), r * (0.3 - 1j))
    return ()


def _simulate(s: Scenario) -> RunReport:
    model = build_model(s)
    start = initial_state(s, model)
    traj = integrate(model, start, s.integrator)
    conservation = conservation_report(traj)

    payload = {
        "model": model.describe(),
        "n_steps": len(traj) - 1,
        "max_c1_abs": max(r["c1_abs"] for r in traj.audit),
        "max_c2_abs": max(r["c2_abs"] for r in traj.audit),
        "max_reality_residual": max(r["reality_residual"] for r in traj.audit),
        **conservation.to_dict(),
    }
    zs = spectral_points(model)
    if zs:
        payload["isospectral"] = isospectral_check(traj, zs).to_dict()
    logger.info("simulate %s: worst relative drift %.3g", model.name, conservation.worst_relative())
    return RunReport("simulate", payload, trajectory=traj)


def _dims(s: Scenario) -> RunReport:
    types = s.params.get("types", ["A1"])
    genus, marked = s.params.get("genus"), s.params.get("marked")
    reports = []
    for label in types:
        gt = GroupType.parse(label)
        entry = {"type": gt.label, "dims": dim_report(gt).to_dict(), "center": center_admissible(gt).to_dict()}
        if genus is not None or marked is not None:
            entry["counts"] = count_report(gt, genus or 0, marked or 0).to_dict()
        reports.append(entry)
    return RunReport("dims", {"reports": reports})


def _check(s: Scenario) -> RunReport:
    report = run_checks(s.seed, s.only or None)
    return RunReport("check", report.to_dict(), exit_code=0 if report.passed else 2)


def _spectrum(s: Scenario) -> RunReport:
    params = top_params(s)
    spectrum = quantum_top_spectrum(s.params["l"], params)
    J = params.as_array()
    values = [float(j.real) for j in J] if spectrum.hermitian else [[j.real, j.imag] for j in J]
    payload = {**spectrum.to_dict(), "J": values}
    return RunReport("spectrum", payload)


_HANDLERS = {
    "simulate": _simulate,
    "dims": _dims,
    "check": _check,
    "spectrum": _spectrum,
}


# ── Dispatcher ────────────────────────────────────────────────────────────────

def dispatch(s: Scenario, write: bool = True) -> RunReport:
    """
    Run the scenario's action and, unless write=False, persist its outputs
    plus the run manifest.  The report's exit_code is 0 for a finished run
    and 2 for a check run with failures.
    """
    report = _HANDLERS[s.action](s)
    if write:
        report.files = write_outputs(s, report)
    return report

