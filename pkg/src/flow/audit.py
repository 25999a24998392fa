"""
src/flow/audit.py

Numerical auditors run over trajectories and random on-shell samples:

  conservation_report   max absolute / relative drift of audited observables
  commutativity_scan    max |{f, g}| over seeded on-shell points
  isospectral_check     drift of tr L(z)² and det L(z) at fixed spectral points
  convergence_order     fitted exponent of error ∝ dtᵏ

Usage:
    from src.flow.audit import conservation_report
    report = conservation_report(traj, ["H2", "H0"])
"""

import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from src.core.brackets import Observable, canonical_bracket, dirac_bracket
from src.core.phase_space import RealityClass
from src.errors import ValidationError
from src.flow.integrator import IntegratorOptions, Trajectory, integrate
from src.flow.sampling import sample_onshell
from src.models.base import DynamicalModel

logger = logging.getLogger(__name__)


def _drift(values: np.ndarray) -> tuple[float, float]:
    """(max |f(t) − f(0)|, same divided by |f(0)|, or unscaled when f(0) = 0)."""
    delta = float(np.max(np.abs(values - values[0])))
    scale = abs(values[0])
    return delta, (delta / scale if scale > 0 else delta)


# ── Conservation ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class DriftRow:
    observable: str
    initial: complex
    max_abs_drift: float
    max_rel_drift: float

    def to_dict(self) -> dict:
        return {
            "observable": self.observable,
            "initial": [self.initial.real, self.initial.imag],
            "max_abs_drift": self.max_abs_drift,
            "max_rel_drift": self.max_rel_drift,
        }


@dataclass(frozen=True)
class ConservationReport:
    rows: list[DriftRow] = field(default_factory=list)

    def __getitem__(self, name: str) -> DriftRow:
        for row in self.rows:
            if row.observable == name:
                return row
        raise KeyError(name)

    def worst_relative(self) -> float:
        return max((row.max_rel_drift for row in self.rows), default=0.0)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([
            {"observable": r.observable, "initial_re": r.initial.real, "initial_im": r.initial.imag,
             "max_abs_drift": r.max_abs_drift, "max_rel_drift": r.max_rel_drift}
            for r in self.rows
        ])

    def to_dict(self) -> dict:
        return {"observables": [row.to_dict() for row in self.rows]}


def conservation_report(traj: Trajectory, observables: list[str] | None = None) -> ConservationReport:
    """
    Drift of each named audit column over the trajectory.  With no names
    given, every model observable is reported.
    """
    names = list(observables) if observables is not None else list(traj.model.observables())
    rows = []
    for name in names:
        if name not in traj.audit[0]:
            raise ValidationError(f"{name!r} is not an audited observable of {traj.model.name}",
                                  field="observables")
        values = np.array([record[name] for record in traj.audit], dtype=complex)
        abs_drift, rel_drift = _drift(values)
        rows.append(DriftRow(name, complex(values[0]), abs_drift, rel_drift))
    return ConservationReport(rows)


# ── Brackets over random points ───────────────────────────────────────────────

def commutativity_scan(f: Observable, g: Observable, cls: RealityClass = RealityClass.COMPLEX_V,
                       n_points: int = 1000, seed: int = 0, n_sites: int = 1, **sample_kwargs) -> float:
    """
    max |{f, g}| over n_points seeded on-shell points.  A single site uses
    the Dirac bracket; multi-site points (n_sites > 1) use the canonical
    bracket summed over sites.
    """
    if n_points < 1:
        raise ValidationError("n_points must be >= 1", field="n_points")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_points):
        if n_sites == 1:
            value = dirac_bracket(f, g, sample_onshell(rng, cls, **sample_kwargs))
        else:
            z = np.concatenate([sample_onshell(rng, cls, **sample_kwargs).as_array()
                                for _ in range(n_sites)])
            value = canonical_bracket(f, g, z)
        worst = max(worst, abs(value))
    logger.debug("scan {%s, %s}: max %.3g over %d points", f.name, g.name, worst, n_points)
    return worst


# ── Isospectrality ────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class SpectralDrift:
    z: complex
    trace_sq_abs_drift: float
    trace_sq_rel_drift: float
    det_abs_drift: float
    det_rel_drift: float

    def to_dict(self) -> dict:
        return {
            "z": [self.z.real, self.z.imag],
            "trace_sq_abs_drift": self.trace_sq_abs_drift,
            "trace_sq_rel_drift": self.trace_sq_rel_drift,
            "det_abs_drift": self.det_abs_drift,
            "det_rel_drift": self.det_rel_drift,
        }


@dataclass(frozen=True)
class IsospectralReport:
    samples: list[SpectralDrift]

    def worst_relative(self) -> float:
        return max((max(s.trace_sq_rel_drift, s.det_rel_drift) for s in self.samples), default=0.0)

    def to_dict(self) -> dict:
        return {"samples": [s.to_dict() for s in self.samples]}


def isospectral_check(traj: Trajectory, z_samples) -> IsospectralReport:
    """Drift of tr L(z)² and det L(z) along the trajectory; poles raise PoleError."""
    samples = []
    for z in z_samples:
        lax = [traj.model.lax(row, complex(z)) for row in traj.coords]
        traces = np.array([sample.trace_sq for sample in lax])
        dets = np.array([sample.det for sample in lax])
        samples.append(SpectralDrift(complex(z), *_drift(traces), *_drift(dets)))
    return IsospectralReport(samples)


# ── Convergence ───────────────────────────────────────────────────────────────

def convergence_order(errors, dts) -> float:
    """Least-squares slope of log(error) against log(dt)."""
    errors = np.asarray(errors, dtype=float)
    dts = np.asarray(dts, dtype=float)
    if errors.shape != dts.shape or errors.size < 2:
        raise ValidationError("need at least two (dt, error) pairs of equal length", field="dts")
    if np.any(errors <= 0) or np.any(dts <= 0):
        raise ValidationError("errors and dts must be positive", field="errors")
    slope, _ = np.polyfit(np.log(dts), np.log(errors), 1)
    return float(slope)


def global_errors(model: DynamicalModel, initial, dts, t_end: float,
                  reference_refinement: int = 4) -> list[float]:
    """
    Max-norm error of the final state for each dt, against an unprojected
    run at min(dts)/reference_refinement.
    """
    ref_dt = min(dts) / reference_refinement
    reference = integrate(model, initial, IntegratorOptions(dt=ref_dt, t_end=t_end, project_every=0))
    target = reference.coords[-1]
    errors = []
    for dt in dts:
        traj = integrate(model, initial, IntegratorOptions(dt=dt, t_end=t_end, project_every=0))
        errors.append(float(np.max(np.abs(traj.coords[-1] - target))))
    return errors
