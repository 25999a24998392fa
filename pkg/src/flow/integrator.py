"""
src/flow/integrator.py

Classical fourth-order Runge–Kutta on a model's flat vector field, with an
optional re-projection of every spin block onto the constraint surface.

The fields are tangent to the constraints analytically, so projection only
removes discretization drift; project_every = 0 switches it off.

Usage:
    from src.flow.integrator import IntegratorOptions, integrate
    traj = integrate(TopModel(params), start, IntegratorOptions(dt=1e-3, t_end=10))
"""

import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from src.config import DEFAULT_DT, DEFAULT_PROJECT_EVERY, DEFAULT_T_END, DEFAULT_TOL
from src.core.phase_space import max_constraint_violation
from src.errors import OffShellError, ValidationError
from src.models.base import DynamicalModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntegratorOptions:
    dt: float = DEFAULT_DT
    t_end: float = DEFAULT_T_END
    project_every: int = DEFAULT_PROJECT_EVERY
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if not self.dt > 0:
            raise ValidationError(f"dt must be positive, got {self.dt}", field="integrator.dt")
        if not self.t_end > 0:
            raise ValidationError(f"t_end must be positive, got {self.t_end}", field="integrator.t_end")
        if self.dt > self.t_end:
            raise ValidationError(f"dt={self.dt} exceeds t_end={self.t_end}", field="integrator.dt")
        if self.project_every < 0:
            raise ValidationError("project_every must be >= 0", field="integrator.project_every")
        if not 0 < self.tol <= 1e-4:
            raise ValidationError(f"tol must lie in (0, 1e-4], got {self.tol}", field="integrator.tol")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))

    def to_dict(self) -> dict:
        return {"dt": self.dt, "t_end": self.t_end, "project_every": self.project_every, "tol": self.tol}


@dataclass(eq=False)
class Trajectory:
    """
    Times, flat states (one row per time) and the per-step audit records.
    `states` unpacks rows into the model's state type on demand.
    """

    model: DynamicalModel
    times: np.ndarray
    coords: np.ndarray
    audit: list[dict] = field(default_factory=list)

    @property
    def states(self) -> list[Any]:
        return [self.model.unpack(row) for row in self.coords]

    def __len__(self) -> int:
        return len(self.times)


def _rk4_step(model: DynamicalModel, z: np.ndarray, dt: float) -> np.ndarray:
    k1 = model.vector_field(z)
    k2 = model.vector_field(z + 0.5 * dt * k1)
    k3 = model.vector_field(z + 0.5 * dt * k2)
    k4 = model.vector_field(z + dt * k3)
    return z + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def integrate(model: DynamicalModel, initial: Any, opts: IntegratorOptions) -> Trajectory:
    """
    Integrate from `initial` (a model state) to t_end.  Raises OffShellError
    if the start is not on-shell within opts.tol and ValidationError
    (field "initial") if it breaks the model's reality class by more than
    opts.tol; pole and projection errors from the field propagate unchanged.
    """
    z = np.asarray(model.pack(initial), dtype=complex)
    c1_abs, c2_abs = max_constraint_violation(model.spin_blocks(z))
    if max(c1_abs, c2_abs) > opts.tol:
        raise OffShellError(
            f"initial state is off-shell (|c1|={c1_abs:.3g}, |c2|={c2_abs:.3g}, tol={opts.tol})"
        )
    residual = model.reality_residual(z)
    if residual > opts.tol:
        raise ValidationError(
            f"initial state is not in class {model.cls.value} (reality residual {residual:.3g})",
            field="initial",
        )

    n_steps = opts.n_steps
    times = opts.dt * np.arange(n_steps + 1)
    coords = np.empty((n_steps + 1, z.size), dtype=complex)
    coords[0] = z
    audit = [model.audit(z)]

    for step in range(1, n_steps + 1):
        z = _rk4_step(model, z, opts.dt)
        if opts.project_every and step % opts.project_every == 0:
            z = model.project(z, opts.tol)
        coords[step] = z
        audit.append(model.audit(z))

    logger.info("integrated %s: %d steps of dt=%g", model.name, n_steps, opts.dt)
    return Trajectory(model=model, times=times, coords=coords, audit=audit)
