"""
src/flow/sampling.py

Seeded, class-respecting random points on the constraint surface.

q is drawn on the c1 = 0 surface through an explicit parametrization:
  TypeIII   unit sphere      q = (cos θ, i·sin θ cos φ, i·sin θ sin φ)
  TypeIV    hyperboloid      q = (cosh s, sinh s cos θ, sinh s sin θ), |s| ≤ s_max
  ComplexV  same hyperboloid form with small complex s, θ

p is drawn in a ball of radius p_radius in the class's real chart and the
c2 component (plus X3 for Calogero–Moser spins) is removed by a linear
projection in that chart, so the reality pattern is exact by construction.

sample_cm_start builds a whole Calogero–Moser start on top of this: a
repulsive spin of fixed size and u between the poles at 2u = 0 and 2u = 1.
"""

import logging

import numpy as np

from src.config import CM_REDRAWS, CM_SPIN_SCALE, CM_U_RANGE, CM_V_RANGE, P_RADIUS, S_MAX
from src.core.phase_space import PhasePoint, RealityClass, project_coordinates, reality_pattern
from src.core.spin import collective_spin
from src.models.calogero import COUPLING, CMState, CMVariant

logger = logging.getLogger(__name__)


def _ball(rng: np.random.Generator, radius: float, dim: int = 3) -> np.ndarray:
    direction = rng.normal(size=dim)
    direction /= np.linalg.norm(direction)
    return radius * rng.uniform() ** (1 / dim) * direction


def _sample_q(rng: np.random.Generator, cls: RealityClass, s_max: float) -> np.ndarray:
    if cls is RealityClass.TYPE_III:
        theta = np.arccos(rng.uniform(-1, 1))
        phi = rng.uniform(0, 2 * np.pi)
        return np.array([np.cos(theta), 1j * np.sin(theta) * np.cos(phi),
                         1j * np.sin(theta) * np.sin(phi)])
    if cls is RealityClass.TYPE_IV:
        s = rng.uniform(-s_max, s_max)
        theta = rng.uniform(0, 2 * np.pi)
        return np.array([np.cosh(s), np.sinh(s) * np.cos(theta), np.sinh(s) * np.sin(theta)],
                        dtype=complex)
    s = complex(rng.uniform(-1, 1), rng.uniform(-0.5, 0.5))
    theta = complex(rng.uniform(0, 2 * np.pi), rng.uniform(-0.3, 0.3))
    return np.array([np.cosh(s), np.sinh(s) * np.cos(theta), np.sinh(s) * np.sin(theta)])


def _unit_phase(row: np.ndarray) -> complex:
    k = int(np.argmax(np.abs(row)))
    return row[k] / abs(row[k])


def sample_onshell(rng: np.random.Generator, cls: RealityClass = RealityClass.COMPLEX_V,
                   p_radius: float = P_RADIUS, s_max: float = S_MAX, cm: bool = False) -> PhasePoint:
    """
    One random on-shell point of the class.  With cm=True the point also
    satisfies X3 = q0p3 + q3p0 = 0.
    """
    cls = RealityClass(cls)
    q = _sample_q(rng, cls, s_max)

    pattern = reality_pattern(cls)
    chart = pattern[:3] if pattern is not None else np.ones(3, dtype=complex)
    if pattern is None:
        y = _ball(rng, p_radius / np.sqrt(2)) + 1j * _ball(rng, p_radius / np.sqrt(2))
    else:
        y = _ball(rng, p_radius).astype(complex)

    rows = [q]                                   # ∇_p c2
    if cm:
        rows.append(np.array([q[2], 0, q[0]]))   # ∇_p X3
    A = np.array([row * chart for row in rows])
    if pattern is not None:
        # Constraint rows are real up to one phase each in the real chart.
        A = np.array([(row / _unit_phase(row)).real for row in A])
        y = y.real
    y = y - np.linalg.pinv(A) @ (A @ y)
    p = chart * y
    z = project_coordinates(np.concatenate([p, q]), tol=1e-13)
    return PhasePoint.from_array(z, cls)


def sample_many(seed: int, n_points: int, cls: RealityClass = RealityClass.COMPLEX_V,
                **kwargs) -> list[PhasePoint]:
    rng = np.random.default_rng(seed)
    return [sample_onshell(rng, cls, **kwargs) for _ in range(n_points)]


def sample_cm_start(rng: np.random.Generator, variant: CMVariant,
                    cls: RealityClass = RealityClass.COMPLEX_V) -> CMState:
    """
    A random CM start whose coupling κ·X₊X₋ pushes u away from u = 0.

    On ComplexV p is turned by the phase that makes κ·X₊X₋ real and
    positive; on the real classes the spin is redrawn until its real part
    is positive.  p is then rescaled so |X| = CM_SPIN_SCALE, which leaves
    both constraints and X3 = 0 intact.
    """
    kappa = COUPLING[CMVariant(variant)]
    cls = RealityClass(cls)
    spin = None
    for _ in range(CM_REDRAWS):
        spin = sample_onshell(rng, cls, p_radius=1.0, s_max=1.0, cm=True)
        X = collective_spin(spin)
        norm = float(np.linalg.norm(X.as_array()))
        strength = kappa * X.X_plus * X.X_minus
        if norm < 1e-2:
            continue
        if cls is RealityClass.COMPLEX_V:
            if abs(strength) < 1e-12:
                continue
            factor = np.exp(-0.5j * np.angle(strength)) * CM_SPIN_SCALE / norm
            break
        if strength.real > 0:
            factor = CM_SPIN_SCALE / norm
            break
    else:
        logger.warning("no repulsive %s spin for variant %s in %d draws; the start may reach the pole",
                       cls.value, CMVariant(variant).value, CM_REDRAWS)
        factor = CM_SPIN_SCALE / max(float(np.linalg.norm(collective_spin(spin).as_array())), 1e-6)

    z = spin.as_array()
    z[:3] = z[:3] * factor
    return CMState(rng.uniform(*CM_V_RANGE), rng.uniform(*CM_U_RANGE), PhasePoint.from_array(z, cls))
