"""
src/core/phase_space.py

The constrained Darboux phase space of the SL(2)/SO(2) spin.

Six coordinates per site, always stored in the order

    (p0, p1, p3, q0, q1, q3)

subject to the second-class constraints

    c1 = q0² − q1² − q3² − 1 = 0        (det 𝒬 = 1)
    c2 = q0p0 + q1p1 + q3p3 = 0          (X0 = 0)

Reality classes are complex coordinates plus a pattern check, not separate
real charts:
  ComplexV  no condition
  TypeIII   p0, q0 real; p1, q1, p3, q3 imaginary
  TypeIV    all six real

Multi-site states (Gaudin) are flat arrays of 6·n coordinates; the
array-level helpers here act block by block.
"""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.config import BASIN_BOUND, DEFAULT_TOL, DEGENERATE_Q, NEWTON_MAX_ITER
from src.errors import DegenerateDirectionError, ProjectionError, ValidationError

logger = logging.getLogger(__name__)

COORDS = ("p0", "p1", "p3", "q0", "q1", "q3")

# η = diag(1, −1, −1) on (·0, ·1, ·3)
ETA = np.array([1.0, -1.0, -1.0])


class RealityClass(str, Enum):
    COMPLEX_V = "ComplexV"
    TYPE_III = "TypeIII"
    TYPE_IV = "TypeIV"


# 1 marks a real slot, 1j an imaginary slot.
_PATTERNS = {
    RealityClass.TYPE_III: np.array([1, 1j, 1j, 1, 1j, 1j]),
    RealityClass.TYPE_IV: np.ones(6, dtype=complex),
}

# Sign flips composed with conjugation; the fixed set is the class.
_INVOLUTION_SIGNS = {
    RealityClass.TYPE_III: np.array([1.0, -1.0, -1.0, 1.0, -1.0, -1.0]),
    RealityClass.TYPE_IV: np.ones(6),
}


def reality_pattern(cls: RealityClass) -> np.ndarray | None:
    """Per-coordinate unit phases of the class, None for ComplexV."""
    return _PATTERNS.get(RealityClass(cls))


@dataclass(frozen=True)
class PhasePoint:
    p0: complex
    p1: complex
    p3: complex
    q0: complex
    q1: complex
    q3: complex
    cls: RealityClass = RealityClass.COMPLEX_V

    def __post_init__(self):
        for name in COORDS:
            object.__setattr__(self, name, complex(getattr(self, name)))
        object.__setattr__(self, "cls", RealityClass(self.cls))

    @classmethod
    def from_array(cls, z: np.ndarray, reality: RealityClass = RealityClass.COMPLEX_V) -> "PhasePoint":
        z = np.asarray(z, dtype=complex)
        if z.shape != (6,):
            raise ValidationError(f"a phase point needs 6 coordinates, got shape {z.shape}")
        return cls(*z.tolist(), cls=reality)

    @classmethod
    def from_pq(cls, p, q, reality: RealityClass = RealityClass.COMPLEX_V) -> "PhasePoint":
        return cls(*p, *q, cls=reality)

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in COORDS], dtype=complex)

    @property
    def p(self) -> np.ndarray:
        return np.array([self.p0, self.p1, self.p3], dtype=complex)

    @property
    def q(self) -> np.ndarray:
        return np.array([self.q0, self.q1, self.q3], dtype=complex)


# ── Constraints ───────────────────────────────────────────────────────────────

def constraint_values(z: np.ndarray) -> tuple[complex, complex]:
    """(c1, c2) of one 6-block."""
    p, q = z[:3], z[3:6]
    c1 = q[0] * q[0] - q[1] * q[1] - q[2] * q[2] - 1
    c2 = q[0] * p[0] + q[1] * p[1] + q[2] * p[2]
    return complex(c1), complex(c2)


def constraint_gradients(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """∇c1, ∇c2 with respect to (p0,p1,p3,q0,q1,q3)."""
    p, q = z[:3], z[3:6]
    grad_c1 = np.concatenate([np.zeros(3, dtype=complex), 2 * ETA * q])
    grad_c2 = np.concatenate([q, p]).astype(complex)
    return grad_c1, grad_c2


def constraints(pt: PhasePoint) -> tuple[complex, complex]:
    return constraint_values(pt.as_array())


def max_constraint_violation(z: np.ndarray) -> tuple[float, float]:
    """max |c1|, max |c2| over the sites of a flat 6·n array."""
    blocks = np.asarray(z, dtype=complex).reshape(-1, 6)
    c = np.array([constraint_values(b) for b in blocks])
    return float(np.max(np.abs(c[:, 0]))), float(np.max(np.abs(c[:, 1])))


# ── Projection ────────────────────────────────────────────────────────────────

def project_coordinates(z: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """
    Pull one 6-block back onto c1 = c2 = 0 without moving X.

    Each sweep rescales q by 1/s with s = √⟨q,q⟩_η and p by s, then removes
    the c2 component of p along ηq.  X is bilinear in (p, q), so the
    rescaling leaves it fixed, and so does any shift of p along ηq; the
    constraint gradient in p is q itself, but a shift along q would move X.
    Both moves keep every reality pattern and the CM condition X3 = 0.
    Returns a new array.
    """
    z = np.array(z, dtype=complex)
    p, q = z[:3], z[3:6]
    if np.linalg.norm(q) < DEGENERATE_Q:
        raise DegenerateDirectionError(f"q = {q} has no projection direction")

    c1, c2 = constraint_values(z)
    if max(abs(c1), abs(c2)) <= tol:
        return z
    if max(abs(c1), abs(c2)) > BASIN_BOUND:
        raise ProjectionError(
            f"|c1|={abs(c1):.3g}, |c2|={abs(c2):.3g} outside the projection basin ({BASIN_BOUND})"
        )

    for sweep in range(1, NEWTON_MAX_ITER + 1):
        s = np.sqrt(q[0] * q[0] - q[1] * q[1] - q[2] * q[2])
        q, p = q / s, p * s
        eta_q = ETA * q
        p = p - (q @ p) / (q @ eta_q) * eta_q
        c1, c2 = constraint_values(np.concatenate([p, q]))
        if max(abs(c1), abs(c2)) <= tol:
            logger.debug("projection converged after %d sweep(s)", sweep)
            return np.concatenate([p, q])
    raise ProjectionError(f"projection did not converge in {NEWTON_MAX_ITER} sweeps "
                          f"(|c1|={abs(c1):.3g}, |c2|={abs(c2):.3g})")


def project_onshell(pt: PhasePoint, tol: float = DEFAULT_TOL) -> PhasePoint:
    return PhasePoint.from_array(project_coordinates(pt.as_array(), tol), pt.cls)


# ── Reality classes ───────────────────────────────────────────────────────────

def reality_residual_array(z: np.ndarray, cls: RealityClass) -> float:
    pattern = reality_pattern(cls)
    if pattern is None:
        return 0.0
    blocks = np.asarray(z, dtype=complex).reshape(-1, 6)
    return float(np.max(np.abs((blocks / pattern).imag)))


def reality_residual(pt: PhasePoint) -> float:
    """Largest deviation of a coordinate from its class's real/imaginary axis."""
    return reality_residual_array(pt.as_array(), pt.cls)


def reality_involution(pt: PhasePoint) -> PhasePoint:
    """
    Anti-holomorphic involution fixing the class: conjugation for TypeIV,
    conjugation with (p1, p3, q1, q3) negated for TypeIII.
    """
    signs = _INVOLUTION_SIGNS.get(pt.cls)
    if signs is None:
        raise ValidationError("ComplexV carries no real structure", field="class")
    return PhasePoint.from_array(signs * np.conj(pt.as_array()), pt.cls)
