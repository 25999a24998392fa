"""
src/models/calogero.py

Two-body spin Calogero–Moser system with its trigonometric/hyperbolic
real forms.

State: canonical pair (v, u) plus one spin site with X3 = 0.  With
X± = X1 ± X2 the Lax operator is

    L(z) = vσ3 + X₋e(−2u)φ(−2u,z)E12 + X₊e(2u)φ(2u,z)E21,    e(x) = exp(2πix)

so that L(z+τ) = Q(u)L(z)Q(u)⁻¹ with Q(u) = diag(e(u), e(−u)), and

    ¼tr L(z)² = H2·℘(z) + H0^V,    H2 = ½X₊X₋,    H0^V = ½v² + CM_SIGN·H2·℘(2u).

The real variants keep their printed potentials:

    H0^III = ½v² + X₊X₋/sinh²(2u),    H0^IV = ½v² + X₊X₋/sin²(2u).

All three are ½v² + κ·X₊X₋·V(2u); the flow moves (v, u) and drags the
spin coordinates along the Casimir direction while X itself stays put.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.config import POLE_GUARD
from src.core.brackets import hamiltonian_field
from src.core.matrices import E12, E21, SIGMA3
from src.core.phase_space import PhasePoint, RealityClass
from src.core.spin import SpinVector, collective_spin, spin_array, spin_jacobian
from src.errors import PoleError, ValidationError
from src.models.base import DynamicalModel, LaxSample
from src.tools.elliptic import EllipticCurve, kronecker_phi, wp, wp_prime

# Sign of the ℘(2u) term in H0^V, fixed by the Lax-trace calibration.
CM_SIGN: int = -1

X3_TOL: float = 1e-6


class CMVariant(str, Enum):
    V = "V"
    III = "III"
    IV = "IV"


COUPLING: dict[CMVariant, float] = {
    CMVariant.V: 0.5 * CM_SIGN,
    CMVariant.III: 1.0,
    CMVariant.IV: 1.0,
}


@dataclass(frozen=True)
class CMState:
    v: complex
    u: complex
    spin: PhasePoint

    def __post_init__(self):
        object.__setattr__(self, "v", complex(self.v))
        object.__setattr__(self, "u", complex(self.u))
        x3 = collective_spin(self.spin).X3
        if abs(x3) > X3_TOL:
            raise ValidationError(f"CM spin needs X3 = 0, got |X3|={abs(x3):.3g}", field="initial.spin")

    @property
    def X(self) -> SpinVector:
        return collective_spin(self.spin)


@dataclass(frozen=True, eq=False)
class CMTangent:
    v_dot: complex
    u_dot: complex
    spin: np.ndarray

    def as_array(self) -> np.ndarray:
        return np.concatenate([[self.v_dot, self.u_dot], self.spin]).astype(complex)


def _e(x: complex) -> complex:
    return complex(np.exp(2j * np.pi * x))


# ── Potential ─────────────────────────────────────────────────────────────────

def cm_potential(u: complex, curve: EllipticCurve | None, variant: CMVariant) -> complex:
    """V(2u): ℘(2u), 1/sinh²(2u) or 1/sin²(2u)."""
    variant = CMVariant(variant)
    w = 2 * complex(u)
    if variant is CMVariant.V:
        if curve is None:
            raise ValidationError("variant V needs an elliptic curve", field="curve")
        return wp(w, curve)
    s = np.sinh(w) if variant is CMVariant.III else np.sin(w)
    if abs(s) < POLE_GUARD:
        raise PoleError(f"potential pole at 2u={w}")
    return complex(1 / s ** 2)


def cm_potential_derivative(u: complex, curve: EllipticCurve | None, variant: CMVariant) -> complex:
    """d/du V(2u) = 2V'(2u)."""
    variant = CMVariant(variant)
    w = 2 * complex(u)
    if variant is CMVariant.V:
        if curve is None:
            raise ValidationError("variant V needs an elliptic curve", field="curve")
        return 2 * wp_prime(w, curve)
    if variant is CMVariant.III:
        s, c = np.sinh(w), np.cosh(w)
    else:
        s, c = np.sin(w), np.cos(w)
    if abs(s) < POLE_GUARD:
        raise PoleError(f"potential pole at 2u={w}")
    return complex(2 * (-2 * c / s ** 3))


# ── Operations ────────────────────────────────────────────────────────────────

def cm_energy(state: CMState, curve: EllipticCurve | None, variant: CMVariant) -> tuple[complex, complex]:
    """(H2, H0) of the chosen variant."""
    variant = CMVariant(variant)
    X = state.X
    xx = X.X_plus * X.X_minus
    h0 = 0.5 * state.v ** 2 + COUPLING[variant] * xx * cm_potential(state.u, curve, variant)
    return 0.5 * xx, complex(h0)


def cm_lax(state: CMState, z: complex, curve: EllipticCurve) -> LaxSample:
    X = state.X
    u2 = 2 * state.u
    upper = X.X_minus * _e(-u2) * kronecker_phi(-u2, z, curve)
    lower = X.X_plus * _e(u2) * kronecker_phi(u2, z, curve)
    return LaxSample(complex(z), state.v * SIGMA3 + upper * E12 + lower * E21)


def _cm_field(z: np.ndarray, curve: EllipticCurve | None, variant: CMVariant) -> np.ndarray:
    v, u, spin = z[0], z[1], z[2:8]
    x1, x2, _ = spin_array(spin)
    kappa = COUPLING[variant]
    xx = x1 * x1 - x2 * x2
    potential = cm_potential(u, curve, variant)
    v_dot = -kappa * xx * cm_potential_derivative(u, curve, variant)
    grad_x = kappa * potential * np.array([2 * x1, -2 * x2, 0])
    spin_dot = hamiltonian_field(grad_x @ spin_jacobian(spin))
    return CMTangent(complex(v_dot), complex(v), spin_dot).as_array()


def cm_vector_field(state: CMState, curve: EllipticCurve | None, variant: CMVariant) -> CMTangent:
    """
    u̇ = v, v̇ = −∂H0/∂u; the spin block follows the Hamiltonian field of
    κV(2u)·X₊X₋, which keeps X and hence X₊X₋ fixed.
    """
    variant = CMVariant(variant)
    z = np.concatenate([[state.v, state.u], state.spin.as_array()])
    out = _cm_field(z, curve, variant)
    return CMTangent(out[0], out[1], out[2:])


# ── Integrator view ───────────────────────────────────────────────────────────

class CMModel(DynamicalModel):
    name = "cm"
    spin_offset = 2

    def __init__(self, curve: EllipticCurve | None, variant: CMVariant,
                 cls: RealityClass = RealityClass.COMPLEX_V):
        self.curve = curve
        self.variant = CMVariant(variant)
        self.cls = RealityClass(cls)
        if self.variant is CMVariant.V and curve is None:
            raise ValidationError("variant V needs an elliptic curve", field="curve")

    def pack(self, state: CMState) -> np.ndarray:
        return np.concatenate([[state.v, state.u], state.spin.as_array()]).astype(complex)

    def unpack(self, z: np.ndarray) -> CMState:
        return CMState(z[0], z[1], PhasePoint.from_array(z[2:8], self.cls))

    def coordinate_labels(self) -> list[str]:
        return ["v", "u"] + super().coordinate_labels()

    def vector_field(self, z: np.ndarray) -> np.ndarray:
        return _cm_field(z, self.curve, self.variant)

    def observables(self):
        kappa = COUPLING[self.variant]

        def xx(z):
            x1, x2, _ = spin_array(z[2:8])
            return complex(x1 * x1 - x2 * x2)

        def h0(z):
            return complex(0.5 * z[0] ** 2 + kappa * xx(z) * cm_potential(z[1], self.curve, self.variant))

        return {
            "XpXm": xx,
            "H2": lambda z: 0.5 * xx(z),
            "H0": h0,
            "X3": lambda z: complex(spin_array(z[2:8])[2]),
        }

    def lax(self, z: np.ndarray, spectral: complex) -> LaxSample:
        if self.curve is None:
            raise ValidationError("the CM Lax operator needs an elliptic curve", field="curve")
        return cm_lax(self.unpack(z), spectral, self.curve)

    def describe(self) -> dict:
        return {**super().describe(), "variant": self.variant.value}
