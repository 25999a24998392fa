"""
src/models/top.py

Spin-extended SL(2) Euler–Arnold top.

Hamiltonian on the collective spin:

    H̃0(J) = ½(J1X1² − J2X2² + J3X3²),      H2 = H̃0(1,1,1) = ½·casimir

Elliptic Lax operator, after calibration (see src/models/lax_calibration.py):

    L(z) = X1ϕ3(z)σ1 + iX2ϕ2(z)σ2 + X3ϕ1(z)σ3

which has Res_{z=0} L = spin_matrix(X), L(z+1) = σ3Lσ3, L(z+τ) = σ1Lσ1 and

    tr L(z)² = TRACE_A0·H2·℘(z) + TRACE_B0·H̃0(e3, e2, e1).

The trace picks up the half-period values in the order (ω3, ω2, ω1), so
the Hamiltonian whose flow is isospectral for this L is `TopParams.for_lax`.
"""

from dataclasses import dataclass

import numpy as np

from src.config import ONSHELL_TOL
from src.core.brackets import Observable, hamiltonian_field, spin_function
from src.core.matrices import SIGMA1, SIGMA2, SIGMA3
from src.core.phase_space import PhasePoint, RealityClass, constraint_values
from src.core.spin import PAIRING, SpinVector, casimir, spin_array, spin_jacobian
from src.errors import OffShellError, ValidationError
from src.models.base import DynamicalModel, LaxSample
from src.tools.elliptic import EllipticCurve, half_period_wp, phi_alpha

# σ_k coefficient = factor · X_k · ϕ_slot(z)
TOP_LAX_SLOTS: dict[int, tuple[int, complex]] = {1: (3, 1 + 0j), 2: (2, 1j), 3: (1, 1 + 0j)}
TRACE_A0: float = 4.0
TRACE_B0: float = -4.0

_PAULI = (SIGMA1, SIGMA2, SIGMA3)


@dataclass(frozen=True)
class TopParams:
    J1: complex
    J2: complex
    J3: complex
    curve: EllipticCurve | None = None

    def __post_init__(self):
        for name in ("J1", "J2", "J3"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.curve is not None:
            expected = np.array(half_period_wp(self.curve).as_tuple())
            if not np.allclose(self.as_array(), expected, rtol=1e-10, atol=1e-12):
                raise ValidationError("J must equal the half-period values of the curve", field="params.J")

    @classmethod
    def from_curve(cls, curve: EllipticCurve) -> "TopParams":
        """J = (℘(½), ℘((1+τ)/2), ℘(τ/2))."""
        return cls(*half_period_wp(curve).as_tuple(), curve=curve)

    @classmethod
    def for_lax(cls, curve: EllipticCurve) -> "TopParams":
        """J = (e3, e2, e1): the inertia whose H̃0 enters tr L² of `top_lax`."""
        e1, e2, e3 = half_period_wp(curve).as_tuple()
        return cls(e3, e2, e1)

    def as_array(self) -> np.ndarray:
        return np.array([self.J1, self.J2, self.J3], dtype=complex)

    def is_real(self) -> bool:
        return bool(np.all(np.abs(self.as_array().imag) == 0))


# ── Energies and fields ───────────────────────────────────────────────────────

def _energy_x(x: np.ndarray, j: np.ndarray) -> complex:
    return complex(0.5 * np.sum(j * PAIRING * x * x))


def top_energy(X: SpinVector, params: TopParams) -> complex:
    return _energy_x(X.as_array(), params.as_array())


def top_h2(X: SpinVector) -> complex:
    return 0.5 * casimir(X)


def top_observable(params: TopParams | None = None) -> Observable:
    """H̃0(J) as a single-site observable; params=None gives H2."""
    j = np.ones(3) if params is None else params.as_array()
    return spin_function("H2" if params is None else "H0",
                         lambda x: _energy_x(x, j), lambda x: j * PAIRING * x)


def _top_field(z: np.ndarray, j: np.ndarray) -> np.ndarray:
    """Chain-rule Hamiltonian field of H̃0(J) on one 6-block."""
    grad_x = j * PAIRING * spin_array(z)
    return hamiltonian_field(grad_x @ spin_jacobian(z))


def top_vector_field(pt: PhasePoint, params: TopParams, check: bool = True) -> np.ndarray:
    """
    (ṗ0, ṗ1, ṗ3, q̇0, q̇1, q̇3) of the top, e.g. q̇0 = J1X1q1 + J3X3q3 and
    ṗ3 = J2X2p1 − J3X3p0.  Tangent to both constraints.
    """
    z = pt.as_array()
    if check:
        c1, c2 = constraint_values(z)
        if max(abs(c1), abs(c2)) > ONSHELL_TOL:
            raise OffShellError(f"top field needs an on-shell point (|c1|={abs(c1):.3g}, |c2|={abs(c2):.3g})")
    p0, p1, p3, q0, q1, q3 = z
    J1, J2, J3 = params.as_array()
    X1, X2, X3 = spin_array(z)
    return np.array([
        -J1 * X1 * p1 - J3 * X3 * p3,
        -J1 * X1 * p0 - J2 * X2 * p3,
        J2 * X2 * p1 - J3 * X3 * p0,
        J1 * X1 * q1 + J3 * X3 * q3,
        J1 * X1 * q0 - J2 * X2 * q3,
        J2 * X2 * q1 + J3 * X3 * q0,
    ], dtype=complex)


def top_spin_rhs(X: SpinVector, params: TopParams) -> SpinVector:
    """
    Ẋ_α = {H̃0, X_α} = Σ_β ∂H̃0/∂X_β {X_β, X_α}:

        Ẋ1 = (J3 − J2)X2X3,  Ẋ2 = (J3 − J1)X1X3,  Ẋ3 = (J2 − J1)X1X2
    """
    J1, J2, J3 = params.as_array()
    return SpinVector((J3 - J2) * X.X2 * X.X3, (J3 - J1) * X.X1 * X.X3, (J2 - J1) * X.X1 * X.X2)


# ── Lax operator ──────────────────────────────────────────────────────────────

def lax_coefficients(X: SpinVector, z: complex, curve: EllipticCurve) -> np.ndarray:
    """Coefficients of σ1, σ2, σ3 in L(z)."""
    x = X.as_array()
    return np.array([
        factor * x[k - 1] * phi_alpha(slot, z, curve)
        for k, (slot, factor) in sorted(TOP_LAX_SLOTS.items())
    ], dtype=complex)


def top_lax(X: SpinVector, z: complex, curve: EllipticCurve) -> LaxSample:
    c = lax_coefficients(X, z, curve)
    return LaxSample(complex(z), c[0] * SIGMA1 + c[1] * SIGMA2 + c[2] * SIGMA3)


def real_lax(X: SpinVector, x: float, curve: EllipticCurve, kind: RealityClass) -> LaxSample:
    """
    Lax operator of the real forms on the real line of a rectangular torus
    (τ = it).  For TypeIII spins the value is anti-Hermitian, for TypeIV
    it is a real matrix.
    """
    kind = RealityClass(kind)
    if kind is RealityClass.COMPLEX_V:
        raise ValidationError("real Lax operators exist for TypeIII and TypeIV only", field="class")
    if curve.tau.real != 0:
        raise ValidationError(f"real Lax needs a purely imaginary tau, got {curve.tau}", field="curve.tau_re")
    if complex(x).imag != 0:
        raise ValidationError(f"x must be real, got {x}", field="x")
    return top_lax(X, complex(x).real, curve)


# ── Integrator view ───────────────────────────────────────────────────────────

class TopModel(DynamicalModel):
    name = "top"

    def __init__(self, params: TopParams, curve: EllipticCurve | None = None,
                 cls: RealityClass = RealityClass.COMPLEX_V):
        self.params = params
        self.curve = curve if curve is not None else params.curve
        self.cls = RealityClass(cls)
        self._j = params.as_array()

    def pack(self, state: PhasePoint) -> np.ndarray:
        return state.as_array()

    def unpack(self, z: np.ndarray) -> PhasePoint:
        return PhasePoint.from_array(z, self.cls)

    def vector_field(self, z: np.ndarray) -> np.ndarray:
        return _top_field(z, self._j)

    def observables(self):
        j = self._j
        return {
            "casimir": lambda z: complex(np.sum(PAIRING * spin_array(z) ** 2)),
            "H2": lambda z: _energy_x(spin_array(z), np.ones(3)),
            "H0": lambda z: _energy_x(spin_array(z), j),
        }

    def lax(self, z: np.ndarray, spectral: complex) -> LaxSample:
        if self.curve is None:
            raise ValidationError("the top Lax operator needs an elliptic curve", field="curve")
        return top_lax(SpinVector.from_array(spin_array(z)), spectral, self.curve)

    def describe(self) -> dict:
        return {**super().describe(),
                "J": [[j.real, j.imag] for j in self._j]}
