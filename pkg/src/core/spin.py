"""
src/core/spin.py

Collective spin X(p, q) and the sl(2) Lie–Poisson structure it carries.

    X1 = q0p1 + q1p0
    X2 = q3p1 − q1p3
    X3 = q0p3 + q3p0

Under {p_j, q_k} = δ_jk these close as {X1,X2} = −X3, {X2,X3} = −X1,
{X3,X1} = X2, and each X_α commutes with both constraints.  The Casimir
is X1² − X2² + X3², which is also the pairing (X, X) = ½tr(spin_matrix²).
"""

from dataclasses import dataclass

import numpy as np

from src.core.phase_space import PhasePoint

# Signature of the pairing (A, B) = A1B1 − A2B2 + A3B3.
PAIRING = np.array([1.0, -1.0, 1.0])


@dataclass(frozen=True)
class SpinVector:
    X1: complex
    X2: complex
    X3: complex

    def __post_init__(self):
        for name in ("X1", "X2", "X3"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def from_array(cls, x) -> "SpinVector":
        x1, x2, x3 = np.asarray(x, dtype=complex).tolist()
        return cls(x1, x2, x3)

    def as_array(self) -> np.ndarray:
        return np.array([self.X1, self.X2, self.X3], dtype=complex)

    @property
    def X_plus(self) -> complex:
        return self.X1 + self.X2

    @property
    def X_minus(self) -> complex:
        return self.X1 - self.X2


# ── Array level ───────────────────────────────────────────────────────────────

def spin_array(z: np.ndarray) -> np.ndarray:
    p0, p1, p3, q0, q1, q3 = z[:6]
    return np.array([q0 * p1 + q1 * p0, q3 * p1 - q1 * p3, q0 * p3 + q3 * p0], dtype=complex)


def spin_jacobian(z: np.ndarray) -> np.ndarray:
    """3×6 matrix ∂X_α/∂(p0,p1,p3,q0,q1,q3)."""
    p0, p1, p3, q0, q1, q3 = z[:6]
    return np.array([
        [q1, q0, 0, p1, p0, 0],
        [0, q3, -q1, 0, -p3, p1],
        [q3, 0, q0, p3, 0, p0],
    ], dtype=complex)


def lie_poisson_tensor(x: np.ndarray) -> np.ndarray:
    """Π_αβ = {X_α, X_β}."""
    x1, x2, x3 = x
    return np.array([
        [0, -x3, -x2],
        [x3, 0, -x1],
        [x2, x1, 0],
    ], dtype=complex)


# ── Operations ────────────────────────────────────────────────────────────────

def collective_spin(pt: PhasePoint) -> SpinVector:
    return SpinVector.from_array(spin_array(pt.as_array()))


def casimir(X: SpinVector) -> complex:
    return X.X1 * X.X1 - X.X2 * X.X2 + X.X3 * X.X3


def pairing(a: SpinVector, b: SpinVector) -> complex:
    """(A, B) = A1B1 − A2B2 + A3B3 = ½tr(spin_matrix(A)·spin_matrix(B))."""
    return complex(np.sum(PAIRING * a.as_array() * b.as_array()))


def lie_poisson_bracket(grad_f: np.ndarray, grad_g: np.ndarray, X: SpinVector) -> complex:
    """{f, g} = ∇f · Π(X) ∇g for functions of X given their X-gradients."""
    return complex(np.asarray(grad_f) @ lie_poisson_tensor(X.as_array()) @ np.asarray(grad_g))
