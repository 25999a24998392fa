"""
src/core/matrices.py

2×2 matrix realization of the spin phase space.

Each site is a pair of complex symmetric matrices

    𝒬 = q0σ0 + q1σ1 + q3σ3,    𝒫 = p0σ0 + p1σ1 + p3σ3,

with 𝒬𝒫 = X0σ0 + X1σ1 + iX2σ2 + X3σ3.  The reduction picture writes
𝒫 = g⁻¹ζ(gᵀ)⁻¹, 𝒬 = gᵀg and X = 𝒫𝒬 = g⁻¹ζg; that product is the
transpose of 𝒬𝒫, so its σ2 coefficient (the sign of X2) is flipped.
det and tr of powers do not see the difference.
"""

from dataclasses import dataclass

import numpy as np

from src.config import DET_GUARD
from src.core.spin import SpinVector
from src.errors import SingularMatrixError, ValidationError

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
E12 = np.array([[0, 1], [0, 0]], dtype=complex)
E21 = np.array([[0, 0], [1, 0]], dtype=complex)


@dataclass(frozen=True, eq=False)
class MatrixPair:
    P: np.ndarray
    Q: np.ndarray
    X: np.ndarray


def spin_matrix(X: SpinVector) -> np.ndarray:
    """X1σ1 + iX2σ2 + X3σ3 = [[X3, X1+X2], [X1−X2, −X3]]."""
    return np.array([[X.X3, X.X1 + X.X2], [X.X1 - X.X2, -X.X3]], dtype=complex)


def symmetric_matrix(c: np.ndarray) -> np.ndarray:
    """c0σ0 + c1σ1 + c3σ3 for c = (c0, c1, c3)."""
    return c[0] * SIGMA0 + c[1] * SIGMA1 + c[2] * SIGMA3


def symmetric_coefficients(m: np.ndarray) -> np.ndarray:
    """(½tr m, ½tr mσ1, ½tr mσ3); inverse of symmetric_matrix on symmetric m."""
    return 0.5 * np.array([np.trace(m), np.trace(m @ SIGMA1), np.trace(m @ SIGMA3)], dtype=complex)


def site_matrices(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(𝒫, 𝒬) of one (p0,p1,p3,q0,q1,q3) block."""
    return symmetric_matrix(z[:3]), symmetric_matrix(z[3:6])


def symmetrize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.T)


def _check_invertible(g: np.ndarray) -> None:
    if abs(np.linalg.det(g)) < DET_GUARD:
        raise SingularMatrixError(f"group element is singular (det={np.linalg.det(g):.3g})")


def pq_decompose(g: np.ndarray, zeta: np.ndarray) -> MatrixPair:
    """𝒫 = g⁻¹ζ(gᵀ)⁻¹, 𝒬 = gᵀg, X = 𝒫𝒬 = g⁻¹ζg."""
    g = np.asarray(g, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    _check_invertible(g)
    if not np.allclose(zeta, zeta.T) or abs(np.trace(zeta)) > 1e-12:
        raise ValidationError("zeta must be symmetric and traceless", field="zeta")
    g_inv = np.linalg.inv(g)
    P = g_inv @ zeta @ g_inv.T
    Q = g.T @ g
    return MatrixPair(P=P, Q=Q, X=P @ Q)


def coadjoint_moment(nu: complex, g: np.ndarray) -> np.ndarray:
    """S = g⁻¹·diag(ν, −ν)·g on the coadjoint orbit of diag(ν, −ν)."""
    g = np.asarray(g, dtype=complex)
    _check_invertible(g)
    return np.linalg.inv(g) @ np.diag([nu, -nu]).astype(complex) @ g
