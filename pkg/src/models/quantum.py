"""
src/models/quantum.py

Quantum Euler top J1·S1² + J2·S2² + J3·S3² on the spin-l representation.
"""

from dataclasses import dataclass, field

import numpy as np

from src.errors import EigenSolverError, ValidationError
from src.models.top import TopParams


@dataclass(frozen=True)
class TopSpectrum:
    l: float
    eigenvalues: np.ndarray = field(compare=False)
    hermitian: bool = True

    @property
    def dimension(self) -> int:
        return int(round(2 * self.l + 1))

    def to_dict(self) -> dict:
        if self.hermitian:
            values = [float(v) for v in self.eigenvalues]
        else:
            values = [[float(v.real), float(v.imag)] for v in self.eigenvalues]
        return {"l": self.l, "dimension": self.dimension, "hermitian": self.hermitian,
                "eigenvalues": values}


def _check_spin(l: float) -> float:
    two_l = 2 * float(l)
    if two_l < 0 or abs(two_l - round(two_l)) > 1e-12:
        raise ValidationError(f"l must be a non-negative half-integer, got {l}", field="params.l")
    return round(two_l) / 2


def spin_operators(l: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Standard S1, S2, S3 on basis |l, m⟩, m = l, l−1, …, −l."""
    l = _check_spin(l)
    m = l - np.arange(int(round(2 * l)) + 1)
    # ⟨m+1|S+|m⟩ = √(l(l+1) − m(m+1))
    raise_amp = np.sqrt(l * (l + 1) - m[1:] * (m[1:] + 1))
    s_plus = np.diag(raise_amp, k=1).astype(complex)
    s_minus = s_plus.conj().T
    s1 = (s_plus + s_minus) / 2
    s2 = (s_plus - s_minus) / 2j
    s3 = np.diag(m).astype(complex)
    return s1, s2, s3


def quantum_top_spectrum(l: float, params: TopParams) -> TopSpectrum:
    """
    Sorted eigenvalues of the quantum top.  Real J give a Hermitian operator
    (real eigenvalues via eigvalsh); complex J are solved with eigvals and
    flagged non-Hermitian, sorted by real part.
    """
    l = _check_spin(l)
    s1, s2, s3 = spin_operators(l)
    J1, J2, J3 = params.as_array()
    H = J1 * s1 @ s1 + J2 * s2 @ s2 + J3 * s3 @ s3
    try:
        if params.is_real():
            values = np.sort(np.linalg.eigvalsh(H))
            return TopSpectrum(l, values, hermitian=True)
        values = np.linalg.eigvals(H)
    except np.linalg.LinAlgError as e:
        raise EigenSolverError(f"eigen-solver failed for l={l}: {e}") from e
    return TopSpectrum(l, values[np.argsort(values.real, kind="stable")], hermitian=False)
