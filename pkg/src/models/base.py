"""
src/models/base.py

Shared shape of the three integrable systems as seen by the integrator and
the auditors.

A model flattens its state into one complex array, evaluates its vector
field on that array, re-projects the spin blocks, and names the
observables it wants audited.  Everything model-specific (Hamiltonians,
Lax matrices) stays in the model's own module.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from src.core.phase_space import (
    COORDS,
    RealityClass,
    max_constraint_violation,
    project_coordinates,
    reality_residual_array,
)


@dataclass(frozen=True, eq=False)
class LaxSample:
    z: complex
    L: np.ndarray

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.L))

    @property
    def trace_sq(self) -> complex:
        return complex(np.trace(self.L @ self.L))

    @property
    def det(self) -> complex:
        return complex(np.linalg.det(self.L))


class DynamicalModel(ABC):
    """
    Flat-array view of a model for integration.

    Subclasses set `name`, `cls` and `n_sites` and say where the spin
    blocks live inside the flat array via `spin_offset`.
    """

    name: str = "model"
    cls: RealityClass = RealityClass.COMPLEX_V
    n_sites: int = 1
    spin_offset: int = 0

    # ── state packing ────────────────────────────────────────────────────────

    @abstractmethod
    def pack(self, state: Any) -> np.ndarray: ...

    @abstractmethod
    def unpack(self, z: np.ndarray) -> Any: ...

    def coordinate_labels(self) -> list[str]:
        if self.n_sites == 1:
            return list(COORDS)
        return [f"s{a}_{name}" for a in range(self.n_sites) for name in COORDS]

    def spin_blocks(self, z: np.ndarray) -> np.ndarray:
        return z[self.spin_offset:self.spin_offset + 6 * self.n_sites]

    # ── dynamics ─────────────────────────────────────────────────────────────

    @abstractmethod
    def vector_field(self, z: np.ndarray) -> np.ndarray: ...

    def project(self, z: np.ndarray, tol: float) -> np.ndarray:
        out = np.array(z, dtype=complex)
        for a in range(self.n_sites):
            lo = self.spin_offset + 6 * a
            out[lo:lo + 6] = project_coordinates(out[lo:lo + 6], tol)
        return out

    # ── audit ────────────────────────────────────────────────────────────────

    @abstractmethod
    def observables(self) -> dict[str, Callable[[np.ndarray], complex]]: ...

    @abstractmethod
    def lax(self, z: np.ndarray, spectral: complex) -> LaxSample: ...

    def audit(self, z: np.ndarray) -> dict[str, complex]:
        blocks = self.spin_blocks(z)
        c1_abs, c2_abs = max_constraint_violation(blocks)
        record: dict[str, complex] = {
            "c1_abs": c1_abs,
            "c2_abs": c2_abs,
            "reality_residual": self.reality_residual(z),
        }
        for key, fn in self.observables().items():
            record[key] = complex(fn(z))
        return record

    def reality_residual(self, z: np.ndarray) -> float:
        return reality_residual_array(self.spin_blocks(z), self.cls)

    def describe(self) -> dict:
        return {"model": self.name, "class": self.cls.value}
