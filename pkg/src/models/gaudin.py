"""
src/models/gaudin.py

Extended rational SL(2) Gaudin chain on ℂP¹ with n marked points.

Each site a carries a spin phase point (𝒫^a, 𝒬^a) and a mark x_a:

    L(z)       = Σ_a spin_matrix(X_a) / (z − x_a)
    H2^a       = (X_a, X_a)
    H1^a       = Σ_{b≠a} (X_a, X_b) / (x_b − x_a)
    ½tr L(z)²  = Σ_a H2^a/(z − x_a)² − 2·Σ_a H1^a/(z − x_a)

Equations of motion, with w_ab = 1/(x_b − x_a) and S(M) = ½(M + Mᵀ):

    H2^a:  𝒬̇^a = 2(𝒬𝒫𝒬 − X0𝒬)^a,             𝒫̇^a = −2(𝒫𝒬𝒫 − X0𝒫)^a
    H1^a:  𝒬̇^b = w_ab(S(𝒬^a𝒫^a𝒬^b) − X0^a𝒬^b),  𝒫̇^b = −w_ab(S(𝒫^b𝒬^a𝒫^a) − X0^a𝒫^b)
           𝒬̇^a = Σ_b w_ab(S(𝒬^b𝒫^b𝒬^a) − X0^b𝒬^a), 𝒫̇^a = −Σ_b w_ab(S(𝒫^a𝒬^b𝒫^b) − X0^b𝒫^a)

These are the canonical flows ż = {H, z}; the global spin Σ_a X_a is
conserved by every H1^a.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.core.brackets import Observable
from src.core.matrices import site_matrices, spin_matrix, symmetric_coefficients, symmetrize
from src.core.phase_space import PhasePoint, RealityClass, reality_involution, reality_residual
from src.core.spin import PAIRING, SpinVector, collective_spin, spin_array, spin_jacobian
from src.errors import CoincidentMarksError, IndexOutOfRangeError, PoleError, ValidationError
from src.models.base import DynamicalModel, LaxSample

# ½tr L² carries −2·H1^a as the coefficient of (z − x_a)⁻¹.
GAUDIN_RESIDUE_FACTOR: float = -2.0

MARK_TOL: float = 1e-12


class GaudinHamiltonian(str, Enum):
    H2 = "H2"
    H1 = "H1"


def _check_marks(marks) -> None:
    for a in range(len(marks)):
        for b in range(a + 1, len(marks)):
            if abs(marks[a] - marks[b]) < MARK_TOL:
                raise CoincidentMarksError(
                    f"marks {a} and {b} coincide at {marks[a]}", field="params.marks"
                )


@dataclass(frozen=True)
class GaudinState:
    """
    Sites and marks of the chain.  For the real classes a real mark carries
    a site of the class; a conjugate pair (x, x̄) is stored as consecutive
    marks whose second site is the involution image of the first.
    """

    sites: tuple[PhasePoint, ...]
    marks: tuple[complex, ...]
    cls: RealityClass = RealityClass.COMPLEX_V

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(self.sites))
        object.__setattr__(self, "marks", tuple(complex(x) for x in self.marks))
        object.__setattr__(self, "cls", RealityClass(self.cls))
        if not self.sites:
            raise ValidationError("a Gaudin chain needs at least one site", field="initial.sites")
        if len(self.sites) != len(self.marks):
            raise ValidationError(
                f"{len(self.sites)} sites but {len(self.marks)} marks", field="params.marks"
            )
        _check_marks(self.marks)

    @property
    def n(self) -> int:
        return len(self.sites)

    def as_array(self) -> np.ndarray:
        return np.concatenate([s.as_array() for s in self.sites])


# ── Spins, Hamiltonians, Lax ──────────────────────────────────────────────────

def gaudin_spins(state: GaudinState) -> list[SpinVector]:
    return [collective_spin(site) for site in state.sites]


def gaudin_global_moment(state: GaudinState) -> SpinVector:
    """Σ_a X_a; generates the diagonal SL(2) action."""
    return SpinVector.from_array(sum(X.as_array() for X in gaudin_spins(state)))


def _hamiltonians_x(xs: np.ndarray, marks) -> tuple[np.ndarray, np.ndarray]:
    """H2, H1 from an (n, 3) spin array."""
    gram = (xs * PAIRING) @ xs.T
    n = len(marks)
    h1 = np.zeros(n, dtype=complex)
    for a in range(n):
        for b in range(n):
            if b != a:
                h1[a] += gram[a, b] / (marks[b] - marks[a])
    return np.diag(gram).copy(), h1


def gaudin_hamiltonians(state: GaudinState) -> tuple[list[complex], list[complex]]:
    xs = np.array([X.as_array() for X in gaudin_spins(state)])
    h2, h1 = _hamiltonians_x(xs, state.marks)
    return [complex(h) for h in h2], [complex(h) for h in h1]


def _h1_gradient(z: np.ndarray, marks, a: int) -> np.ndarray:
    blocks = np.asarray(z, dtype=complex).reshape(-1, 6)
    xs = np.array([spin_array(b) for b in blocks])
    grad_x = np.zeros_like(xs)
    for b in range(len(marks)):
        if b == a:
            continue
        w = 1 / (marks[b] - marks[a])
        grad_x[a] += w * PAIRING * xs[b]
        grad_x[b] += w * PAIRING * xs[a]
    return np.concatenate([grad_x[b] @ spin_jacobian(blocks[b]) for b in range(len(blocks))])


def gaudin_observable(which: GaudinHamiltonian, a: int, marks) -> Observable:
    """H2^a or H1^a as an observable on the flat 6·n array, with exact gradient."""
    which = GaudinHamiltonian(which)
    marks = tuple(complex(x) for x in marks)
    if not 0 <= a < len(marks):
        raise IndexOutOfRangeError(f"site index {a} outside 0..{len(marks) - 1}", field="params.site")

    def spins(z):
        return np.array([spin_array(b) for b in np.asarray(z).reshape(-1, 6)])

    if which is GaudinHamiltonian.H2:
        def grad_h2(z):
            blocks = np.asarray(z, dtype=complex).reshape(-1, 6)
            out = np.zeros(blocks.shape, dtype=complex)
            out[a] = 2 * PAIRING * spin_array(blocks[a]) @ spin_jacobian(blocks[a])
            return out.reshape(-1)

        return Observable(f"H2_{a}", lambda z: _hamiltonians_x(spins(z), marks)[0][a], grad_h2)
    return Observable(f"H1_{a}", lambda z: _hamiltonians_x(spins(z), marks)[1][a],
                      lambda z: _h1_gradient(z, marks, a))


def gaudin_lax(state: GaudinState, z: complex) -> LaxSample:
    for a, x in enumerate(state.marks):
        if abs(z - x) < MARK_TOL:
            raise PoleError(f"L(z) has a pole at mark {a} (x={x})")
    L = sum(spin_matrix(X) / (z - x) for X, x in zip(gaudin_spins(state), state.marks))
    return LaxSample(complex(z), np.asarray(L, dtype=complex))


# ── Equations of motion ───────────────────────────────────────────────────────

def _site_rates(Qa, Pa, Qb, Pb, x0b) -> tuple[np.ndarray, np.ndarray]:
    """Rates of site a under the pair function (X_a, X_b), as matrices."""
    q_dot = symmetrize(Qb @ Pb @ Qa) - x0b * Qa
    p_dot = -(symmetrize(Pa @ Qb @ Pb) - x0b * Pa)
    return q_dot, p_dot


def _gaudin_field(z: np.ndarray, marks, a: int, which: GaudinHamiltonian) -> np.ndarray:
    blocks = np.asarray(z, dtype=complex).reshape(-1, 6)
    n = blocks.shape[0]
    mats = [site_matrices(b) for b in blocks]          # (𝒫, 𝒬) per site
    x0 = [complex(np.trace(Q @ P)) / 2 for P, Q in mats]
    out = np.zeros_like(blocks)

    def put(site, q_dot, p_dot):
        out[site, :3] += symmetric_coefficients(p_dot)
        out[site, 3:] += symmetric_coefficients(q_dot)

    Pa, Qa = mats[a]
    if which is GaudinHamiltonian.H2:
        q_dot, p_dot = _site_rates(Qa, Pa, Qa, Pa, x0[a])
        put(a, 2 * q_dot, 2 * p_dot)
        return out.reshape(-1)

    for b in range(n):
        if b == a:
            continue
        w = 1 / (marks[b] - marks[a])
        Pb, Qb = mats[b]
        q_dot, p_dot = _site_rates(Qa, Pa, Qb, Pb, x0[b])
        put(a, w * q_dot, w * p_dot)
        q_dot, p_dot = _site_rates(Qb, Pb, Qa, Pa, x0[a])
        put(b, w * q_dot, w * p_dot)
    return out.reshape(-1)


def gaudin_vector_field(state: GaudinState, a: int, which: GaudinHamiltonian) -> np.ndarray:
    """Tangent of every site, shape (n, 6), under H2^a or H1^a."""
    if not 0 <= a < state.n:
        raise IndexOutOfRangeError(f"site index {a} outside 0..{state.n - 1}", field="params.site")
    field = _gaudin_field(state.as_array(), state.marks, a, GaudinHamiltonian(which))
    return field.reshape(state.n, 6)


# ── Reality ───────────────────────────────────────────────────────────────────

def gaudin_reality_residual(state: GaudinState) -> float:
    """
    Worst violation of the real structure: real marks must carry sites of
    the class, a conjugate pair (x_a, x_{a+1} = x̄_a) must satisfy
    site_{a+1} = ι(site_a).  Zero for ComplexV.
    """
    if state.cls is RealityClass.COMPLEX_V:
        return 0.0
    worst = 0.0
    a = 0
    while a < state.n:
        x = state.marks[a]
        if abs(x.imag) < MARK_TOL:
            worst = max(worst, reality_residual(state.sites[a]))
            a += 1
            continue
        if a + 1 >= state.n or abs(state.marks[a + 1] - np.conj(x)) > MARK_TOL:
            raise ValidationError(f"mark {a} has no conjugate partner", field="params.marks")
        image = reality_involution(state.sites[a]).as_array()
        worst = max(worst, float(np.max(np.abs(state.sites[a + 1].as_array() - image))))
        a += 2
    return worst


# ── Integrator view ───────────────────────────────────────────────────────────

class GaudinModel(DynamicalModel):
    name = "gaudin"

    def __init__(self, marks, site: int = 0, which: GaudinHamiltonian = GaudinHamiltonian.H1,
                 cls: RealityClass = RealityClass.COMPLEX_V):
        self.marks = tuple(complex(x) for x in marks)
        _check_marks(self.marks)
        self.n_sites = len(self.marks)
        if not 0 <= site < self.n_sites:
            raise IndexOutOfRangeError(f"site index {site} outside 0..{self.n_sites - 1}",
                                       field="params.site")
        self.site = site
        self.which = GaudinHamiltonian(which)
        self.cls = RealityClass(cls)

    def pack(self, state: GaudinState) -> np.ndarray:
        return state.as_array()

    def unpack(self, z: np.ndarray) -> GaudinState:
        blocks = np.asarray(z, dtype=complex).reshape(-1, 6)
        return GaudinState(tuple(PhasePoint.from_array(b, self.cls) for b in blocks), self.marks, self.cls)

    def vector_field(self, z: np.ndarray) -> np.ndarray:
        return _gaudin_field(z, self.marks, self.site, self.which)

    def _spins(self, z: np.ndarray) -> np.ndarray:
        return np.array([spin_array(b) for b in np.asarray(z).reshape(-1, 6)])

    def observables(self):
        obs = {}
        for a in range(self.n_sites):
            obs[f"H2_{a}"] = lambda z, a=a: complex(_hamiltonians_x(self._spins(z), self.marks)[0][a])
            obs[f"H1_{a}"] = lambda z, a=a: complex(_hamiltonians_x(self._spins(z), self.marks)[1][a])
        for k in range(3):
            obs[f"moment_{k + 1}"] = lambda z, k=k: complex(self._spins(z)[:, k].sum())
        return obs

    def lax(self, z: np.ndarray, spectral: complex) -> LaxSample:
        return gaudin_lax(self.unpack(z), spectral)

    def reality_residual(self, z: np.ndarray) -> float:
        return gaudin_reality_residual(self.unpack(z))

    def describe(self) -> dict:
        return {**super().describe(),
                "marks": [[x.real, x.imag] for x in self.marks],
                "hamiltonian": {"site": self.site, "kind": self.which.value}}
