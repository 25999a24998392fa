"""
src/tools/elliptic.py

Theta, Kronecker and Weierstrass functions on the torus Σ_τ = ℂ/(ℤ + τℤ).

Every evaluation goes through one truncated series,

    ϑ(z) = Σ_n (−1)^n exp(πiτ(n + ½)² + 2πinz),

and its term-wise derivatives.  Terms are summed in pairs (n, −n−1), which
cancel exactly at z = 0, walking outward until a pair drops below
trunc_tol times the running sum of magnitudes.  Each term is one
exponential, so points far from the real axis (z + τ with Im τ ≈ 2) stay
finite.

Derived functions:
  kronecker_phi  φ(u,z) = ϑ(u+z)ϑ'(0) / (ϑ(u)ϑ(z))
  wp             ℘(z)   = −(log ϑ)''(z) + c,   c fixed so ℘ − 1/z² → 0
  wp_prime       ℘'(z)  = −(log ϑ)'''(z)
  phi_alpha      ϕ_1 = φ(½,z),  ϕ_2 = e^{πiz}φ((1+τ)/2,z),  ϕ_3 = e^{πiz}φ(τ/2,z)

Usage:
    from src.tools.elliptic import EllipticCurve, wp
    curve = EllipticCurve(1j)
    wp(0.3 + 0.1j, curve)
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from src.config import MAX_TERMS, MIN_TERMS, POLE_GUARD, TRUNC_TOL
from src.errors import IndexOutOfRangeError, PoleError, TruncationError, ValidationError

logger = logging.getLogger(__name__)

# Unit-modulus prefactors on ϕ_α.  Fixed by requiring the top Lax operator
# to satisfy both twisted quasi-periodicities with Res_{z=0} L equal to the
# spin matrix; see src/models/lax_calibration.py, which re-derives them.
PHI_PHASES: dict[int, complex] = {1: 1 + 0j, 2: 1 + 0j, 3: 1 + 0j}


# ── Curve ─────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class EllipticCurve:
    """
    Modular parameter plus the series-truncation policy.

    ϑ'(0), ϑ''(0), ϑ'''(0) and the ℘ additive constant are computed once
    at construction; the instance is immutable afterwards.
    """

    tau: complex
    trunc_tol: float = TRUNC_TOL
    max_terms: int = MAX_TERMS

    _signs: np.ndarray = field(init=False, repr=False, compare=False)
    _gauss_exponent: np.ndarray = field(init=False, repr=False, compare=False)
    _jet0: np.ndarray = field(init=False, repr=False, compare=False)
    _wp_shift: complex = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        tau = complex(self.tau)
        if not tau.imag > 0:
            raise ValidationError(f"Im(tau) must be positive, got {tau.imag}", field="curve.tau_im")
        if not 0 < self.trunc_tol <= 1e-6:
            raise ValidationError(
                f"trunc_tol must lie in (0, 1e-6], got {self.trunc_tol}", field="curve.trunc_tol"
            )
        if int(self.max_terms) < 16:
            raise ValidationError(
                f"max_terms must be at least 16, got {self.max_terms}", field="curve.max_terms"
            )
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "max_terms", int(self.max_terms))

        # Kept as an exponent: exp(πiτ(k+½)²) underflows long before the
        # z-dependent factor stops overflowing.
        k = np.arange(self.max_terms, dtype=float)
        object.__setattr__(self, "_signs", np.where(k % 2 == 0, 1.0, -1.0))
        object.__setattr__(self, "_gauss_exponent", 1j * np.pi * tau * (k + 0.5) ** 2)

        jet0 = _theta_jet(0j, self, 3)
        object.__setattr__(self, "_jet0", jet0)
        d1, d2, d3 = jet0[1], jet0[2], jet0[3]
        object.__setattr__(self, "_wp_shift", complex(d3 / (3 * d1) - (d2 / (2 * d1)) ** 2))
        logger.debug("curve tau=%s: theta'(0)=%s, wp shift=%s", tau, d1, self._wp_shift)

    @classmethod
    def from_parts(cls, tau_re: float, tau_im: float, **kwargs) -> "EllipticCurve":
        return cls(complex(tau_re, tau_im), **kwargs)

    @property
    def dtheta0(self) -> complex:
        """ϑ'(0) from the term-wise differentiated series."""
        return complex(self._jet0[1])

    @property
    def wp_shift(self) -> complex:
        """Additive constant c in ℘ = −(log ϑ)'' + c."""
        return self._wp_shift

    @property
    def half_periods(self) -> tuple[complex, complex, complex]:
        """(ω_1, ω_2, ω_3) = (½, (1+τ)/2, τ/2)."""
        return 0.5 + 0j, (1 + self.tau) / 2, self.tau / 2

    def to_dict(self) -> dict:
        return {"tau_re": self.tau.real, "tau_im": self.tau.imag}


@dataclass(frozen=True)
class HalfPeriodValues:
    """℘ at the three half-periods: e1 = ℘(½), e2 = ℘((1+τ)/2), e3 = ℘(τ/2)."""

    e1: complex
    e2: complex
    e3: complex

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return self.e1, self.e2, self.e3


# ── Theta series ──────────────────────────────────────────────────────────────

def _theta_jet(z: complex, curve: EllipticCurve, max_order: int) -> np.ndarray:
    """
    Return [ϑ(z), ϑ'(z), …, ϑ^(max_order)(z)] from one truncated sweep.

    The stopping rule watches the highest derivative, whose terms decay
    slowest.  A pair stops the sweep once its magnitude is at most
    trunc_tol times the summed magnitudes of all pairs so far, not the
    modulus of the partial sum: the pairs cancel to zero at the lattice
    points, where a partial-sum test could never fire.  Raises
    TruncationError if no pair below max_terms qualifies.
    """
    z = complex(z)
    k = np.arange(curve.max_terms, dtype=float)
    plus = curve._signs * np.exp(curve._gauss_exponent + 2j * np.pi * k * z)
    minus = -curve._signs * np.exp(curve._gauss_exponent - 2j * np.pi * (k + 1) * z)
    d_plus = 2j * np.pi * k
    d_minus = -2j * np.pi * (k + 1)

    pairs = []
    w_plus, w_minus = plus, minus
    for order in range(max_order + 1):
        if order > 0:
            w_plus = w_plus * d_plus
            w_minus = w_minus * d_minus
        pairs.append(w_plus + w_minus)

    mags = np.abs(w_plus) + np.abs(w_minus)
    if not np.all(np.isfinite(mags)):
        raise TruncationError(f"theta series overflowed at z={z}, tau={curve.tau}")
    running = np.cumsum(mags)
    done = np.nonzero((mags <= curve.trunc_tol * running) & (k >= MIN_TERMS - 1))[0]
    if done.size == 0:
        raise TruncationError(
            f"theta series did not converge in {curve.max_terms} terms "
            f"(z={z}, tau={curve.tau}, tol={curve.trunc_tol})"
        )
    cut = done[0] + 1
    return np.array([p[:cut].sum() for p in pairs], dtype=complex)


def theta(z: complex, curve: EllipticCurve) -> complex:
    """ϑ(z); vanishes at the lattice points and is 1-periodic."""
    return complex(_theta_jet(z, curve, 0)[0])


def theta_derivative(z: complex, curve: EllipticCurve, order: int) -> complex:
    """d^order ϑ / dz^order for order in 0..3."""
    if order not in (0, 1, 2, 3):
        raise IndexOutOfRangeError(f"derivative order must be 0..3, got {order}", field="order")
    return complex(_theta_jet(z, curve, order)[order])


def _guard(value: complex, curve: EllipticCurve, where: str) -> None:
    if abs(value) < POLE_GUARD * abs(curve.dtheta0):
        raise PoleError(f"{where} is a lattice point of tau={curve.tau}")


# ── Kronecker and Weierstrass ─────────────────────────────────────────────────

def kronecker_phi(u: complex, z: complex, curve: EllipticCurve) -> complex:
    """
    φ(u,z) = ϑ(u+z)ϑ'(0) / (ϑ(u)ϑ(z)).

    Simple pole at z = 0 with residue 1; φ(u,z+1) = φ(u,z) and
    φ(u,z+τ) = e^{−2πiu}φ(u,z).
    """
    t_u = theta(u, curve)
    _guard(t_u, curve, f"u={u}")
    t_z = theta(z, curve)
    _guard(t_z, curve, f"z={z}")
    return complex(theta(complex(u) + complex(z), curve) * curve.dtheta0 / (t_u * t_z))


def wp(z: complex, curve: EllipticCurve) -> complex:
    """Weierstrass ℘, Laurent-normalized: ℘(z) = 1/z² + O(z²)."""
    t0, t1, t2 = _theta_jet(z, curve, 2)
    _guard(t0, curve, f"z={z}")
    lg = t1 / t0
    return complex(lg * lg - t2 / t0 + curve.wp_shift)


def wp_prime(z: complex, curve: EllipticCurve) -> complex:
    """℘'(z) = −(log ϑ)'''(z)."""
    t0, t1, t2, t3 = _theta_jet(z, curve, 3)
    _guard(t0, curve, f"z={z}")
    lg = t1 / t0
    return complex(-(t3 / t0 - 3 * lg * t2 / t0 + 2 * lg ** 3))


def half_period_wp(curve: EllipticCurve) -> HalfPeriodValues:
    w1, w2, w3 = curve.half_periods
    return HalfPeriodValues(wp(w1, curve), wp(w2, curve), wp(w3, curve))


def phi_alpha(alpha: int, z: complex, curve: EllipticCurve) -> complex:
    """
    Twisted Kronecker functions feeding the top Lax operator.

    ϕ_α(z)² = ℘(z) − ℘(ω_α).  Multipliers under (z+1, z+τ):
    ϕ_1 (+1, −1), ϕ_2 (−1, −1), ϕ_3 (−1, +1).
    """
    if alpha not in (1, 2, 3):
        raise IndexOutOfRangeError(f"alpha must be 1, 2 or 3, got {alpha}", field="alpha")
    omega = curve.half_periods[alpha - 1]
    value = kronecker_phi(omega, z, curve)
    if alpha != 1:
        value *= np.exp(1j * np.pi * complex(z))
    return complex(PHI_PHASES[alpha] * value)


# ── Diagnostics ───────────────────────────────────────────────────────────────

def laurent_constant_richardson(curve: EllipticCurve, levels: int = 5) -> complex:
    """
    Richardson estimate of the ℘ additive constant.

    Extrapolates (log ϑ)''(h) + 1/h² → c along h = 0.1·2^{−k}; the error
    expansion is in powers of h², so each column eliminates one of them.
    Reported next to `curve.wp_shift` in the calibration report.
    """
    hs = 0.1 * 2.0 ** -np.arange(levels)
    table = np.zeros((levels, levels), dtype=complex)
    for i, h in enumerate(hs):
        t0, t1, t2 = _theta_jet(h, curve, 2)
        table[i, 0] = (t2 / t0 - (t1 / t0) ** 2) + 1 / h ** 2
    for j in range(1, levels):
        factor = 4.0 ** j
        for i in range(j, levels):
            table[i, j] = (factor * table[i, j - 1] - table[i - 1, j - 1]) / (factor - 1)
    return complex(table[levels - 1, levels - 1])


def wp_lattice_sum(z: complex, tau: complex, n_rows: int = 30) -> complex:
    """
    ℘ from its lattice sum, independent of the theta series.

    Each row ω = m + nτ is summed in closed form,
    Σ_m (w − m)⁻² = π²/sin²(πw), so the rows decay like e^{−2π|n|Im τ}.
    """
    z, tau = complex(z), complex(tau)
    total = np.pi ** 2 / np.sin(np.pi * z) ** 2 - np.pi ** 2 / 3
    for n in range(1, n_rows + 1):
        for shift in (n * tau, -n * tau):
            total += np.pi ** 2 / np.sin(np.pi * (z - shift)) ** 2 - np.pi ** 2 / np.sin(np.pi * shift) ** 2
    return complex(total)
