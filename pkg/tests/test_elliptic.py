"""
tests/test_elliptic.py

Theta, Kronecker and Weierstrass functions on the torus.

Pure numerics: identities are sampled with hypothesis on the fundamental
parallelogram, away from the lattice.

Run: pytest tests/test_elliptic.py -v -s
"""

import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.errors import IndexOutOfRangeError, PoleError, TruncationError, ValidationError
from src.tools.elliptic import (
    EllipticCurve,
    half_period_wp,
    kronecker_phi,
    laurent_constant_richardson,
    phi_alpha,
    theta,
    theta_derivative,
    wp,
    wp_lattice_sum,
    wp_prime,
)

TAUS = [1j, 0.2 + 0.8j, 0.5 + 1.3j]
CURVES = {tau: EllipticCurve(tau) for tau in TAUS}

# Points a + bτ with a, b in [0.05, 0.95]
coord = st.floats(min_value=0.05, max_value=0.95)
tau_choice = st.sampled_from(TAUS)


def _point(tau, a, b):
    return a + b * tau


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1.0)


# ── Curve construction ────────────────────────────────────────────────────────

def test_curve_rejects_lower_half_plane():
    with pytest.raises(ValidationError) as exc:
        EllipticCurve(0.1 - 1j)
    assert exc.value.field == "curve.tau_im"


def test_curve_rejects_loose_truncation():
    with pytest.raises(ValidationError):
        EllipticCurve(1j, trunc_tol=1e-3)
    with pytest.raises(ValidationError):
        EllipticCurve(1j, max_terms=4)


def test_from_parts_and_to_dict():
    curve = EllipticCurve.from_parts(0.2, 0.8)
    assert curve.tau == 0.2 + 0.8j
    assert curve.to_dict() == {"tau_re": 0.2, "tau_im": 0.8}


def test_truncation_error_when_terms_too_few():
    # With Im τ tiny the Gaussian factors barely decay.
    with pytest.raises(TruncationError):
        EllipticCurve(0.001j, max_terms=16)


# ── Theta ─────────────────────────────────────────────────────────────────────

@pytest.mark.parametrize("tau", TAUS)
def test_theta_vanishes_at_zero(tau):
    assert abs(theta(0j, CURVES[tau])) < 1e-12


@pytest.mark.parametrize("tau", TAUS)
def test_theta_reflection(tau):
    """n → −n−1 in the series gives ϑ(−z) = −e^{2πiz}ϑ(z); ϑ itself is not odd."""
    curve = CURVES[tau]
    z = 0.31 + 0.17 * tau
    assert _rel(theta(-z, curve), -np.exp(2j * np.pi * z) * theta(z, curve)) < 1e-11


@settings(max_examples=100, deadline=None)
@given(tau=tau_choice, a=coord, b=coord)
def test_theta_is_one_periodic(tau, a, b):
    curve = CURVES[tau]
    z = _point(tau, a, b)
    assert _rel(theta(z + 1, curve), theta(z, curve)) < 1e-10


def test_theta_derivative_matches_difference():
    curve = CURVES[1j]
    z, h = 0.23 + 0.41j, 1e-6
    fd = (theta(z + h, curve) - theta(z - h, curve)) / (2 * h)
    assert _rel(theta_derivative(z, curve, 1), fd) < 1e-8


def test_theta_derivative_order_out_of_range():
    with pytest.raises(IndexOutOfRangeError):
        theta_derivative(0.1, CURVES[1j], 4)


# ── Kronecker function ────────────────────────────────────────────────────────

@settings(max_examples=100, deadline=None)
@given(tau=tau_choice, a=coord, b=coord, c=coord, d=coord)
def test_kronecker_quasi_periodicity(tau, a, b, c, d):
    curve = CURVES[tau]
    u, z = _point(tau, a, b), _point(tau, c, d)
    base = kronecker_phi(u, z, curve)
    assert _rel(kronecker_phi(u, z + 1, curve), base) < 1e-9
    assert _rel(kronecker_phi(u, z + tau, curve), np.exp(-2j * np.pi * u) * base) < 1e-9


@settings(max_examples=100, deadline=None)
@given(tau=tau_choice, a=coord, b=coord, c=coord, d=coord)
def test_kronecker_product_is_wp_difference(tau, a, b, c, d):
    curve = CURVES[tau]
    u, z = _point(tau, a, b), _point(tau, c, d)
    lhs = kronecker_phi(u, z, curve) * kronecker_phi(-u, z, curve)
    assert _rel(lhs, wp(z, curve) - wp(u, curve)) < 1e-9


def test_kronecker_residue_at_zero():
    curve = CURVES[0.2 + 0.8j]
    u = 0.3 + 0.2j
    assert abs(1e-6 * kronecker_phi(u, 1e-6, curve) - 1) < 1e-4


def test_kronecker_pole_in_u_raises():
    with pytest.raises(PoleError):
        kronecker_phi(0.0, 0.3, CURVES[1j])


# ── Weierstrass ℘ ─────────────────────────────────────────────────────────────

@pytest.mark.parametrize("tau", TAUS)
def test_wp_laurent_normalization(tau):
    curve = CURVES[tau]
    z = 1e-3
    assert abs(z * z * wp(z, curve) - 1) < 1e-4


@settings(max_examples=100, deadline=None)
@given(tau=tau_choice, a=coord, b=coord)
def test_wp_even_and_periodic(tau, a, b):
    curve = CURVES[tau]
    z = _point(tau, a, b)
    value = wp(z, curve)
    assert _rel(wp(-z, curve), value) < 1e-9
    assert _rel(wp(z + 1, curve), value) < 1e-9
    assert _rel(wp(z + tau, curve), value) < 1e-9


@pytest.mark.parametrize("tau", TAUS)
def test_half_period_values_sum_to_zero(tau):
    e = half_period_wp(CURVES[tau]).as_tuple()
    assert abs(sum(e)) < 1e-9


@pytest.mark.parametrize("tau", TAUS)
def test_half_period_values_match_lattice_sum(tau):
    curve = CURVES[tau]
    for e, omega in zip(half_period_wp(curve).as_tuple(), curve.half_periods):
        assert _rel(e, wp_lattice_sum(omega, tau)) < 1e-9


def test_square_lattice_half_period_values():
    """τ = i: e2 = 0 and e1 = −e3 > 0 by the square symmetry."""
    e1, e2, e3 = half_period_wp(CURVES[1j]).as_tuple()
    assert abs(e2) < 1e-9
    assert abs(e1 + e3) < 1e-9
    assert e1.real > 0 and abs(e1.imag) < 1e-9


def test_wp_prime_differential_equation():
    """(℘')² = 4(℘ − e1)(℘ − e2)(℘ − e3)."""
    curve = CURVES[0.5 + 1.3j]
    e1, e2, e3 = half_period_wp(curve).as_tuple()
    z = 0.27 + 0.33j
    p = wp(z, curve)
    assert _rel(wp_prime(z, curve) ** 2, 4 * (p - e1) * (p - e2) * (p - e3)) < 1e-9


def test_wp_prime_is_odd():
    curve = CURVES[1j]
    z = 0.37 - 0.08j
    assert _rel(wp_prime(-z, curve), -wp_prime(z, curve)) < 1e-10


def test_wp_pole_raises():
    with pytest.raises(PoleError):
        wp(1.0, CURVES[1j])


def test_richardson_constant_agrees_with_series_constant():
    curve = CURVES[1j]
    assert abs(laurent_constant_richardson(curve) - curve.wp_shift) < 1e-6


# ── Far from the real axis ────────────────────────────────────────────────────

def test_wp_finite_two_periods_up():
    curve = CURVES[1j]
    near = wp(0.3 + 0.4j, curve)
    far = wp(0.3 + 2.4j, curve)
    assert np.isfinite(far)
    assert _rel(far, near) < 1e-9
    assert _rel(far, wp_lattice_sum(0.3 + 2.4j, 1j)) < 1e-9


def test_kronecker_shift_on_tall_curve():
    tau = 0.2 + 2j
    curve = EllipticCurve(tau)
    u, z = 0.2 + 0.1j, 0.37
    shifted = kronecker_phi(u, z + tau, curve)
    assert _rel(shifted, np.exp(-2j * np.pi * u) * kronecker_phi(u, z, curve)) < 1e-9


@pytest.mark.parametrize("z", [0.25 + 2.1j, 0.6 - 2.3j, -0.4 + 3.0j])
def test_theta_one_periodic_at_large_imaginary_part(z):
    curve = CURVES[0.2 + 0.8j]
    value = theta(z, curve)
    assert np.isfinite(value)
    assert abs(theta(z + 1, curve) - value) <= 1e-9 * abs(value)


# ── Twisted functions ϕ_α ─────────────────────────────────────────────────────

@settings(max_examples=100, deadline=None)
@given(tau=tau_choice, a=coord, b=coord, alpha=st.sampled_from([1, 2, 3]))
def test_phi_alpha_squares(tau, a, b, alpha):
    curve = CURVES[tau]
    z = _point(tau, a, b)
    e = half_period_wp(curve).as_tuple()[alpha - 1]
    assert _rel(phi_alpha(alpha, z, curve) ** 2, wp(z, curve) - e) < 1e-9


@pytest.mark.parametrize("alpha, shift_1, shift_tau", [(1, 1, -1), (2, -1, -1), (3, -1, 1)])
def test_phi_alpha_multipliers(alpha, shift_1, shift_tau):
    tau = 0.2 + 0.8j
    curve = CURVES[tau]
    z = 0.31 + 0.17j
    base = phi_alpha(alpha, z, curve)
    assert _rel(phi_alpha(alpha, z + 1, curve), shift_1 * base) < 1e-9
    assert _rel(phi_alpha(alpha, z + tau, curve), shift_tau * base) < 1e-9


def test_phi_alpha_real_on_rectangular_real_line():
    curve = CURVES[1j]
    for alpha in (1, 2, 3):
        for x in (0.1, 0.37, 0.8):
            assert abs(phi_alpha(alpha, x, curve).imag) < 1e-10


def test_phi_alpha_label_checked():
    with pytest.raises(IndexOutOfRangeError):
        phi_alpha(4, 0.3, CURVES[1j])
    print("✅ elliptic label guard")
