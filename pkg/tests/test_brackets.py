"""
tests/test_brackets.py

Tests the canonical and Dirac brackets on the spin phase space.

Points are drawn with hypothesis-chosen seeds through the class-respecting
sampler, so every check runs on genuinely on-shell data.

Run: pytest tests/test_brackets.py -v -s
"""

import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.core.brackets import (
    Observable,
    canonical_bracket,
    casimir_observable,
    constraint_observable,
    coordinate,
    dirac_bracket,
    hamiltonian_field,
    jacobi_residual,
    spin_component,
)
from src.core.phase_space import ETA, PhasePoint, RealityClass
from src.core.spin import spin_array
from src.errors import OffShellError, ValidationError
from src.flow.sampling import sample_onshell

P = [coordinate(name) for name in ("p0", "p1", "p3")]
Q = [coordinate(name) for name in ("q0", "q1", "q3")]
X = [spin_component(a) for a in (1, 2, 3)]
C = [constraint_observable(1), constraint_observable(2)]

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
classes = st.sampled_from(list(RealityClass))


def _point(seed: int, cls: RealityClass = RealityClass.COMPLEX_V) -> PhasePoint:
    return sample_onshell(np.random.default_rng(seed), cls, p_radius=1.0, s_max=1.0)


# ── Canonical bracket ─────────────────────────────────────────────────────────

def test_canonical_pairs():
    z = PhasePoint(0.1, 0.2, 0.3, 1.0, 0.0, 0.0)
    for j in range(3):
        for k in range(3):
            assert canonical_bracket(P[j], Q[k], z) == (1 if j == k else 0)
            assert canonical_bracket(Q[j], P[k], z) == -(1 if j == k else 0)
            assert canonical_bracket(P[j], P[k], z) == 0


def test_hamiltonian_field_convention():
    """ż = {H, z}: H = q0 pushes p0 down, H = p1 moves q1 forward."""
    grad = np.zeros(6)
    grad[3] = 1.0
    assert np.array_equal(hamiltonian_field(grad), [-1, 0, 0, 0, 0, 0])
    grad = np.zeros(6)
    grad[1] = 1.0
    assert np.array_equal(hamiltonian_field(grad), [0, 0, 0, 0, 1, 0])


@settings(max_examples=50, deadline=None)
@given(seed=seeds, cls=classes)
def test_spin_commutes_with_constraints(seed, cls):
    pt = _point(seed, cls)
    for x in X:
        for c in C:
            assert abs(canonical_bracket(x, c, pt)) < 1e-12


@settings(max_examples=50, deadline=None)
@given(seed=seeds, cls=classes)
def test_constraint_bracket_is_minus_two(seed, cls):
    pt = _point(seed, cls)
    assert abs(canonical_bracket(C[0], C[1], pt) + 2) < 1e-11


def test_numeric_gradient_matches_analytic():
    pt = _point(5)
    x1 = spin_component(1)
    numeric = Observable("X1_fd", lambda z: spin_array(z)[0])
    assert np.allclose(numeric.gradient(pt), x1.gradient(pt), atol=1e-8)


# ── Dirac bracket ─────────────────────────────────────────────────────────────

@settings(max_examples=50, deadline=None)
@given(seed=seeds, cls=classes)
def test_dirac_coordinate_table(seed, cls):
    pt = _point(seed, cls)
    p, q = pt.p, pt.q
    for j in range(3):
        for k in range(3):
            assert abs(dirac_bracket(P[j], Q[k], pt) - ((j == k) - ETA[j] * q[j] * q[k])) < 1e-10
            assert abs(dirac_bracket(Q[j], Q[k], pt)) < 1e-10
            expected = ETA[j] * q[j] * p[k] - ETA[k] * q[k] * p[j]
            assert abs(dirac_bracket(P[j], P[k], pt) - expected) < 1e-10


@settings(max_examples=50, deadline=None)
@given(seed=seeds, cls=classes)
def test_dirac_spin_closure(seed, cls):
    pt = _point(seed, cls)
    x1, x2, x3 = spin_array(pt.as_array())
    assert abs(dirac_bracket(X[0], X[1], pt) + x3) < 1e-8
    assert abs(dirac_bracket(X[1], X[2], pt) + x1) < 1e-8
    assert abs(dirac_bracket(X[2], X[0], pt) - x2) < 1e-8


def test_constraints_are_dirac_central():
    pt = _point(17)
    for c in C:
        for f in P + Q + X:
            assert abs(dirac_bracket(c, f, pt)) < 1e-10


def test_casimir_is_dirac_central():
    pt = _point(23)
    cas = casimir_observable()
    for x in X:
        assert abs(dirac_bracket(cas, x, pt)) < 1e-8


def test_dirac_jacobi_identity():
    for seed in range(5):
        pt = _point(seed)
        assert abs(jacobi_residual(P[0], Q[1], P[2], pt)) < 1e-6
        assert abs(jacobi_residual(Q[0], P[1], Q[2], pt)) < 1e-6
    print("✅ Dirac Jacobi holds to finite-difference accuracy")


def test_dirac_off_shell_raises():
    off = PhasePoint(0.5, 0, 0, 1, 0, 0)                        # c2 = 0.5
    with pytest.raises(OffShellError):
        dirac_bracket(P[0], Q[0], off)
    # the off-shell extension is still available on request
    dirac_bracket(P[0], Q[0], off, check=False)


def test_dirac_is_single_site():
    z = np.concatenate([PhasePoint(0, 0, 0, 1, 0, 0).as_array()] * 2)
    with pytest.raises(ValidationError):
        dirac_bracket(P[0], Q[0], z)


def test_observable_builders_validate():
    with pytest.raises(ValidationError):
        coordinate("q2")
    with pytest.raises(ValidationError):
        spin_component(4)
    with pytest.raises(ValidationError):
        constraint_observable(3)
