"""
tests/test_flow.py

Tests the integrator, the seeded sampler and the trajectory auditors.

Run: pytest tests/test_flow.py -v -s
"""

import sys
from pathlib import Path

import numpy as np
import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.config import CM_SPIN_SCALE, CM_U_RANGE
from src.core.phase_space import PhasePoint, RealityClass, constraints, reality_residual
from src.errors import OffShellError, ValidationError
from src.flow.audit import (
    commutativity_scan,
    conservation_report,
    convergence_order,
    global_errors,
    isospectral_check,
)
from src.flow.integrator import IntegratorOptions, integrate
from src.flow.sampling import sample_cm_start, sample_many
from src.models.calogero import COUPLING, CMVariant
from src.models.top import TopModel, TopParams, top_observable
from src.pipeline.checks import LIVELY_TOP_J, LIVELY_TOP_STATE
from src.tools.elliptic import EllipticCurve

MODEL = TopModel(TopParams(*LIVELY_TOP_J), cls=RealityClass.TYPE_III)


# ── IntegratorOptions ─────────────────────────────────────────────────────────

def test_options_defaults():
    opts = IntegratorOptions()
    assert opts.dt == 1e-3
    assert opts.t_end == 10.0
    assert opts.n_steps == 10_000
    assert opts.to_dict() == {"dt": 1e-3, "t_end": 10.0, "project_every": 10, "tol": 1e-10}


@pytest.mark.parametrize("kwargs, field", [
    ({"dt": 0}, "integrator.dt"),
    ({"dt": -1e-3}, "integrator.dt"),
    ({"t_end": 0}, "integrator.t_end"),
    ({"dt": 2.0, "t_end": 1.0}, "integrator.dt"),
    ({"project_every": -1}, "integrator.project_every"),
    ({"tol": 0}, "integrator.tol"),
    ({"tol": 1e-3}, "integrator.tol"),
])
def test_options_validation(kwargs, field):
    with pytest.raises(ValidationError) as exc:
        IntegratorOptions(**kwargs)
    assert exc.value.field == field


# ── integrate() ───────────────────────────────────────────────────────────────

def test_trajectory_shape_and_audit():
    traj = integrate(MODEL, LIVELY_TOP_STATE, IntegratorOptions(dt=1e-2, t_end=0.5))
    assert len(traj) == 51
    assert traj.coords.shape == (51, 6)
    assert traj.times[0] == 0 and traj.times[-1] == pytest.approx(0.5)
    assert len(traj.audit) == 51
    assert {"c1_abs", "c2_abs", "reality_residual", "H0", "H2", "casimir"} <= set(traj.audit[0])
    assert isinstance(traj.states[3], PhasePoint)
    assert traj.states[3].cls is RealityClass.TYPE_III


def test_integrate_rejects_off_shell_start():
    off = PhasePoint(0.5, 0, 0, 1, 0, 0)
    with pytest.raises(OffShellError):
        integrate(TopModel(TopParams(1, 2, 3)), off, IntegratorOptions(dt=1e-2, t_end=0.1))


def test_integrate_rejects_start_outside_its_class():
    # on-shell, but p1 and p3 must be imaginary in TypeIII
    start = PhasePoint(0, 0.3, 0.2, 1, 0, 0, RealityClass.TYPE_III)
    model = TopModel(TopParams(1, 2, 3), cls=RealityClass.TYPE_III)
    with pytest.raises(ValidationError) as exc:
        integrate(model, start, IntegratorOptions(dt=1e-2, t_end=0.1))
    assert exc.value.field == "initial"


def test_projection_holds_constraints():
    opts = IntegratorOptions(dt=1e-2, t_end=2.0, project_every=1, tol=1e-12)
    traj = integrate(MODEL, LIVELY_TOP_STATE, opts)
    assert max(max(r["c1_abs"], r["c2_abs"]) for r in traj.audit) <= 1e-12


def test_rk4_is_fourth_order():
    dts = (4e-3, 2e-3, 1e-3)
    errors = global_errors(MODEL, LIVELY_TOP_STATE, dts, t_end=1.0)
    order = convergence_order(errors, dts)
    assert abs(order - 4) < 0.4
    print(f"✅ fitted RK4 order: {order:.3f}")


# ── Sampler ───────────────────────────────────────────────────────────────────

def test_sampler_is_seeded():
    a = sample_many(42, 5, RealityClass.TYPE_IV)
    b = sample_many(42, 5, RealityClass.TYPE_IV)
    c = sample_many(43, 5, RealityClass.TYPE_IV)
    assert all(np.array_equal(x.as_array(), y.as_array()) for x, y in zip(a, b))
    assert not np.array_equal(a[0].as_array(), c[0].as_array())


def test_sampler_respects_radius():
    for pt in sample_many(1, 50, RealityClass.TYPE_III, p_radius=0.5):
        assert np.linalg.norm(pt.p) <= 0.5 + 1e-9
        assert abs(pt.q0.real ** 2 + abs(pt.q1) ** 2 + abs(pt.q3) ** 2 - 1) < 1e-12


@pytest.mark.parametrize("cls", [RealityClass.COMPLEX_V, RealityClass.TYPE_III])
def test_cm_start_is_repulsive_and_scaled(cls):
    rng = np.random.default_rng(5)
    for _ in range(10):
        start = sample_cm_start(rng, CMVariant.V, cls)
        X = start.X
        strength = COUPLING[CMVariant.V] * X.X_plus * X.X_minus
        assert np.linalg.norm(X.as_array()) == pytest.approx(CM_SPIN_SCALE, rel=1e-12)
        assert strength.real > 0
        assert abs(strength.imag) < 1e-12
        assert abs(X.X3) < 1e-10
        assert max(abs(c) for c in constraints(start.spin)) < 1e-10
        assert reality_residual(start.spin) < 1e-14
        assert CM_U_RANGE[0] <= start.u.real <= CM_U_RANGE[1]


# ── Auditors ──────────────────────────────────────────────────────────────────

def test_conservation_report_rows():
    traj = integrate(MODEL, LIVELY_TOP_STATE, IntegratorOptions(dt=1e-3, t_end=1.0))
    report = conservation_report(traj, ["H2", "H0"])
    assert [row.observable for row in report.rows] == ["H2", "H0"]
    assert report.worst_relative() < 1e-8
    frame = report.to_frame()
    assert list(frame.columns) == ["observable", "initial_re", "initial_im", "max_abs_drift", "max_rel_drift"]
    assert report.to_dict()["observables"][0]["observable"] == "H2"


def test_conservation_report_unknown_name():
    traj = integrate(MODEL, LIVELY_TOP_STATE, IntegratorOptions(dt=1e-2, t_end=0.1))
    with pytest.raises(ValidationError):
        conservation_report(traj, ["energy"])
    with pytest.raises(KeyError):
        conservation_report(traj, ["H2"])["H0"]


def test_commutativity_scan():
    params = TopParams(0.8 + 0.3j, -1.1 + 0.2j, 0.4 - 0.7j)
    worst = commutativity_scan(top_observable(), top_observable(params), n_points=50, seed=3,
                               p_radius=1.0, s_max=1.0)
    assert worst < 1e-8
    with pytest.raises(ValidationError):
        commutativity_scan(top_observable(), top_observable(params), n_points=0)


def test_isospectral_check_on_lax_top():
    curve = EllipticCurve(1j)
    params = TopParams(*TopParams.for_lax(curve).as_array().real)
    model = TopModel(params, curve=curve, cls=RealityClass.TYPE_III)
    traj = integrate(model, LIVELY_TOP_STATE, IntegratorOptions(dt=1e-3, t_end=1.0))
    report = isospectral_check(traj, [0.21 + 0.13j, 0.37 - 0.08j])
    assert len(report.samples) == 2
    assert report.worst_relative() < 1e-7
    assert report.to_dict()["samples"][0]["z"] == [0.21, 0.13]


def test_convergence_order_validation():
    assert convergence_order([1e-4, 1e-6], [1e-1, 1e-2]) == pytest.approx(2.0)
    with pytest.raises(ValidationError):
        convergence_order([1e-4], [1e-2])
    with pytest.raises(ValidationError):
        convergence_order([1e-4, 0.0], [1e-1, 1e-2])
