import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hydrogrip import (
    ControllerConfig, DomainError, PlantConfig, PlantState, balance_pressure,
    controller_step, free_pressure, plant_step, run_simulation,
)
from hydrogrip import _kernels
from hydrogrip.control import _tables, equilibrium_theta

DEG = math.pi / 180


def invert_free(params, P, lo=0.2, hi=1.6):
    """Reference inverse of the free-bending curve by plain bisection."""
    flo = free_pressure(params, lo) - P
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = free_pressure(params, mid) - P
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_controller_passthrough():
    cfg = ControllerConfig()
    P_ref, integral = controller_step(cfg, cfg.theta_ref, 0.0, 1e-3, 1.25e6)
    assert P_ref == 1.25e6 and integral == 0.0


def test_controller_pure_feedforward():
    cfg = ControllerConfig(Kp=0.0, Ki=0.0)
    assert controller_step(cfg, 0.3, 0.0, 1e-3, 7.0)[0] == 7.0


def test_controller_hand_value(params):
    cfg = ControllerConfig(theta_ref=50 * DEG, Kp=10e6, Ki=0.0)
    f50 = free_pressure(params, 50 * DEG)
    P_ref, _ = controller_step(cfg, 45 * DEG, 0.0, 1e-3, f50)
    assert P_ref == pytest.approx(f50 + 10e6 * (5 * math.pi / 180), rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(-1.0, 1.0), st.floats(-10.0, 10.0), st.floats(1e-4, 1e-2))
def test_integral_clamp(theta_bar, integral, dt):
    cfg = ControllerConfig()
    _, new = controller_step(cfg, theta_bar, integral, dt, 0.0)
    assert abs(cfg.Ki * new) <= cfg.integral_limit * (1 + 1e-12)


def test_plant_config_validation():
    with pytest.raises(DomainError):
        PlantConfig(tau_p=0.2, dt=0.05)
    with pytest.raises(DomainError):
        ControllerConfig(Kp=-1.0)


def test_kernel_balance_matches_model(params, fem):
    tables = _tables(params, fem)
    for deg in (5, 30, 50, 70, 90):
        th = deg * DEG
        kin = fem.jacobian(th)
        for m, Fx in ((0.0, 0.0), (2.0, 0.0), (1.0, 3.0)):
            fast = _kernels.balance(tables.consts, tables.u, tables.weight, tables.w, th, m, Fx)
            assert fast == pytest.approx(balance_pressure(params, kin, th, m, Fx), rel=1e-12, abs=1e-6)


def test_equilibrium_fixed_point(params, fem):
    th = 50 * DEG
    P = free_pressure(params, th)
    state = PlantState(P=P, theta=th)
    new = plant_step(params, fem, state, P, PlantConfig())
    assert new.P == P
    assert new.theta == pytest.approx(th, abs=1e-8)


def test_plant_rejects_nonfinite_reference(params, fem):
    with pytest.raises(DomainError):
        plant_step(params, fem, PlantState(0.0, 0.1), math.nan, PlantConfig())


def test_step_response_follows_inverse_curve(params, fem):
    plant = PlantConfig()
    target = free_pressure(params, 50 * DEG)
    state = PlantState(P=0.0, theta=equilibrium_theta(params, fem, 0.0)[0])
    thetas = []
    for k in range(1, 1001):
        state = plant_step(params, fem, state, target, plant)
        thetas.append(state.theta)
        if k % 100 == 0:
            P_exact = target * (1 - (1 - plant.dt / plant.tau_p) ** k)
            assert state.P == pytest.approx(P_exact, rel=1e-9)
            assert state.theta == pytest.approx(invert_free(params, P_exact), abs=1e-7)
    assert np.all(np.diff(thetas) > 0)
    assert abs(thetas[-1] - 50 * DEG) < 0.5 * DEG  # 5 tau_p


def test_mass_step_lowers_angle(params, fem):
    th = 50 * DEG
    P = free_pressure(params, th)
    state = PlantState(P=P, theta=th)
    after = plant_step(params, fem, state, P, PlantConfig(), m=2.0)
    assert after.theta < th - 1e-4


def test_feedforward_only_converges(params, fem):
    ctrl = ControllerConfig(Kp=0.0, Ki=0.0)
    trace = run_simulation(params, fem, ctrl, PlantConfig(), 3.0)
    assert np.all(trace.P_ref == trace.P_ref[0])
    assert abs(trace.theta_bar[-1] - 50 * DEG) < 0.1 * DEG


def test_row_count(params, fem):
    trace = run_simulation(params, fem, ControllerConfig(), PlantConfig(), 0.1)
    assert len(trace) == 100
    assert np.allclose(np.diff(trace.t), 1e-3, rtol=0, atol=1e-15)
    assert trace.t[0] == 0.0


@pytest.mark.parametrize("Fx, m", [(5.0, 0.0), (0.0, 1.0), (3.0, 0.5)])
def test_integral_removes_offset(params, fem, Fx, m):
    plant = PlantConfig(force_schedule=((0.0, Fx),), mass_schedule=((0.0, m),))
    trace = run_simulation(params, fem, ControllerConfig(), plant, 8.0)
    assert abs(trace.theta_e[-1]) < 1e-3


def test_trace_residuals_and_determinism(params, fem):
    plant = PlantConfig(mass_schedule=((1.0, 2.0),), force_schedule=((1.5, 4.0),))
    a = run_simulation(params, fem, ControllerConfig(), plant, 3.0)
    b = run_simulation(params, fem, ControllerConfig(), plant, 3.0)
    for name in ("t", "theta_fingers", "theta_bar", "P", "P_ref", "m", "Fx"):
        assert getattr(a, name).tobytes() == getattr(b, name).tobytes()
    assert not a.saturated.any()
    for k in range(0, len(a), 37):
        th = float(a.theta_bar[k])
        res = balance_pressure(params, fem.jacobian(th), th, float(a.m[k]), float(a.Fx[k])) - a.P[k]
        assert abs(res) <= 1.0


def test_noise_is_seeded_and_averaged(params, fem):
    plant = PlantConfig(noise_sigma=0.01, seed=3)
    a = run_simulation(params, fem, ControllerConfig(), plant, 0.2)
    b = run_simulation(params, fem, ControllerConfig(), plant, 0.2)
    assert a.theta_fingers.tobytes() == b.theta_fingers.tobytes()
    assert np.allclose(a.theta_bar, a.theta_fingers.mean(axis=1), rtol=0, atol=1e-15)
    assert a.theta_fingers.std(axis=1).max() > 0


def test_saturation_at_capacity(params, fem):
    tables = _tables(params, fem)
    theta, saturated = equilibrium_theta(params, fem, 1e9)
    assert saturated
    assert theta == tables.grid[-1]
