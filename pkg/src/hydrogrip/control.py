"""Closed-loop bend-angle control on a quasi-static gripper plant.

Controller: feedforward through the free-bending pressure model plus PI
feedback on the average finger angle, with a clamped integrator.

Plant: the pump pressure follows the reference through a first-order lag
(explicit Euler); the fingers settle instantly to the bend angle at which
the static balance equation matches the current pressure and load.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import DomainError
from .kinematics import Finger
from .model import GripperParams, _zeta_f_nodes, ZETA_F_NODES, free_pressure

SCAN_STEP = math.radians(0.5)
THETA_TOL = 1e-9
LOCAL_BRACKET = 1e-6


@dataclass(frozen=True)
class ControllerConfig:
    theta_ref: float = math.radians(50.0)
    Kp: float = 5.0e6  # Pa/rad
    Ki: float = 10.0e6  # Pa/(rad s)
    integral_limit: float = 2.0e6  # Pa

    def __post_init__(self):
        if not (self.Kp >= 0 and self.Ki >= 0):
            raise DomainError("controller gains must be >= 0")
        if not self.integral_limit > 0:
            raise DomainError("integral_limit must be positive")


def _schedule(entries):
    out = tuple(sorted((float(t), float(v)) for t, v in entries))
    return out


@dataclass(frozen=True)
class PlantConfig:
    """Pump lag, step size, sensor noise and load schedules.

    Schedules are sequences of ``(t_start, value)``; the value holds from
    ``t_start`` until the next entry and is 0 before the first one.
    """

    tau_p: float = 0.2
    dt: float = 1e-3
    noise_sigma: float = 0.0
    mass_schedule: tuple = ()
    force_schedule: tuple = ()
    p_init: float = 0.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "mass_schedule", _schedule(self.mass_schedule))
        object.__setattr__(self, "force_schedule", _schedule(self.force_schedule))
        if not self.tau_p > 0:
            raise DomainError("tau_p must be positive")
        if not self.dt > 0:
            raise DomainError("dt must be positive")
        if self.dt > self.tau_p / 10:
            raise DomainError(f"dt={self.dt} exceeds tau_p/10={self.tau_p / 10}")
        if not self.noise_sigma >= 0:
            raise DomainError("noise_sigma must be >= 0")
        if any(v < 0 for _, v in self.mass_schedule):
            raise DomainError("scheduled masses must be >= 0")

    def mass_at(self, t):
        return _lookup(self.mass_schedule, t)

    def force_at(self, t):
        return _lookup(self.force_schedule, t)


def _lookup(schedule, t):
    value = 0.0
    for start, v in schedule:
        if t + 1e-12 >= start:
            value = v
        else:
            break
    return value


@dataclass(frozen=True)
class PlantState:
    P: float
    theta: float
    saturated: bool = False


@dataclass(frozen=True)
class SimTrace:
    t: np.ndarray
    theta_fingers: np.ndarray  # (rows, n)
    theta_bar: np.ndarray
    theta_e: np.ndarray
    P: np.ndarray
    P_ref: np.ndarray
    m: np.ndarray
    Fx: np.ndarray
    saturated: np.ndarray = field(default=None)

    def __len__(self):
        return len(self.t)


def controller_step(cfg: ControllerConfig, theta_bar, integral_state, dt, f_of_theta_ref):
    """One PI update; returns ``(P_ref, new_integral_state)``."""
    theta_e = cfg.theta_ref - theta_bar
    integral = integral_state + theta_e * dt
    if cfg.Ki > 0:
        bound = cfg.integral_limit / cfg.Ki
        integral = min(max(integral, -bound), bound)
    P_ref = f_of_theta_ref + cfg.Kp * theta_e + cfg.Ki * integral
    return P_ref, integral


class _PlantTables:
    """Coarse scan grid and packed constants for the compiled solver."""

    def __init__(self, params: GripperParams, finger: Finger):
        self.params = params
        self.consts = np.array([
            params.theta0, params.l0, params.V0, params.R, params.t, float(params.n),
            params.mu_sf, params.mu_sr, params.g, params.pump_area,
            finger.chain.segment_length,
        ])
        self.u, self.weight = _zeta_f_nodes(params.a, params.b, params.d, *ZETA_F_NODES)
        self.w = np.array(finger.weights.w)
        theta_end = params.theta_capacity * (1.0 - 1e-9)
        grid = np.arange(0.0, theta_end, SCAN_STEP)
        self.grid = np.append(grid, theta_end) if grid[-1] < theta_end else grid
        c, u, wt, w = self.consts, self.u, self.weight, self.w
        self.f_grid = np.array([_kernels.balance(c, u, wt, w, th, 0.0, 0.0) for th in self.grid])
        jac = np.array([_kernels.weighted_jacobian(c[0], c[10], w, th) for th in self.grid])
        self.cx_grid = -params.n * jac[:, 0] / params.pump_area
        self.cy_grid = -params.g * jac[:, 1] / params.pump_area

    def solve(self, P, m, Fx, prev):
        return _kernels.solve_theta(
            self.consts, self.u, self.weight, self.w, self.grid,
            self.f_grid, self.cx_grid, self.cy_grid,
            float(P), float(m), float(Fx), float(prev), THETA_TOL, LOCAL_BRACKET,
        )


@lru_cache(maxsize=16)
def _tables(params, finger):
    return _PlantTables(params, finger)


def equilibrium_theta(params, finger, P, m=0.0, Fx=0.0, prev=0.0):
    """Bend angle balancing pressure ``P``; returns ``(theta, saturated)``."""
    theta, saturated = _tables(params, finger).solve(P, m, Fx, prev)
    return float(theta), bool(saturated)


def plant_step(params, finger: Finger, state: PlantState, P_ref, plant: PlantConfig, m=0.0, Fx=0.0) -> PlantState:
    """Advance the pump pressure one step, then re-solve the bend angle.

    ``m`` and ``Fx`` are the loads at the end of the step.
    """
    if not math.isfinite(P_ref):
        raise DomainError(f"non-finite pressure reference {P_ref!r}")
    P = state.P + plant.dt * (P_ref - state.P) / plant.tau_p
    theta, saturated = equilibrium_theta(params, finger, P, m, Fx, state.theta)
    return PlantState(P=P, theta=theta, saturated=saturated)


def run_simulation(params, finger: Finger, ctrl: ControllerConfig, plant: PlantConfig, duration) -> SimTrace:
    if not duration > 0:
        raise DomainError("duration must be positive")
    steps = int(round(duration / plant.dt))
    n = params.n
    dt = plant.dt
    ff = free_pressure(params, ctrl.theta_ref)
    rng = np.random.default_rng(plant.seed) if plant.noise_sigma > 0 else None
    tables = _tables(params, finger)

    t = np.arange(steps + 1) * dt
    m = np.array([plant.mass_at(tk) for tk in t.tolist()])
    fx = np.array([plant.force_at(tk) for tk in t.tolist()])
    theta = np.empty(steps)
    theta_bar = np.empty(steps)
    P = np.empty(steps)
    P_ref = np.empty(steps)
    saturated = np.zeros(steps, dtype=bool)
    noise = rng.normal(0.0, plant.noise_sigma, (steps, n)) if rng is not None else None

    th, sat = tables.solve(plant.p_init, m[0], fx[0], 0.0)
    p_now = plant.p_init
    integral = 0.0
    for k in range(steps):
        if noise is None:
            mean = th
        else:
            mean = float((th + noise[k]).mean())
        p_ref, integral = controller_step(ctrl, mean, integral, dt, ff)
        if not math.isfinite(p_ref):
            raise DomainError(f"non-finite pressure reference {p_ref!r}")
        theta[k], theta_bar[k], P[k], P_ref[k], saturated[k] = th, mean, p_now, p_ref, sat
        p_now = p_now + dt * (p_ref - p_now) / plant.tau_p
        th, sat = tables.solve(p_now, m[k + 1], fx[k + 1], th)

    theta_fingers = np.repeat(theta[:, None], n, axis=1)
    if noise is not None:
        theta_fingers = theta_fingers + noise
    return SimTrace(
        t=t[:steps], theta_fingers=theta_fingers, theta_bar=theta_bar,
        theta_e=ctrl.theta_ref - theta_bar, P=P, P_ref=P_ref,
        m=m[:steps], Fx=fx[:steps], saturated=saturated,
    )
