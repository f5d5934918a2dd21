"""Contact forces, friction-cone feasibility and payload limits.

For a fixed bend angle the pressure balance is affine in the object mass
``m`` and the horizontal fingertip load ``Fx``; the no-slip conditions are
linear in ``(Fx, Fy)``. Eliminating ``Fx`` through the balance leaves a
one-parameter family in ``m`` whose feasible set is an interval, so the
maximum payload is found in closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularConfigurationError, UnboundedPayloadError
from .kinematics import Finger
from .model import GripperParams, _elastic_moment

CONE_TOL = 1e-9  # N
SINGULAR_JX = 1e-12  # m/rad


@dataclass(frozen=True)
class GraspSolution:
    Fx: float
    Fy: float
    Fu: float
    Fv: float
    feasible: bool
    P: float


@dataclass(frozen=True)
class GridMap:
    """Grasp force and feasibility over a (theta, P) grid for one mass."""

    mass: float
    theta_axis: np.ndarray
    p_axis: np.ndarray
    fv: np.ndarray  # [theta, P]
    feasible: np.ndarray
    free_curve: np.ndarray  # f(theta), one entry per theta

    def __post_init__(self):
        for axis in (self.theta_axis, self.p_axis):
            if len(axis) > 1 and not np.all(np.diff(axis) > 0):
                raise DomainError("grid axes must be strictly increasing")
        shape = (len(self.theta_axis), len(self.p_axis))
        if self.fv.shape != shape or self.feasible.shape != shape:
            raise DomainError("cell array does not match the axes")


def contact_uv(Fx, Fy, theta, theta0):
    """Rotate tip loads into tangential ``Fu`` and normal ``Fv`` components."""
    c = math.cos(theta - theta0)
    s = math.sin(theta - theta0)
    return Fx * s - Fy * c, Fx * c + Fy * s


def friction_feasible(Fu, Fv, mu_f, tol=CONE_TOL) -> bool:
    if Fv < -tol:
        return False
    bound = mu_f * Fv
    return -bound - tol <= Fu <= bound + tol


class _Balance:
    """Per-angle pieces of the balance equation, shared by the solvers."""

    def __init__(self, params: GripperParams, finger: Finger, theta: float):
        self.params = params
        self.theta = theta
        self.kin = finger.jacobian(theta)
        if abs(self.kin.jx_w) < SINGULAR_JX:
            raise SingularConfigurationError(
                f"Jx.w = {self.kin.jx_w!r} at theta={theta}; Fx is undetermined"
            )
        self.elastic = _elastic_moment(params, theta)

    def fx(self, m, P):
        p = self.params
        return (self.elastic - p.pump_area * P - m * p.g * self.kin.jy_w) / (p.n * self.kin.jx_w)

    def solution(self, m, P) -> GraspSolution:
        p = self.params
        Fx = self.fx(m, P)
        Fy = m * p.g / p.n
        Fu, Fv = contact_uv(Fx, Fy, self.theta, p.theta0)
        ok = Fx >= -CONE_TOL and friction_feasible(Fu, Fv, p.mu_f)
        return GraspSolution(Fx=Fx, Fy=Fy, Fu=Fu, Fv=Fv, feasible=ok, P=P)

    def max_mass(self, P) -> float:
        p = self.params
        c = math.cos(self.theta - p.theta0)
        s = math.sin(self.theta - p.theta0)
        f0 = self.fx(0.0, P)
        f1 = -p.g * self.kin.jy_w / (p.n * self.kin.jx_w)
        gy = p.g / p.n
        # Fu, Fv and Fx as alpha + beta * m
        fu = (s * f0, s * f1 - c * gy)
        fv = (c * f0, c * f1 + s * gy)
        mu = p.mu_f
        rows = [
            (fu[0] - mu * fv[0], fu[1] - mu * fv[1]),  # Fu <= mu Fv
            (-fu[0] - mu * fv[0], -fu[1] - mu * fv[1]),  # -mu Fv <= Fu
            (-fv[0], -fv[1]),  # Fv >= 0
            (-f0, -f1),  # Fx >= 0
        ]
        # bounds sit on the exact boundary; CONE_TOL only decides emptiness,
        # so the returned mass is feasible after re-evaluation
        lo, hi = 0.0, math.inf
        lo_tol = 0.0
        for alpha, beta in rows:
            if beta > 0:
                hi = min(hi, -alpha / beta)
            elif beta < 0:
                lo = max(lo, -alpha / beta)
                lo_tol = max(lo_tol, (CONE_TOL - alpha) / beta)
            elif alpha > CONE_TOL:
                return 0.0
        if lo_tol > hi:
            return 0.0
        if math.isinf(hi):
            raise UnboundedPayloadError(
                f"payload is unbounded at theta={self.theta}, P={P}"
            )
        return hi


def solve_fx(params, finger: Finger, theta, m, P) -> float:
    """Horizontal fingertip load that balances pressure ``P`` at ``theta``."""
    return _Balance(params, finger, theta).fx(m, P)


def grasp_force(params, finger: Finger, theta, m, P) -> GraspSolution:
    if not m >= 0:
        raise DomainError(f"mass must be >= 0, got {m!r}")
    return _Balance(params, finger, theta).solution(m, P)


def max_payload(params, finger: Finger, theta, P) -> float:
    """Largest mass the fingers can hold at ``theta`` and pressure ``P``.

    Returns 0 when no positive mass is feasible.
    """
    return _Balance(params, finger, theta).max_mass(P)


def payload_curve(params, finger: Finger, thetas, p_max, p_steps) -> np.ndarray:
    """Rows ``(theta, P, max_payload)`` for ``p_steps`` pressures in [0, p_max]."""
    thetas = list(thetas)
    if not thetas or p_steps < 1:
        raise DomainError("payload_curve needs at least one angle and one pressure")
    pressures = np.linspace(0.0, p_max, p_steps) if p_steps > 1 else np.array([p_max])
    rows = []
    for theta in thetas:
        bal = _Balance(params, finger, theta)
        rows.extend((theta, P, bal.max_mass(P)) for P in pressures.tolist())
    return np.array(rows, dtype=float).reshape(-1, 3)


def graspable_grid(
    params,
    finger: Finger,
    m,
    theta_range=(0.0, math.radians(90.0)),
    p_range=(0.0, 4.0e6),
    resolution=(181, 201),
) -> GridMap:
    n_theta, n_p = resolution
    if n_theta < 1 or n_p < 1:
        raise DomainError("resolution must be positive")
    theta_axis = np.linspace(*theta_range, n_theta)
    p_axis = np.linspace(*p_range, n_p)
    fv = np.empty((n_theta, n_p))
    feasible = np.empty((n_theta, n_p), dtype=bool)
    free_curve = np.empty(n_theta)
    pressures = p_axis.tolist()
    for i, theta in enumerate(theta_axis.tolist()):
        bal = _Balance(params, finger, theta)
        free_curve[i] = bal.elastic / params.pump_area
        for j, P in enumerate(pressures):
            sol = bal.solution(m, P)
            fv[i, j] = sol.Fv
            feasible[i, j] = sol.feasible
    return GridMap(m, theta_axis, p_axis, fv, feasible, free_curve)
