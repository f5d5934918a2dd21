"""Hydrostatic model of the oil-driven soft gripper.

Everything here is a pure function of a :class:`GripperParams` instance and
a total bend angle ``theta`` (sum of the hinge angles of one finger). Units
are SI throughout: m, m^3, Pa, kg, N, rad.

The pressure balance combines

* pump work ``P * dQ`` with ``Q = n a^2 pi (l0 + d theta)``,
* neo-Hookean strain energy of the finger tubes (``zeta_f``),
* neo-Hookean strain energy of the biaxially stretched reservoir sheet
  (``zeta_r``), and
* the work done by the fingertip loads through the weighted Jacobian.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import CapacityError, DomainError, QuadratureError

STANDARD_GRAVITY = 9.80665

# Gauss-Legendre resolution for zeta_f (phi x r) and the refinement check.
ZETA_F_NODES = (64, 32)
ZETA_F_RTOL = 1e-8
ZETA_F_ATOL = 1e-30  # subnormal bend angles lose relative precision


@dataclass(frozen=True)
class GripperParams:
    """Physical constants of the gripper (SI units).

    ``a`` is the inner *radius* of the finger tube.
    """

    theta0: float = math.radians(20.0)
    l0: float = 0.180
    a: float = 0.004
    b: float = 0.005
    d: float = 0.015
    R: float = 0.024
    t: float = 0.001
    V0: float = 17.8e-6
    n: int = 4
    ns: int = 5
    mu_sf: float = 1.15e6
    mu_sr: float = 1.15e6
    mu_f: float = 0.7
    g: float = STANDARD_GRAVITY

    def __post_init__(self):
        for name in ("l0", "a", "b", "d", "R", "t", "V0", "g"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be finite and positive, got {value!r}")
        for name in ("mu_sf", "mu_sr", "mu_f"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise DomainError(f"{name} must be finite and non-negative, got {value!r}")
        if not math.isfinite(self.theta0):
            raise DomainError("theta0 must be finite")
        for name in ("n", "ns"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise DomainError(f"{name} must be an integer >= 1, got {value!r}")
            object.__setattr__(self, name, int(value))
        if not self.d > self.a + self.b:
            raise DomainError(
                f"d must exceed a + b (got d={self.d}, a + b={self.a + self.b})"
            )

    @property
    def pump_area(self) -> float:
        """Volume swept per radian of bend, ``n a^2 pi d`` [m^3/rad]."""
        return self.n * self.a**2 * math.pi * self.d

    @property
    def theta_capacity(self) -> float:
        """Bend angle at which the reservoir is emptied."""
        return self.V0 / self.pump_area


@dataclass(frozen=True)
class ReservoirState:
    V: float
    h: float
    lambda_r: float


@dataclass(frozen=True)
class BendState:
    theta: float
    joint_angles: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if abs(math.fsum(self.joint_angles) - self.theta) > 1e-12:
            raise DomainError("joint angles do not sum to theta")


def _check_theta(theta):
    if not math.isfinite(theta) or theta < 0:
        raise DomainError(f"bend angle must be finite and >= 0, got {theta!r}")


def finger_volume(params: GripperParams, theta: float) -> float:
    """Total inner volume of the ``n`` finger tubes."""
    _check_theta(theta)
    return params.n * params.a**2 * math.pi * (params.l0 + params.d * theta)


def lambda_f(params: GripperParams, r, phi, theta):
    """Axial stretch of the finger tube at wall point ``(r, phi)``.

    ``r`` is measured from the inner wall (0..b); ``phi`` is the polar angle
    of the cross section. Works elementwise on arrays.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0) or np.any(r_arr > params.b):
        raise DomainError(f"r must lie in [0, b={params.b}]")
    _check_theta(float(np.max(theta)) if np.ndim(theta) else theta)
    lam = (params.l0 + (params.d + (params.a + r) * np.sin(phi)) * theta) / params.l0
    return lam if np.ndim(lam) else float(lam)


@lru_cache(maxsize=64)
def _zeta_f_nodes(a, b, d, n_phi, n_r):
    """Flattened tensor-product nodes for the (phi, r) integral.

    Returns ``(u, weight)`` where ``u = d + (a + r) sin(phi)`` is the moment
    arm (so that dlambda/dtheta = u / l0) and ``weight`` already contains
    the quadrature weights times ``(a + r) * u``.
    """
    x_phi, w_phi = np.polynomial.legendre.leggauss(n_phi)
    x_r, w_r = np.polynomial.legendre.leggauss(n_r)
    phi = math.pi * (x_phi + 1.0)
    w_phi = math.pi * w_phi
    rho = a + 0.5 * b * (x_r + 1.0)
    w_r = 0.5 * b * w_r
    u = d + np.outer(np.sin(phi), rho)
    weight = np.outer(w_phi, w_r * rho) * u
    u.setflags(write=False)
    weight.setflags(write=False)
    return u.ravel(), weight.ravel()


def _zeta_f_sum(params, theta, n_phi, n_r):
    u, weight = _zeta_f_nodes(params.a, params.b, params.d, n_phi, n_r)
    stretch = u * (theta / params.l0)  # lambda - 1, kept separate to avoid cancellation
    lam = 1.0 + stretch
    # lambda - lambda^-3 == (lambda-1)(lambda+1)(lambda^2+1)/lambda^3
    return float(weight @ (stretch * (lam + 1.0) * (lam * lam + 1.0) / lam**3))


def zeta_f(params: GripperParams, theta: float, check: bool = True) -> float:
    """Finger strain-energy rate per unit shear modulus, dW_f/dtheta / mu_sf.

    Integrates over the tube wall with tensor Gauss-Legendre quadrature.
    With ``check`` the result is compared against a doubled-resolution
    evaluation and :class:`QuadratureError` is raised on disagreement.
    """
    _check_theta(theta)
    n_phi, n_r = ZETA_F_NODES
    value = _zeta_f_sum(params, theta, n_phi, n_r)
    if check:
        fine = _zeta_f_sum(params, theta, 2 * n_phi, 2 * n_r)
        if abs(value - fine) > ZETA_F_RTOL * abs(fine) + ZETA_F_ATOL:
            raise QuadratureError(
                f"zeta_f({theta}) did not converge: {value!r} vs refined {fine!r}"
            )
    return value


def ellipse_half_perimeter(R: float, h: float) -> float:
    """Ramanujan's approximation of half the ellipse perimeter, ``L(h)``."""
    return 0.5 * math.pi * (3.0 * (R + h) - math.sqrt((R + 3.0 * h) * (h + 3.0 * R)))


def _reservoir_volume(params, theta):
    _check_theta(theta)
    V = params.V0 - params.pump_area * theta
    if V <= 0:
        raise CapacityError(
            f"reservoir exhausted at theta={theta} rad "
            f"(maximum admissible {params.theta_capacity} rad)",
            params.theta_capacity,
        )
    return V


def reservoir_state(params: GripperParams, theta: float) -> ReservoirState:
    V = _reservoir_volume(params, theta)
    h = 3.0 * V / (2.0 * math.pi * params.R**2)
    return ReservoirState(V=V, h=h, lambda_r=ellipse_half_perimeter(params.R, h) / (2.0 * params.R))


def dlambda_r_dtheta(params: GripperParams, theta: float) -> float:
    """Analytic derivative of the reservoir stretch through V -> h -> L."""
    h = reservoir_state(params, theta).h
    R = params.R
    dL_dh = 0.5 * math.pi * (3.0 - (3.0 * h + 5.0 * R) / math.sqrt((R + 3.0 * h) * (h + 3.0 * R)))
    dh_dtheta = -3.0 * params.pump_area / (2.0 * math.pi * R**2)
    return dL_dh * dh_dtheta / (2.0 * R)


def reservoir_energy(params: GripperParams, theta: float) -> float:
    """Reservoir strain energy per unit shear modulus, W_r / mu_sr."""
    lam = reservoir_state(params, theta).lambda_r
    return 0.5 * (2.0 * lam**2 + lam**-4 - 3.0) * math.pi * params.R**2 * params.t


def zeta_r(params: GripperParams, theta: float) -> float:
    """Reservoir strain-energy rate per unit shear modulus."""
    lam = reservoir_state(params, theta).lambda_r
    return (
        2.0 * (lam - lam**-5) * dlambda_r_dtheta(params, theta)
        * math.pi * params.R**2 * params.t
    )


def _elastic_moment(params, theta, check=True):
    return params.n * params.mu_sf * zeta_f(params, theta, check) + params.mu_sr * zeta_r(params, theta)


def free_pressure(params: GripperParams, theta: float) -> float:
    """Pressure that holds the unloaded fingers at ``theta``."""
    return balance_pressure(params, None, theta, 0.0, 0.0)


def balance_pressure(params: GripperParams, kin, theta: float, m: float, Fx: float) -> float:
    """Driving pressure in equilibrium with bend ``theta`` and tip loads.

    ``kin`` is the :class:`~hydrogrip.kinematics.EffectiveJacobian` at
    ``theta``; it may be ``None`` only when both loads are zero. ``m`` is the
    object mass carried by all fingers, ``Fx`` the horizontal load on each
    fingertip.
    """
    if not m >= 0:
        raise DomainError(f"mass must be >= 0, got {m!r}")
    if kin is None:
        if m != 0 or Fx != 0:
            raise DomainError("a Jacobian is required when the fingertips are loaded")
        load = 0.0
    else:
        if kin.theta != theta:
            raise DomainError("Jacobian was evaluated at a different bend angle")
        load = params.n * Fx * kin.jx_w + m * params.g * kin.jy_w
    return (_elastic_moment(params, theta) - load) / params.pump_area
