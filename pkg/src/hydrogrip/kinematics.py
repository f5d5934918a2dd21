"""Planar hinge-chain kinematics of one finger.

Frame convention (the *load frame*): origin at the finger base, +x points
horizontally away from the gripper centerline and +y points straight down,
so gravity acts along +y. The loads an object exerts on a fingertip, the
squeeze reaction ``Fx`` and the weight share ``Fy = m g / n``, are then both
positive along the axes.

Segment ``i`` has direction angle ``alpha_i = -theta0 + sum_{j<=i} theta_j``,
measured from +y towards the centerline (-x). The base link is therefore
inclined by ``theta0`` away from the centerline and the tip orientation is
``theta - theta0``, the angle that appears in the contact-force rotation.
Segment direction is ``(-sin alpha, cos alpha)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import BendState, GripperParams

FEM_WEIGHTS = (-0.2, 0.0, 0.1, 0.3, 0.8)


@dataclass(frozen=True)
class FingerChain:
    segment_count: int
    segment_length: float
    theta0: float

    def __post_init__(self):
        if int(self.segment_count) != self.segment_count or self.segment_count < 1:
            raise DomainError("segment_count must be an integer >= 1")
        if not self.segment_length > 0:
            raise DomainError("segment_length must be positive")

    @classmethod
    def from_params(cls, params: GripperParams) -> "FingerChain":
        return cls(params.ns, params.l0 / params.ns, params.theta0)


@dataclass(frozen=True)
class WeightVector:
    """Distribution of a bend increment over the hinge joints."""

    w: tuple

    def __post_init__(self):
        w = tuple(float(x) for x in self.w)
        object.__setattr__(self, "w", w)
        if not all(math.isfinite(x) for x in w):
            raise DomainError("w must be finite")
        if abs(math.fsum(w) - 1.0) > 1e-12:
            raise DomainError(f"w must sum to 1, got sum {math.fsum(w)!r}")

    @classmethod
    def uniform(cls, ns: int) -> "WeightVector":
        return cls((1.0 / ns,) * ns)

    @classmethod
    def fem(cls) -> "WeightVector":
        return cls(FEM_WEIGHTS)

    def __len__(self):
        return len(self.w)


@dataclass(frozen=True)
class EffectiveJacobian:
    theta: float
    jx_w: float
    jy_w: float
    tip: tuple
    jx: tuple = ()
    jy: tuple = ()


def _check_lengths(chain, w):
    if len(w) != chain.segment_count:
        raise DomainError(
            f"weight vector has {len(w)} entries, chain has {chain.segment_count} joints"
        )


def distribute_angles(chain: FingerChain, w: WeightVector, theta: float) -> BendState:
    _check_lengths(chain, w)
    if not theta >= 0:
        raise DomainError(f"bend angle must be >= 0, got {theta!r}")
    return BendState(theta=theta, joint_angles=tuple(wi * theta for wi in w.w))


def tip_position(chain: FingerChain, joint_angles) -> np.ndarray:
    alpha = -chain.theta0 + np.cumsum(joint_angles)
    L = chain.segment_length
    return np.array([-L * np.sin(alpha).sum(), L * np.cos(alpha).sum()])


def jacobian_rows(chain: FingerChain, joint_angles):
    """Rows ``(dx/dtheta_k, dy/dtheta_k)`` of the tip Jacobian."""
    alpha = -chain.theta0 + np.cumsum(joint_angles)
    L = chain.segment_length
    # tail sums over segments i >= k
    jx = -L * np.cos(alpha)[::-1].cumsum()[::-1]
    jy = -L * np.sin(alpha)[::-1].cumsum()[::-1]
    return jx, jy


def fingertip_and_jacobian(chain: FingerChain, bend: BendState, w: WeightVector = None) -> EffectiveJacobian:
    """Tip position, Jacobian rows and the weighted scalars ``Jx.w``, ``Jy.w``.

    ``w`` defaults to the direction of the bend itself, ``joint_angles/theta``.
    """
    q = np.asarray(bend.joint_angles, dtype=float)
    if len(q) != chain.segment_count:
        raise DomainError("bend state does not match the chain")
    if w is None:
        if bend.theta == 0:
            raise DomainError("weights cannot be inferred from a zero bend")
        weights = q / bend.theta
    else:
        _check_lengths(chain, w)
        weights = np.asarray(w.w)
    jx, jy = jacobian_rows(chain, q)
    tip = tip_position(chain, q)
    return EffectiveJacobian(
        theta=bend.theta,
        jx_w=float(jx @ weights),
        jy_w=float(jy @ weights),
        tip=(float(tip[0]), float(tip[1])),
        jx=tuple(jx.tolist()),
        jy=tuple(jy.tolist()),
    )


@dataclass(frozen=True)
class Finger:
    """A chain together with the weight vector used while grasping."""

    chain: FingerChain
    weights: WeightVector

    def __post_init__(self):
        _check_lengths(self.chain, self.weights)

    @classmethod
    def from_params(cls, params: GripperParams, mode="fem") -> "Finger":
        if isinstance(mode, str):
            if mode == "uniform":
                w = WeightVector.uniform(params.ns)
            elif mode == "fem":
                w = WeightVector.fem()
            else:
                raise DomainError(f"unknown weight mode {mode!r}")
        elif isinstance(mode, WeightVector):
            w = mode
        else:
            w = WeightVector(tuple(mode))
        return cls(FingerChain.from_params(params), w)

    def jacobian(self, theta: float) -> EffectiveJacobian:
        bend = distribute_angles(self.chain, self.weights, theta)
        return fingertip_and_jacobian(self.chain, bend, self.weights)
