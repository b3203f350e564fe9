"""Spring-cable static balancing mechanism.

A compression spring in the torso segment pulls, through a cable, on a
grounding part that sits a distance ``delta_s`` from the shoulder joint.
The cable spans from an anchor at distance ``a`` on the other segment,
so its length over the joint angle theta is

    b(theta) = sqrt(a^2 + delta_s^2 - 2 a delta_s cos(theta))

and the support torque is  a * F_s * delta_s * sin(theta) / b  with the
spring force F_s = k*(b - l0 + b0) + f0. Pretensioning the spring with
b0 = l0 - f0/k makes F_s = k*b exactly (a simulated zero-free-length
spring), which cancels b from the torque and balances the arm weight at
every angle once a*k*delta_s = m*g*l.

Angle convention: theta is measured from the torso-segment axis above
the joint, so an arm elevation phi (0 = horizontal) maps to
theta = 90 deg - phi and sin(theta) = cos(phi). With this orientation
the device torque equals minus the derivative of the spring elastic
energy with respect to elevation, which the energy-oracle tests check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import backend
from .anthro import BodyModel
from .errors import DomainError, MechanismError

#: Adjustable travel range of the grounding part, metres.
DELTA_S_MIN = 0.0
DELTA_S_MAX = 0.06


@dataclass(frozen=True)
class SpringParams:
    """Linear spring: force = k*deflection + f0, with optional pretension b0.

    k in N/m, lengths in m, f0 in N. ``b0`` is the pretension length that
    shifts the deflection origin; ``None`` means no pretension (b0 = 0).
    """

    k: float
    l0: float
    f0: float = 0.0
    b0: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.k) and self.k > 0.0):
            raise MechanismError(f"sbs: spring constant k must be positive, got {self.k}")
        if not (math.isfinite(self.l0) and self.l0 > 0.0):
            raise MechanismError(f"sbs: initial length l0 must be positive, got {self.l0}")
        if not (math.isfinite(self.f0) and self.f0 >= 0.0):
            raise MechanismError(f"sbs: initial force f0 must be >= 0, got {self.f0}")
        if self.b0 is not None and not (math.isfinite(self.b0) and self.b0 >= 0.0):
            raise MechanismError(f"sbs: pretension b0 must be >= 0, got {self.b0}")

    @property
    def pretension(self) -> float:
        return 0.0 if self.b0 is None else self.b0

    @classmethod
    def zero_free_length(cls, k: float, l0: float, f0: float = 0.0) -> "SpringParams":
        """Spring pretensioned so that F_s = k*b exactly."""
        base = cls(k=k, l0=l0, f0=f0)
        return replace(base, b0=zero_free_length_pretension(base))

    def is_zero_free_length(self, tol: float = 1e-12) -> bool:
        return self.b0 is not None and abs(self.b0 - (self.l0 - self.f0 / self.k)) <= tol


@dataclass(frozen=True)
class MechanismGeometry:
    """Lever geometry of the spring-cable balancer.

    ``a``: cable anchor distance from the joint (m). ``delta_s``: grounding
    part travel (m), the adjustable lever arm. ``arm_segment_length``: the
    attachment distance used to convert torque to force at the arm cuff.
    ``constant_b`` freezes the spring deflection at the theta=0 cable
    length, the simplification used for the closed-form torque; the exact
    moment ratio is kept either way.
    """

    a: float = 0.05
    delta_s: float = 0.01
    arm_segment_length: float = 0.312
    joint_range: tuple[float, float] = (-80.0, 80.0)
    sagittal_design_torque: float = 10.0  # N*m, out-of-plane bearing rating
    constant_b: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise MechanismError(f"sbs: anchor distance a must be positive, got {self.a}")
        if not (math.isfinite(self.delta_s) and self.delta_s >= 0.0):
            raise MechanismError(f"sbs: grounding travel delta_s must be >= 0, got {self.delta_s}")
        lo, hi = self.joint_range
        if not (-180.0 <= lo <= hi <= 180.0):
            raise MechanismError(f"sbs: joint_range must lie within [-180, 180], got {self.joint_range}")


@dataclass(frozen=True)
class TorqueBreakdown:
    """Device torque, arm-weight torque, and their difference (N*m)."""

    gamma_d: float
    gamma_w: float
    net: float


@dataclass(frozen=True)
class TuneResult:
    """Grounding-part setting for one user."""

    delta_s: float          # applied travel, m (clamped into the hard range)
    requested: float        # unclamped analytic value, m
    clamped: bool


def spring_force(spring: SpringParams, deflection: float) -> float:
    """Spring force (N) at a deflection (m) from the pretensioned origin."""
    if deflection < -spring.l0:
        raise MechanismError(
            f"sbs: spring deflection {deflection} below -l0 = {-spring.l0} (spring cannot "
            "extend past its free length)"
        )
    return spring.k * deflection + spring.f0


def cable_length(geom: MechanismGeometry, theta_deg: float) -> float:
    """Cable length b (m) between the two lever anchors at joint angle theta."""
    theta = math.radians(theta_deg)
    return math.sqrt(
        geom.a * geom.a
        + geom.delta_s * geom.delta_s
        - 2.0 * geom.a * geom.delta_s * math.cos(theta)
    )


def device_torque(geom: MechanismGeometry, spring: SpringParams, theta_deg: float) -> float:
    """Support torque (N*m) produced by the mechanism at joint angle theta."""
    out = device_torque_curve(geom, spring, np.array([theta_deg], dtype=np.float64))
    value = float(out[0])
    if math.isnan(value):
        b = cable_length(geom, theta_deg)
        if b == 0.0:
            raise MechanismError(
                "sbs: cable length b = 0 (a == delta_s and theta == 0); torque ratio is singular"
            )
        b_spring = abs(geom.a - geom.delta_s) if geom.constant_b else b
        # re-run the scalar spring law to surface the range error
        spring_force(spring, b_spring - spring.l0 + spring.pretension)
        raise MechanismError("sbs: device torque undefined for this configuration")
    return value


def device_torque_curve(
    geom: MechanismGeometry, spring: SpringParams, theta_deg: np.ndarray
) -> np.ndarray:
    """Vectorised device torque over joint angles (degrees); NaN marks singular angles."""
    theta = np.radians(np.asarray(theta_deg, dtype=np.float64))
    return backend.device_torque_curve(
        np.ascontiguousarray(theta),
        geom.a,
        geom.delta_s,
        spring.k,
        spring.l0,
        spring.f0,
        spring.pretension,
        geom.constant_b,
    )


def arm_torque(body: BodyModel, moment_arm: float, theta_deg: float) -> float:
    """Arm-weight torque (N*m) about the joint: l * m * g * sin(theta)."""
    if not (math.isfinite(moment_arm) and moment_arm > 0.0):
        raise DomainError(f"sbs: moment arm must be positive, got {moment_arm}")
    return moment_arm * body.arm_mass * body.gravity * math.sin(math.radians(theta_deg))


def zero_free_length_pretension(spring: SpringParams) -> float:
    """Pretension b0 = l0 - f0/k that emulates a zero-free-length spring."""
    b0 = spring.l0 - spring.f0 / spring.k
    if b0 < 0.0:
        raise MechanismError(
            f"sbs: required pretension l0 - f0/k = {b0} is negative; this spring cannot "
            "emulate a zero free length"
        )
    return b0


def tune_delta_s(
    body: BodyModel,
    geom: MechanismGeometry,
    spring: SpringParams,
    moment_arm: float | None = None,
) -> TuneResult:
    """Grounding-part travel that balances the arm: delta_s = m*g*l / (a*k).

    Valid for the zero-free-length configuration, where the balance
    condition a*k*delta_s = m*g*l is angle-independent. The result is
    clamped into the hard travel range with ``clamped`` flagged.
    """
    if not spring.is_zero_free_length(tol=1e-9):
        raise MechanismError(
            "sbs: tuning rule requires a zero-free-length spring (b0 = l0 - f0/k)"
        )
    denom = geom.a * spring.k
    if denom == 0.0:
        raise MechanismError("sbs: a*k = 0, tuning rule undefined")
    l = body.upper_arm_length if moment_arm is None else moment_arm
    requested = body.arm_mass * body.gravity * l / denom
    applied = min(max(requested, DELTA_S_MIN), DELTA_S_MAX)
    return TuneResult(delta_s=applied, requested=requested, clamped=applied != requested)


def net_torque(
    body: BodyModel,
    geom: MechanismGeometry,
    spring: SpringParams,
    theta_deg: float,
    moment_arm: float | None = None,
) -> TorqueBreakdown:
    """Device torque minus arm-weight torque at one joint angle."""
    l = body.upper_arm_length if moment_arm is None else moment_arm
    gamma_d = device_torque(geom, spring, theta_deg)
    gamma_w = arm_torque(body, l, theta_deg)
    return TorqueBreakdown(gamma_d=gamma_d, gamma_w=gamma_w, net=gamma_d - gamma_w)


def net_torque_curve(
    body: BodyModel,
    geom: MechanismGeometry,
    spring: SpringParams,
    theta_deg: np.ndarray,
    moment_arm: float | None = None,
) -> np.ndarray:
    """Vectorised net torque (N*m) over joint angles in degrees."""
    l = body.upper_arm_length if moment_arm is None else moment_arm
    gamma_d = device_torque_curve(geom, spring, theta_deg)
    theta = np.radians(np.asarray(theta_deg, dtype=np.float64))
    return gamma_d - l * body.arm_mass * body.gravity * np.sin(theta)


def spring_energy(geom: MechanismGeometry, spring: SpringParams, theta_deg: float) -> float:
    """Elastic energy (J) stored in the spring at joint angle theta.

    U = 1/2 k x^2 + f0 x with x the deflection from the pretensioned
    origin. In constant-b mode the deflection is frozen, so the energy is
    angle-independent (the frozen model is not energy-consistent; it
    exists to reproduce the closed-form simplification).
    """
    b = cable_length(geom, theta_deg)
    b_spring = abs(geom.a - geom.delta_s) if geom.constant_b else b
    x = b_spring - spring.l0 + spring.pretension
    if x < -spring.l0:
        raise MechanismError(
            f"sbs: spring deflection {x} below -l0 = {-spring.l0} at theta = {theta_deg}"
        )
    return 0.5 * spring.k * x * x + spring.f0 * x
