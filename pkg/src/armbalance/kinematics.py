"""Frontal-plane kinematics of the hip-torso-shoulder-elbow chain.

The torso pivots laterally at the waist by beta; the arm elevates by
alpha relative to the torso (0 = horizontal when upright), so the
absolute arm elevation is alpha + beta. The elbow position for a given
alpha follows from the waist-shoulder diagonal d1 and the law of cosines
in the waist-shoulder-elbow triangle.

The published closed form for the elbow coordinates squares d2 and adds
alpha inside the projection angle; both disagree with the direct
two-segment chain (the exponent is dimensionally wrong, and the d2
diagonal direction is gamma1 + gamma2 independent of alpha). The
corrected form is the default; ``literal_form=True`` reproduces the
published expressions verbatim for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .anthro import BodyModel, RomLimits
from .errors import DomainError, GeometryError

#: Tolerance for clamping law-of-cosines arguments onto [-1, 1].
_COS_CLAMP = 1e-9


@dataclass(frozen=True)
class Pose:
    """Shoulder elevation alpha and torso lateral bend beta, degrees."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise DomainError(f"kinematics: pose angles must be finite, got {(self.alpha, self.beta)}")


def elevation(pose: Pose) -> float:
    """Absolute arm elevation from horizontal, degrees: alpha + beta."""
    return pose.alpha + pose.beta


def theta(pose: Pose) -> float:
    """Mechanism joint angle (degrees) for a pose: 90 - (alpha + beta).

    Measured from the torso-segment axis above the shoulder, so that
    sin(theta) equals the cos(alpha+beta) gravity projection and the
    spring relaxes as the arm rises (the energy-consistent orientation).
    """
    return 90.0 - (pose.alpha + pose.beta)


@dataclass(frozen=True)
class ElbowSolution:
    """Diagonals, auxiliary angles (degrees) and elbow coordinates (m)."""

    d1: float
    gamma1: float
    d2: float
    gamma2: float
    x: float
    y: float


def _clamped_acos(value: float, what: str) -> float:
    if value > 1.0 + _COS_CLAMP or value < -1.0 - _COS_CLAMP:
        raise GeometryError(
            f"kinematics: cos-law argument for {what} is {value}, outside [-1, 1] "
            f"beyond the {_COS_CLAMP} clamp"
        )
    return math.acos(min(1.0, max(-1.0, value)))


def elbow_position(body: BodyModel, alpha_deg: float, literal_form: bool = False) -> ElbowSolution:
    """Elbow position for shoulder elevation alpha (degrees, torso frame).

    Coordinates are relative to the hip joint: x lateral (offset by the
    half hip width), y vertical (offset by the lower trunk height below
    the waist pivot).
    """
    alpha = math.radians(alpha_deg)
    u_th = body.upper_trunk_height
    c_w = body.half_chest_width
    l_a = body.upper_arm_length

    d1 = math.sqrt(u_th * u_th + c_w * c_w)
    gamma1 = math.atan(c_w / u_th)
    d2_sq = l_a * l_a + d1 * d1 - 2.0 * l_a * d1 * math.cos(math.pi / 2.0 + gamma1 + alpha)
    if d2_sq < 0.0:
        if d2_sq < -_COS_CLAMP:
            raise GeometryError(f"kinematics: negative squared diagonal d2^2 = {d2_sq}")
        d2_sq = 0.0
    d2 = math.sqrt(d2_sq)
    if d2 == 0.0:
        raise GeometryError("kinematics: elbow coincides with the waist pivot (d2 = 0)")
    gamma2 = _clamped_acos((d1 * d1 + d2 * d2 - l_a * l_a) / (2.0 * d1 * d2), "gamma2")

    if literal_form:
        angle = alpha + gamma1 + gamma2
        radial = d2 * d2
    else:
        angle = gamma1 + gamma2
        radial = d2
    x = radial * math.sin(angle) - body.half_hip_width
    y = radial * math.cos(angle) + body.lower_trunk_height

    return ElbowSolution(
        d1=d1,
        gamma1=math.degrees(gamma1),
        d2=d2,
        gamma2=math.degrees(gamma2),
        x=x,
        y=y,
    )


@dataclass(frozen=True, eq=False)
class RomDomain:
    """Discretised (alpha, beta) grid with a reachability mask.

    The grids run from each range minimum in ``resolution`` steps,
    generated by integer index for bit-stability. ``mask[i, j]`` is True
    where pose (alpha_i, beta_j) is mechanically reachable; ``coverage``
    is the reachable fraction of all cells.
    """

    alpha_range: tuple[float, float]
    beta_range: tuple[float, float]
    resolution: float
    mask: np.ndarray
    coverage: float

    @property
    def alpha_values(self) -> np.ndarray:
        return self.alpha_range[0] + self.resolution * np.arange(self.mask.shape[0])

    @property
    def beta_values(self) -> np.ndarray:
        return self.beta_range[0] + self.resolution * np.arange(self.mask.shape[1])

    def elevation_grid(self) -> np.ndarray:
        """alpha + beta (degrees) for every cell, shape (n_alpha, n_beta)."""
        return self.alpha_values[:, None] + self.beta_values[None, :]


def _grid_size(lo: float, hi: float, resolution: float, axis: str) -> int:
    span = hi - lo
    if span < 0.0:
        raise DomainError(f"kinematics: empty {axis} range {(lo, hi)}")
    # floor with a guard so that exactly divisible spans are not truncated
    # by floating-point noise
    return int(math.floor(span / resolution + 1e-9)) + 1


def rom_domain(
    body: BodyModel,
    limits: RomLimits,
    mech_joint_range: tuple[float, float] = (-80.0, 80.0),
    resolution: float = 1.0,
) -> RomDomain:
    """Reachability map of the flight range of motion.

    alpha spans the shoulder abduction range, beta the torso lateral bend
    range. A cell is reachable iff the arm-segment angle relative to the
    torso segment, alpha + beta, lies within ``mech_joint_range``
    (inclusive). The planar rule does not depend on the body; the body
    argument is part of the interface for mechanisms whose reach does.
    """
    del body  # reachability rule is body-independent in the planar model
    if not (math.isfinite(resolution) and resolution > 0.0):
        raise DomainError(f"kinematics: resolution must be positive, got {resolution}")
    a_lo, a_hi = limits.shoulder_abduction
    b_lo, b_hi = limits.torso_lateral_bend
    if a_hi < a_lo or b_hi < b_lo:
        raise DomainError("kinematics: empty angle range in ROM limits")
    j_lo, j_hi = mech_joint_range
    if j_hi < j_lo:
        raise DomainError(f"kinematics: empty mechanism joint range {mech_joint_range}")

    n_alpha = _grid_size(a_lo, a_hi, resolution, "alpha")
    n_beta = _grid_size(b_lo, b_hi, resolution, "beta")
    alpha = a_lo + resolution * np.arange(n_alpha)
    beta = b_lo + resolution * np.arange(n_beta)
    elev = alpha[:, None] + beta[None, :]
    mask = (elev >= j_lo) & (elev <= j_hi)
    mask.setflags(write=False)
    return RomDomain(
        alpha_range=(a_lo, a_hi),
        beta_range=(b_lo, b_hi),
        resolution=float(resolution),
        mask=mask,
        coverage=float(mask.sum()) / float(mask.size),
    )
