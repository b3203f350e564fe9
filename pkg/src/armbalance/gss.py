"""Gas-strut arm support, the simpler predecessor design.

A gas spring pushes along a straight line from a waist anchor to an
attachment point on the upper arm. The anchor is waist-mounted and moves
rigidly with the torso, so the strut length depends only on the arm
elevation relative to the torso; torso bend rotates the whole force
picture without changing it in the arm frame. Compensation is therefore
exact only where the strut force happens to match the gravity
requirement, and the admissible stroke window limits which arm angles
can be reached at all.

No quantitative data exists for the original hardware; the default
parameters are demo values chosen so that the qualitative comparison
holds (full compensation at a single arm angle, reach well below the
spring-cable design, tighter for larger bodies).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .anthro import BodyModel
from .errors import MechanismError
from .kinematics import Pose


@dataclass(frozen=True)
class GasSpringParams:
    """Strut geometry and force law.

    ``anchor_offset``: anchor position (x lateral, y up) in metres,
    relative to the waist pivot, in the torso frame. ``attach_fraction``:
    attachment point along the upper arm as a fraction of its length.
    Force magnitude is nominal_force + gas_stiffness*(nominal_length -
    strut length), valid while the strut length stays within ``stroke``.
    """

    anchor_offset: tuple[float, float] = (0.08, -0.10)
    attach_fraction: float = 1.0
    nominal_force: float = 18.0
    nominal_length: float = 0.36
    gas_stiffness: float = 300.0
    stroke: tuple[float, float] = (0.28, 0.44)

    def __post_init__(self):
        if not (0.0 < self.attach_fraction <= 1.0):
            raise MechanismError(
                f"gss: attach_fraction must lie in (0, 1], got {self.attach_fraction}"
            )
        if not (math.isfinite(self.nominal_force) and self.nominal_force > 0.0):
            raise MechanismError(f"gss: nominal_force must be positive, got {self.nominal_force}")
        lo, hi = self.stroke
        if not (lo < self.nominal_length < hi):
            raise MechanismError(
                f"gss: nominal_length {self.nominal_length} must lie strictly inside the "
                f"stroke interval {self.stroke}"
            )
        if not (math.isfinite(self.gas_stiffness) and self.gas_stiffness >= 0.0):
            raise MechanismError(f"gss: gas_stiffness must be >= 0, got {self.gas_stiffness}")


def _strut_torso_frame(
    body: BodyModel, params: GasSpringParams, alpha_deg: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Strut vector (anchor -> attachment) and length in the torso frame."""
    alpha = np.radians(np.asarray(alpha_deg, dtype=np.float64))
    reach = params.attach_fraction * body.upper_arm_length
    sx = body.half_chest_width + reach * np.cos(alpha) - params.anchor_offset[0]
    sy = body.upper_trunk_height + reach * np.sin(alpha) - params.anchor_offset[1]
    return sx, sy, np.hypot(sx, sy)


def strut_length(body: BodyModel, params: GasSpringParams, pose: Pose) -> float:
    """Current strut length (m); depends on alpha only."""
    _, _, length = _strut_torso_frame(body, params, np.array([pose.alpha]))
    return float(length[0])


def gss_reachable(body: BodyModel, params: GasSpringParams, pose: Pose) -> bool:
    """True iff the strut length lies within the stroke window."""
    length = strut_length(body, params, pose)
    return params.stroke[0] <= length <= params.stroke[1]


def gss_force_at(body: BodyModel, params: GasSpringParams, pose: Pose) -> tuple[float, float]:
    """World-frame force (N) applied at the attachment point.

    Magnitude follows the gas law around the nominal length; direction is
    along the strut from anchor to attachment, rotated into the world by
    the torso bend. Raises for poses outside the stroke window.
    """
    sx, sy, length_arr = _strut_torso_frame(body, params, np.array([pose.alpha]))
    length = float(length_arr[0])
    if not (params.stroke[0] <= length <= params.stroke[1]):
        raise MechanismError(
            f"gss: strut length {length:.4f} m outside stroke {params.stroke}; pose unreachable"
        )
    magnitude = params.nominal_force + params.gas_stiffness * (params.nominal_length - length)
    ux = float(sx[0]) / length
    uy = float(sy[0]) / length
    beta = math.radians(pose.beta)
    cos_b, sin_b = math.cos(beta), math.sin(beta)
    # rotate the torso-frame direction by the torso bend
    wx = cos_b * ux - sin_b * uy
    wy = sin_b * ux + cos_b * uy
    return magnitude * wx, magnitude * wy


def gss_coverage(body: BodyModel, params: GasSpringParams, alpha_values: np.ndarray,
                 beta_values: np.ndarray) -> float:
    """Reachable fraction of the (alpha, beta) grid under the stroke limit."""
    _, _, lengths = _strut_torso_frame(body, params, alpha_values)
    ok = (lengths >= params.stroke[0]) & (lengths <= params.stroke[1])
    # strut length is beta-independent, so each alpha column is all-or-nothing
    return float(ok.sum()) * len(beta_values) / (len(alpha_values) * len(beta_values))


def default_gas_spring(body: BodyModel, params: GasSpringParams | None = None) -> GasSpringParams:
    """Fill in the nominal force so the arm is balanced at exactly one pose.

    Finds the arm angle where the strut passes through its nominal length
    (bisection; the length is monotone in alpha over the flight range) and
    solves the force that cancels the gravity reference there at beta = 0.
    Falls back to the arm weight if no such angle exists.
    """
    base = params if params is not None else GasSpringParams()
    lo, hi = -60.0, 5.0

    def length_at(alpha):
        _, _, length = _strut_torso_frame(body, base, np.array([alpha]))
        return float(length[0])

    f_lo = length_at(lo) - base.nominal_length
    f_hi = length_at(hi) - base.nominal_length
    nominal_force = body.arm_mass * body.gravity
    if f_lo == 0.0 or f_hi == 0.0 or (f_lo < 0.0) != (f_hi < 0.0):
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            f_mid = length_at(mid) - base.nominal_length
            if f_mid == 0.0:
                lo = hi = mid
                break
            if (f_mid < 0.0) == (f_lo < 0.0):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        alpha_nom = 0.5 * (lo + hi)
        sx, sy, length = _strut_torso_frame(body, base, np.array([alpha_nom]))
        ux, uy = float(sx[0]) / float(length[0]), float(sy[0]) / float(length[0])
        phi = math.radians(alpha_nom)
        # component of the strut direction along the arm-normal axis
        lift = -math.sin(phi) * ux + math.cos(phi) * uy
        required = body.arm_mass * body.gravity * math.cos(phi)
        if lift > 0.05:
            nominal_force = required / lift
    return replace(base, nominal_force=nominal_force)
