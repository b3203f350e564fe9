"""Anthropometric body models.

Two anchor bodies span the target population: the 1st-percentile female
("1pf") and the 99th-percentile male ("99pm"). Intermediate users are
produced by linear interpolation between the anchors, which is an
approximation for sizing purposes, not population statistics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

GRAVITY = 9.81  # m/s^2


@dataclass(frozen=True)
class BodyModel:
    """Segment dimensions and arm mass of one user.

    Lengths in metres, mass in kilograms. ``upper_arm_length`` doubles as
    the default moment arm of the arm weight about the shoulder (the
    support attaches near the elbow); pass an explicit ``moment_arm`` to
    the torque routines to override that.
    """

    arm_mass: float
    upper_arm_length: float
    upper_trunk_height: float
    lower_trunk_height: float
    half_chest_width: float
    half_hip_width: float
    gravity: float = GRAVITY

    def __post_init__(self):
        for name in (
            "arm_mass",
            "upper_arm_length",
            "upper_trunk_height",
            "lower_trunk_height",
            "half_chest_width",
            "half_hip_width",
            "gravity",
        ):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise DomainError(f"anthro: {name} must be a finite number, got {value!r}")
            # arm_mass 0 is allowed as a synthetic limit (no-load checks);
            # every length must be strictly positive.
            if value < 0.0 or (value == 0.0 and name != "arm_mass"):
                raise DomainError(f"anthro: {name} must be positive, got {value}")


#: Anchor rows: 1st-percentile female and 99th-percentile male.
BODY_1PF = BodyModel(
    arm_mass=1.86,
    upper_arm_length=0.234,
    upper_trunk_height=0.269,
    lower_trunk_height=0.213,
    half_chest_width=0.138,
    half_hip_width=0.142,
)
BODY_99PM = BodyModel(
    arm_mass=6.56,
    upper_arm_length=0.312,
    upper_trunk_height=0.353,
    lower_trunk_height=0.265,
    half_chest_width=0.203,
    half_hip_width=0.214,
)


@dataclass(frozen=True)
class RomLimits:
    """Joint angle ranges (degrees) used during flight control.

    Only shoulder abduction and torso lateral bend enter the frontal-plane
    analysis; the other four ranges are carried for completeness.
    """

    torso_flexion: tuple[float, float] = (-30.0, 40.0)
    torso_lateral_bend: tuple[float, float] = (-20.0, 20.0)
    torso_rotation: tuple[float, float] = (-60.0, 60.0)
    shoulder_abduction: tuple[float, float] = (-60.0, 5.0)
    shoulder_flexion: tuple[float, float] = (-40.0, 0.0)
    shoulder_rotation: tuple[float, float] = (-5.0, 5.0)

    def __post_init__(self):
        for name in (
            "torso_flexion",
            "torso_lateral_bend",
            "torso_rotation",
            "shoulder_abduction",
            "shoulder_flexion",
            "shoulder_rotation",
        ):
            lo, hi = getattr(self, name)
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise DomainError(f"anthro: {name} interval must satisfy min <= max, got {(lo, hi)}")


def body_for_percentile(p: float) -> BodyModel:
    """Body for a population fraction p in [0, 1].

    p=0 returns the 1pf anchor exactly, p=1 the 99pm anchor; intermediate
    values interpolate every field linearly.
    """
    if not (isinstance(p, (int, float)) and math.isfinite(p)) or p < 0.0 or p > 1.0:
        raise DomainError(f"anthro: percentile fraction must lie in [0, 1], got {p!r}")
    if p == 0.0:
        return BODY_1PF
    if p == 1.0:
        return BODY_99PM

    def lerp(a: float, b: float) -> float:
        return a + p * (b - a)

    return BodyModel(
        arm_mass=lerp(BODY_1PF.arm_mass, BODY_99PM.arm_mass),
        upper_arm_length=lerp(BODY_1PF.upper_arm_length, BODY_99PM.upper_arm_length),
        upper_trunk_height=lerp(BODY_1PF.upper_trunk_height, BODY_99PM.upper_trunk_height),
        lower_trunk_height=lerp(BODY_1PF.lower_trunk_height, BODY_99PM.lower_trunk_height),
        half_chest_width=lerp(BODY_1PF.half_chest_width, BODY_99PM.half_chest_width),
        half_hip_width=lerp(BODY_1PF.half_hip_width, BODY_99PM.half_hip_width),
    )


def arm_weight(body: BodyModel) -> float:
    """Arm weight in newtons: mass times gravity."""
    return body.arm_mass * body.gravity
