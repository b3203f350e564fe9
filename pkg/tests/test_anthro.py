import numpy as np
import pytest

from armbalance.anthro import (
    BODY_1PF,
    BODY_99PM,
    BodyModel,
    RomLimits,
    arm_weight,
    body_for_percentile,
)
from armbalance.errors import DomainError

FIELDS = (
    "arm_mass",
    "upper_arm_length",
    "upper_trunk_height",
    "lower_trunk_height",
    "half_chest_width",
    "half_hip_width",
)


def test_anchor_rows():
    assert BODY_1PF.arm_mass == 1.86
    assert BODY_1PF.upper_arm_length == 0.234
    assert BODY_1PF.upper_trunk_height == 0.269
    assert BODY_1PF.lower_trunk_height == 0.213
    assert BODY_1PF.half_chest_width == 0.138
    assert BODY_1PF.half_hip_width == 0.142
    assert BODY_99PM.arm_mass == 6.56
    assert BODY_99PM.upper_arm_length == 0.312
    assert BODY_99PM.upper_trunk_height == 0.353
    assert BODY_99PM.lower_trunk_height == 0.265
    assert BODY_99PM.half_chest_width == 0.203
    assert BODY_99PM.half_hip_width == 0.214


def test_percentile_endpoints_exact():
    for field in FIELDS:
        assert getattr(body_for_percentile(0.0), field) == getattr(BODY_1PF, field)
        assert getattr(body_for_percentile(1.0), field) == getattr(BODY_99PM, field)


def test_percentile_midpoint():
    mid = body_for_percentile(0.5)
    assert mid.arm_mass == pytest.approx(4.21, abs=1e-12)


def test_percentile_monotone():
    ps = np.linspace(0.0, 1.0, 21)
    for field in FIELDS:
        values = [getattr(body_for_percentile(p), field) for p in ps]
        assert all(b >= a for a, b in zip(values, values[1:]))


def test_percentile_within_anchor_interval():
    rng = np.random.default_rng(7)
    for p in rng.uniform(0.0, 1.0, 50):
        body = body_for_percentile(float(p))
        for field in FIELDS:
            lo = getattr(BODY_1PF, field)
            hi = getattr(BODY_99PM, field)
            assert lo <= getattr(body, field) <= hi


@pytest.mark.parametrize("p", [-0.1, 1.5, float("nan")])
def test_percentile_domain_error(p):
    with pytest.raises(DomainError):
        body_for_percentile(p)


def test_arm_weight_values():
    assert arm_weight(BODY_1PF) == pytest.approx(18.2466, abs=1e-10)
    assert arm_weight(BODY_99PM) == pytest.approx(64.3536, abs=1e-10)
    zero = BodyModel(0.0, 0.234, 0.269, 0.213, 0.138, 0.142)
    assert arm_weight(zero) == 0.0


def test_arm_weight_linear_in_mass():
    rng = np.random.default_rng(3)
    for mass in rng.uniform(0.5, 8.0, 20):
        body = BodyModel(float(mass), 0.3, 0.3, 0.2, 0.15, 0.15)
        assert arm_weight(body) == pytest.approx(mass * 9.81, rel=1e-14)


def test_body_rejects_nonpositive_lengths():
    with pytest.raises(DomainError):
        BodyModel(1.0, 0.0, 0.3, 0.2, 0.1, 0.1)
    with pytest.raises(DomainError):
        BodyModel(-1.0, 0.3, 0.3, 0.2, 0.1, 0.1)


def test_rom_limit_defaults():
    limits = RomLimits()
    assert limits.torso_flexion == (-30.0, 40.0)
    assert limits.torso_lateral_bend == (-20.0, 20.0)
    assert limits.torso_rotation == (-60.0, 60.0)
    assert limits.shoulder_abduction == (-60.0, 5.0)
    assert limits.shoulder_flexion == (-40.0, 0.0)
    assert limits.shoulder_rotation == (-5.0, 5.0)


def test_rom_limits_reject_inverted_interval():
    with pytest.raises(DomainError):
        RomLimits(shoulder_abduction=(5.0, -60.0))
