import math

import numpy as np
import pytest

from armbalance.anthro import BODY_1PF, BODY_99PM
from armbalance.errors import MechanismError
from armbalance.gss import (
    GasSpringParams,
    default_gas_spring,
    gss_coverage,
    gss_force_at,
    gss_reachable,
    strut_length,
)
from armbalance.kinematics import Pose, RomLimits, rom_domain


def test_params_invariants():
    with pytest.raises(MechanismError):
        GasSpringParams(nominal_force=-1.0)
    with pytest.raises(MechanismError):
        GasSpringParams(nominal_length=0.5, stroke=(0.28, 0.44))
    with pytest.raises(MechanismError):
        GasSpringParams(attach_fraction=0.0)


def test_force_magnitude_at_nominal_length():
    body = BODY_1PF
    params = GasSpringParams(nominal_force=20.0, gas_stiffness=500.0)
    # find the arm angle whose strut length equals the nominal length
    lo, hi = -60.0, 5.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if strut_length(body, params, Pose(mid, 0.0)) < params.nominal_length:
            lo = mid
        else:
            hi = mid
    pose = Pose(0.5 * (lo + hi), 0.0)
    fx, fy = gss_force_at(body, params, pose)
    assert math.hypot(fx, fy) == pytest.approx(20.0, abs=1e-6)


def test_zero_stiffness_constant_force():
    body = BODY_1PF
    params = GasSpringParams(nominal_force=25.0, gas_stiffness=0.0)
    magnitudes = []
    for alpha in (-45.0, -30.0, -15.0):
        pose = Pose(alpha, 5.0)
        if gss_reachable(body, params, pose):
            fx, fy = gss_force_at(body, params, pose)
            magnitudes.append(math.hypot(fx, fy))
    assert len(magnitudes) >= 2
    assert np.ptp(magnitudes) <= 1e-12


def test_vertical_strut_has_no_lateral_force():
    body = BODY_1PF
    # anchor directly below the attachment point for the horizontal arm
    attach_x = body.half_chest_width + body.upper_arm_length
    attach_y = body.upper_trunk_height
    params = GasSpringParams(
        anchor_offset=(attach_x, attach_y - 0.35),
        nominal_force=20.0,
        nominal_length=0.35,
        stroke=(0.2, 0.5),
    )
    fx, fy = gss_force_at(body, params, Pose(0.0, 0.0))
    assert fx == pytest.approx(0.0, abs=1e-12)
    assert fy > 0.0


def test_force_direction_along_strut():
    body = BODY_99PM
    params = default_gas_spring(body)
    reachable = [
        float(a)
        for a in np.arange(-60.0, 5.5, 1.0)
        if gss_reachable(body, params, Pose(float(a), 0.0))
    ]
    assert reachable
    pose = Pose(reachable[len(reachable) // 2], -10.0)
    fx, fy = gss_force_at(body, params, pose)
    # recompute the strut direction in world coordinates
    beta = math.radians(pose.beta)
    alpha = math.radians(pose.alpha)
    ax, ay = params.anchor_offset
    px = body.half_chest_width + body.upper_arm_length * math.cos(alpha)
    py = body.upper_trunk_height + body.upper_arm_length * math.sin(alpha)
    sx, sy = px - ax, py - ay
    wx = math.cos(beta) * sx - math.sin(beta) * sy
    wy = math.sin(beta) * sx + math.cos(beta) * sy
    cross = fx * wy - fy * wx
    assert cross == pytest.approx(0.0, abs=1e-9)


def test_reachability_rules():
    body = BODY_1PF
    wide = GasSpringParams(stroke=(1e-6, 10.0), nominal_length=0.35, nominal_force=20.0)
    for alpha in np.arange(-60.0, 5.5, 5.0):
        assert gss_reachable(body, wide, Pose(float(alpha), 0.0))
    length = strut_length(body, wide, Pose(-30.0, 0.0))
    narrow = GasSpringParams(
        stroke=(length - 1e-4, length + 1e-4),
        nominal_length=length,
        nominal_force=20.0,
    )
    assert gss_reachable(body, narrow, Pose(-30.0, 0.0))
    assert not gss_reachable(body, narrow, Pose(-50.0, 0.0))
    assert not gss_reachable(body, narrow, Pose(0.0, 0.0))
    with pytest.raises(MechanismError):
        gss_force_at(body, narrow, Pose(0.0, 0.0))


def test_reachability_is_beta_independent():
    body = BODY_1PF
    params = default_gas_spring(body)
    for alpha in (-55.0, -30.0, -5.0):
        flags = {gss_reachable(body, params, Pose(alpha, beta)) for beta in (-20.0, 0.0, 20.0)}
        assert len(flags) == 1


def test_demo_coverage_below_sbs_for_both_anchors():
    limits = RomLimits()
    for body in (BODY_1PF, BODY_99PM):
        domain = rom_domain(body, limits, (-80.0, 80.0), 1.0)
        params = default_gas_spring(body)
        cov = gss_coverage(body, params, domain.alpha_values, domain.beta_values)
        assert 0.0 < cov < domain.coverage


def test_demo_coverage_tighter_for_larger_body():
    limits = RomLimits()
    domain = rom_domain(BODY_1PF, limits, (-80.0, 80.0), 1.0)
    cov_small = gss_coverage(
        BODY_1PF, default_gas_spring(BODY_1PF), domain.alpha_values, domain.beta_values
    )
    cov_large = gss_coverage(
        BODY_99PM, default_gas_spring(BODY_99PM), domain.alpha_values, domain.beta_values
    )
    assert cov_large < cov_small


def balance_error(body, params, alpha):
    pose = Pose(alpha, 0.0)
    fx, fy = gss_force_at(body, params, pose)
    phi = math.radians(alpha)
    f_ye = -fx * math.sin(phi) + fy * math.cos(phi)
    return f_ye - body.arm_mass * body.gravity * math.cos(phi)


def test_default_gas_spring_balances_one_arm_angle():
    body = BODY_1PF
    params = default_gas_spring(body)
    # exact balance where the strut passes through its nominal length
    lo, hi = -60.0, 5.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if strut_length(body, params, Pose(mid, 0.0)) < params.nominal_length:
            lo = mid
        else:
            hi = mid
    alpha_nom = 0.5 * (lo + hi)
    assert balance_error(body, params, alpha_nom) == pytest.approx(0.0, abs=1e-6)
    # single sign change along the arm axis, substantial error elsewhere
    errors = []
    for alpha in np.arange(-60.0, 5.5, 0.5):
        if gss_reachable(body, params, Pose(float(alpha), 0.0)):
            errors.append(balance_error(body, params, float(alpha)))
    errors = np.array(errors)
    signs = np.sign(errors)
    assert (np.diff(signs) != 0).sum() == 1
    assert np.abs(errors).max() > 1.0
