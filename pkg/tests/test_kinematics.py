import math

import numpy as np
import pytest

from armbalance.anthro import BODY_1PF, BODY_99PM, BodyModel, RomLimits
from armbalance.errors import DomainError, GeometryError
from armbalance.kinematics import Pose, elbow_position, rom_domain, theta


def chain_oracle(body, alpha_deg):
    """Independent two-segment planar chain (waist pivot -> shoulder -> elbow)."""
    a = math.radians(alpha_deg)
    sx = body.half_chest_width
    sy = body.upper_trunk_height
    ex = sx + body.upper_arm_length * math.cos(a)
    ey = sy + body.upper_arm_length * math.sin(a)
    return ex - body.half_hip_width, ey + body.lower_trunk_height


def test_d1_value_1pf():
    sol = elbow_position(BODY_1PF, 0.0)
    assert sol.d1 == pytest.approx(0.30233, abs=5e-6)
    assert sol.d1 == math.hypot(0.269, 0.138)


def test_d1_independent_of_alpha():
    values = {elbow_position(BODY_1PF, a).d1 for a in (-60.0, -30.0, 0.0, 5.0)}
    assert len(values) == 1


@pytest.mark.parametrize("body", [BODY_1PF, BODY_99PM])
def test_chain_oracle_agreement(body):
    for alpha in np.arange(-60.0, 5.0 + 0.5, 1.0):
        sol = elbow_position(body, float(alpha))
        ox, oy = chain_oracle(body, float(alpha))
        assert abs(sol.x - ox) <= 1e-9
        assert abs(sol.y - oy) <= 1e-9


def test_collinear_degenerate_99pm():
    # arm aligned with the waist-shoulder diagonal extended: d2 = d1 + L_a
    sol0 = elbow_position(BODY_99PM, 0.0)
    alpha = 90.0 - sol0.gamma1
    sol = elbow_position(BODY_99PM, alpha)
    assert sol.d2 == pytest.approx(sol.d1 + BODY_99PM.upper_arm_length, abs=1e-12)
    assert sol.gamma2 == pytest.approx(0.0, abs=1e-5)


def test_triangle_inequalities():
    for body in (BODY_1PF, BODY_99PM):
        d1 = elbow_position(body, 0.0).d1
        for alpha in np.arange(-90.0, 90.0 + 0.5, 5.0):
            sol = elbow_position(body, float(alpha))
            la = body.upper_arm_length
            assert abs(la - d1) - 1e-12 <= sol.d2 <= la + d1 + 1e-12


def test_literal_form_reproduces_published_expressions():
    body = BODY_1PF
    alpha_deg = -25.0
    sol = elbow_position(body, alpha_deg, literal_form=True)
    a = math.radians(alpha_deg)
    ang = a + math.radians(sol.gamma1) + math.radians(sol.gamma2)
    assert sol.x == pytest.approx(sol.d2**2 * math.sin(ang) - body.half_hip_width, abs=1e-15)
    assert sol.y == pytest.approx(sol.d2**2 * math.cos(ang) + body.lower_trunk_height, abs=1e-15)
    # the literal form is not the chain position (squared diagonal, extra alpha)
    ox, _ = chain_oracle(body, alpha_deg)
    assert abs(sol.x - ox) > 1e-3


def test_degenerate_elbow_at_pivot_rejected():
    # upper arm exactly spans the waist-shoulder diagonal folded back onto it
    body = BodyModel(1.0, 0.5, 0.3, 0.2, 0.4, 0.1)
    gamma1 = math.degrees(math.atan(0.4 / 0.3))
    with pytest.raises(GeometryError):
        elbow_position(body, -90.0 - gamma1)


def test_theta_convention():
    assert theta(Pose(0.0, 0.0)) == 90.0
    assert theta(Pose(-30.0, 10.0)) == 110.0
    # sin(theta) must reproduce the cos(alpha+beta) gravity projection
    rng = np.random.default_rng(11)
    for _ in range(25):
        pose = Pose(float(rng.uniform(-80, 20)), float(rng.uniform(-20, 20)))
        assert math.sin(math.radians(theta(pose))) == pytest.approx(
            math.cos(math.radians(pose.alpha + pose.beta)), abs=1e-12
        )


def test_theta_weight_torque_matches_cross_product_oracle():
    rng = np.random.default_rng(4)
    for _ in range(25):
        pose = Pose(float(rng.uniform(-80, 20)), float(rng.uniform(-20, 20)))
        m, l, g = 3.1, 0.27, 9.81
        phi = math.radians(pose.alpha + pose.beta)
        rx, ry = l * math.cos(phi), l * math.sin(phi)
        cross = rx * (-m * g) - ry * 0.0  # r x F, gravity force (0, -mg)
        torque_from_theta = math.sin(math.radians(theta(pose))) * l * m * g
        assert torque_from_theta == pytest.approx(abs(cross), rel=1e-12)


def test_pose_rejects_non_finite():
    with pytest.raises(DomainError):
        Pose(float("nan"), 0.0)


def brute_force_coverage(limits, joint_range, resolution):
    a_lo, a_hi = limits.shoulder_abduction
    b_lo, b_hi = limits.torso_lateral_bend
    n_a = int(math.floor((a_hi - a_lo) / resolution + 1e-9)) + 1
    n_b = int(math.floor((b_hi - b_lo) / resolution + 1e-9)) + 1
    hits = 0
    for i in range(n_a):
        for j in range(n_b):
            elev = (a_lo + i * resolution) + (b_lo + j * resolution)
            if joint_range[0] <= elev <= joint_range[1]:
                hits += 1
    return hits / (n_a * n_b)


def test_rom_domain_unconstrained():
    domain = rom_domain(BODY_1PF, RomLimits(), (-180.0, 180.0), 1.0)
    assert domain.coverage == 1.0
    assert domain.mask.shape == (66, 41)


def test_rom_domain_matches_brute_force():
    limits = RomLimits()
    domain = rom_domain(BODY_1PF, limits, (-80.0, 80.0), 1.0)
    assert domain.coverage == brute_force_coverage(limits, (-80.0, 80.0), 1.0)
    tight = rom_domain(BODY_1PF, limits, (-40.0, 10.0), 1.0)
    assert tight.coverage == brute_force_coverage(limits, (-40.0, 10.0), 1.0)


def test_rom_domain_infeasible():
    domain = rom_domain(BODY_1PF, RomLimits(), (100.0, 120.0), 1.0)
    assert domain.coverage == 0.0


def test_coverage_monotone_in_joint_range():
    limits = RomLimits()
    prev = 0.0
    for half_width in (10.0, 30.0, 50.0, 80.0, 120.0):
        cov = rom_domain(BODY_1PF, limits, (-half_width, half_width), 1.0).coverage
        assert cov >= prev
        prev = cov


def test_grid_convergence():
    limits = RomLimits()
    coverages = [
        rom_domain(BODY_1PF, limits, (-40.0, 10.0), res).coverage for res in (2.0, 1.0, 0.5)
    ]
    assert abs(coverages[0] - coverages[1]) < 0.01
    assert abs(coverages[1] - coverages[2]) < 0.01


def test_rom_domain_rejects_bad_inputs():
    with pytest.raises(DomainError):
        rom_domain(BODY_1PF, RomLimits(), (-80.0, 80.0), 0.0)
    with pytest.raises(DomainError):
        rom_domain(BODY_1PF, RomLimits(), (80.0, -80.0), 1.0)


def test_grid_values_by_integer_index():
    domain = rom_domain(BODY_1PF, RomLimits(), (-80.0, 80.0), 0.5)
    alpha = domain.alpha_values
    assert alpha[0] == -60.0
    assert alpha[-1] == pytest.approx(5.0, abs=1e-12)
    assert len(alpha) == 131
    # no repeated addition: value i is min + i*step exactly
    assert alpha[100] == -60.0 + 0.5 * 100
