"""Pure-numpy kernels, the fallback twin of the compiled ``_core`` extension.

Both implementations evaluate the same expressions in the same order; they
may differ by a few ulp because numpy's vectorised sin/cos are not libm.
Cells that hit a singular cable length (b == 0) or drive the spring past
its free length come back as NaN; callers decide whether that is an error
or an unreachable cell.
"""

from __future__ import annotations

import numpy as np


def device_torque_curve(
    theta_rad: np.ndarray,
    a: float,
    delta_s: float,
    k: float,
    l0: float,
    f0: float,
    b0: float,
    constant_b: bool,
) -> np.ndarray:
    """Support torque (N*m) at each mechanism joint angle theta (rad).

    b is the cable length between the two lever anchors; the spring force
    follows F = k*deflection + f0 with deflection = b - l0 + b0. In
    constant-b mode the deflection is frozen at the theta=0 cable length
    while the geometric moment ratio keeps the exact b.
    """
    theta = np.asarray(theta_rad, dtype=np.float64)
    sin_theta = np.sin(theta)
    b = np.sqrt(a * a + delta_s * delta_s - 2.0 * a * delta_s * np.cos(theta))
    b_spring = np.full_like(b, abs(a - delta_s)) if constant_b else b
    deflection = b_spring - l0 + b0
    force = k * deflection + f0
    with np.errstate(divide="ignore", invalid="ignore"):
        torque = a * force * delta_s * sin_theta / b
    # a zero numerator means zero torque even at b == 0 (the odd-symmetric
    # value, and the exact zero-free-length limit)
    torque = np.where(delta_s * sin_theta == 0.0, 0.0, torque)
    bad = ((b == 0.0) & (delta_s * sin_theta != 0.0)) | (deflection < -l0)
    if bad.any():
        torque = np.where(bad, np.nan, torque)
    return torque


def balance_error_curve(
    phi_rad: np.ndarray,
    a: float,
    delta_s: float,
    k: float,
    l0: float,
    f0: float,
    b0: float,
    moment_arm: float,
    mass: float,
    gravity: float,
    constant_b: bool,
) -> np.ndarray:
    """Balancing force error (N) along the arm-normal axis per pose.

    phi is the absolute arm elevation (rad, 0 = horizontal); the mechanism
    joint angle is 90 deg - phi, so sin(theta) = cos(phi) and
    cos(theta) = sin(phi). The error is the support force at the
    attachment point minus the gravity reference m*g*cos(phi).
    """
    phi = np.asarray(phi_rad, dtype=np.float64)
    sin_phi = np.sin(phi)
    cos_phi = np.cos(phi)
    b = np.sqrt(a * a + delta_s * delta_s - 2.0 * a * delta_s * sin_phi)
    b_spring = np.full_like(b, abs(a - delta_s)) if constant_b else b
    deflection = b_spring - l0 + b0
    force = k * deflection + f0
    with np.errstate(divide="ignore", invalid="ignore"):
        err = a * force * delta_s * cos_phi / b / moment_arm - mass * gravity * cos_phi
    bad = (b == 0.0) | (deflection < -l0)
    if bad.any():
        err = np.where(bad, np.nan, err)
    return err
