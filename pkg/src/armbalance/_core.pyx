# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the per-angle mechanism evaluations.

Twin of ``_core_py``: same expressions, same evaluation order, same NaN
conventions for singular cable lengths and over-extended springs.
"""

from libc.math cimport NAN, cos, fabs, sin, sqrt

import numpy as np


def device_torque_curve(theta_rad, double a, double delta_s, double k,
                        double l0, double f0, double b0, bint constant_b):
    """Support torque (N*m) at each mechanism joint angle theta (rad)."""
    theta_arr = np.ascontiguousarray(theta_rad, dtype=np.float64)
    out_arr = np.empty(theta_arr.shape[0], dtype=np.float64)
    cdef double[::1] theta = theta_arr
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, n = theta.shape[0]
    cdef double b, b_spring, deflection, force
    cdef double b_frozen = fabs(a - delta_s)
    cdef double sin_theta
    for i in range(n):
        sin_theta = sin(theta[i])
        b = sqrt(a * a + delta_s * delta_s - 2.0 * a * delta_s * cos(theta[i]))
        b_spring = b_frozen if constant_b else b
        deflection = b_spring - l0 + b0
        force = k * deflection + f0
        if deflection < -l0:
            out[i] = NAN
        elif delta_s * sin_theta == 0.0:
            # zero numerator: zero torque even at b == 0 (the odd-symmetric
            # value, and the exact zero-free-length limit)
            out[i] = 0.0
        elif b == 0.0:
            out[i] = NAN
        else:
            out[i] = a * force * delta_s * sin_theta / b
    return out_arr


def balance_error_curve(phi_rad, double a, double delta_s, double k,
                        double l0, double f0, double b0, double moment_arm,
                        double mass, double gravity, bint constant_b):
    """Balancing force error (N) along the arm-normal axis per pose."""
    phi_arr = np.ascontiguousarray(phi_rad, dtype=np.float64)
    out_arr = np.empty(phi_arr.shape[0], dtype=np.float64)
    cdef double[::1] phi = phi_arr
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, n = phi.shape[0]
    cdef double sin_phi, cos_phi, b, b_spring, deflection, force
    cdef double b_frozen = fabs(a - delta_s)
    for i in range(n):
        sin_phi = sin(phi[i])
        cos_phi = cos(phi[i])
        b = sqrt(a * a + delta_s * delta_s - 2.0 * a * delta_s * sin_phi)
        b_spring = b_frozen if constant_b else b
        deflection = b_spring - l0 + b0
        force = k * deflection + f0
        if b == 0.0 or deflection < -l0:
            out[i] = NAN
        else:
            out[i] = a * force * delta_s * cos_phi / b / moment_arm - mass * gravity * cos_phi
    return out_arr
