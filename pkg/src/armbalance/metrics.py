"""Force decomposition in the arm-local frame and error fields over the ROM.

The support force applied at the arm attachment is projected onto the
arm axis (X_e, parasitic, slides the cuff along the skin) and its normal
(Y_e, the balancing direction). The balancing error is the Y_e component
minus the gravity reference m*g*cos(alpha+beta); normalising by the arm
mass gives the two comparison metrics:

    torque error  =  F_err_Ye * L_a / A_m   (N*m/kg)
    parasitic     =  F_Xe / A_m             (N/kg)

Field evaluation walks the ROM grid cell by cell; cells outside the
domain mask or where the mechanism produces no value stay NaN (never
zero, so statistics are not corrupted). Grid evaluation is data-parallel
with a fixed reduction order, so repeated runs are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend, gss, sbs
from .anthro import BodyModel
from .errors import DomainError
from .kinematics import Pose, RomDomain


@dataclass(frozen=True)
class ForceDecomposition:
    """Applied force in the arm frame plus the gravity reference (N)."""

    f_ye: float
    f_xe: float
    f_ye_ref: float
    f_xe_ref: float
    f_err_ye: float


@dataclass(frozen=True)
class SbsSupport:
    """Spring-cable mechanism bundle used for field evaluation."""

    geometry: sbs.MechanismGeometry
    spring: sbs.SpringParams


def gravity_reference(body: BodyModel, pose: Pose) -> tuple[float, float]:
    """Required balancing component and gravity's own axial projection (N)."""
    phi = math.radians(pose.alpha + pose.beta)
    w = body.arm_mass * body.gravity
    return math.cos(phi) * w, math.sin(phi) * w


def decompose(body: BodyModel, force: tuple[float, float], pose: Pose) -> ForceDecomposition:
    """Rotate a world-frame applied force into the arm-local frame."""
    fx, fy = force
    if not (math.isfinite(fx) and math.isfinite(fy)):
        raise DomainError(f"metrics: force vector must be finite, got {force}")
    phi = math.radians(pose.alpha + pose.beta)
    sin_phi, cos_phi = math.sin(phi), math.cos(phi)
    f_xe = fx * cos_phi + fy * sin_phi
    f_ye = -fx * sin_phi + fy * cos_phi
    f_ye_ref, f_xe_ref = gravity_reference(body, pose)
    return ForceDecomposition(
        f_ye=f_ye,
        f_xe=f_xe,
        f_ye_ref=f_ye_ref,
        f_xe_ref=f_xe_ref,
        f_err_ye=f_ye - f_ye_ref,
    )


def torque_error_norm(decomp: ForceDecomposition, body: BodyModel) -> float:
    """Balancing torque error normalised by arm mass (N*m/kg)."""
    return decomp.f_err_ye * body.upper_arm_length / body.arm_mass


def parasitic_norm(decomp: ForceDecomposition, body: BodyModel) -> float:
    """Axial parasitic force normalised by arm mass (N/kg)."""
    return decomp.f_xe / body.arm_mass


METRICS = ("torque_error", "parasitic")


@dataclass(frozen=True, eq=False)
class FieldMap:
    """Per-pose metric values over a ROM grid with summary statistics.

    ``values`` has the domain grid shape; NaN marks cells that are outside
    the domain mask or that the mechanism could not serve.
    ``undefined_cells`` counts masked-in cells without a value. Statistics
    cover defined cells only.
    """

    domain: RomDomain
    metric: str
    mechanism: str
    values: np.ndarray
    mean: float
    max_abs: float
    min: float
    max: float
    undefined_cells: int

    @property
    def coverage(self) -> float:
        """Fraction of all grid cells with a defined value."""
        return float(np.isfinite(self.values).sum()) / float(self.values.size)


def _finalise(domain, metric, mechanism, values, undefined) -> FieldMap:
    flat = values.ravel()  # row-major, fixed reduction order
    defined = flat[np.isfinite(flat)]
    if defined.size:
        vmin = float(defined.min())
        vmax = float(defined.max())
        stats = dict(mean=float(defined.mean()), max_abs=max(abs(vmin), abs(vmax)), min=vmin, max=vmax)
    else:
        stats = dict(mean=math.nan, max_abs=math.nan, min=math.nan, max=math.nan)
    values = values.copy()
    values.setflags(write=False)
    return FieldMap(
        domain=domain,
        metric=metric,
        mechanism=mechanism,
        values=values,
        undefined_cells=int(undefined),
        **stats,
    )


def _sbs_field(support: SbsSupport, body, domain, metric, moment_arm):
    geom, spring = support.geometry, support.spring
    l = body.upper_arm_length if moment_arm is None else moment_arm
    phi = np.radians(domain.elevation_grid()[domain.mask])
    if metric == "torque_error":
        err = backend.balance_error_curve(
            np.ascontiguousarray(phi),
            geom.a, geom.delta_s, spring.k, spring.l0, spring.f0,
            spring.pretension, l, body.arm_mass, body.gravity, geom.constant_b,
        )
        cell = err * (body.upper_arm_length / body.arm_mass)
    else:
        theta = np.degrees(np.pi / 2.0 - phi)
        gamma_d = sbs.device_torque_curve(geom, spring, theta)
        amp = gamma_d / l
        sin_phi, cos_phi = np.sin(phi), np.cos(phi)
        fx, fy = -amp * sin_phi, amp * cos_phi
        f_xe = fx * cos_phi + fy * sin_phi
        cell = f_xe / body.arm_mass
    values = np.full(domain.mask.shape, np.nan)
    values[domain.mask] = cell
    return _finalise(domain, metric, "sbs", values, np.isnan(cell).sum())


def _gss_field(params: gss.GasSpringParams, body, domain, metric, moment_arm):
    del moment_arm  # strut force acts directly at its attachment point
    alpha = domain.alpha_values
    beta = domain.beta_values
    sx, sy, lengths = gss._strut_torso_frame(body, params, alpha)
    in_stroke = (lengths >= params.stroke[0]) & (lengths <= params.stroke[1])
    magnitude = params.nominal_force + params.gas_stiffness * (params.nominal_length - lengths)
    # torso-frame projections; rotating force and frame together by beta
    # leaves them unchanged, so only the gravity reference sees beta
    alpha_rad = np.radians(alpha)
    sin_a, cos_a = np.sin(alpha_rad), np.cos(alpha_rad)
    with np.errstate(invalid="ignore"):
        ux, uy = sx / lengths, sy / lengths
    f_xe_col = magnitude * (ux * cos_a + uy * sin_a)
    f_ye_col = magnitude * (-ux * sin_a + uy * cos_a)

    phi = np.radians(alpha[:, None] + beta[None, :])
    w = body.arm_mass * body.gravity
    if metric == "torque_error":
        err = f_ye_col[:, None] - w * np.cos(phi)
        field = err * (body.upper_arm_length / body.arm_mass)
    else:
        field = np.broadcast_to(f_xe_col[:, None] / body.arm_mass, phi.shape).copy()
    values = np.where(domain.mask & in_stroke[:, None], field, np.nan)
    undefined = int((domain.mask & ~in_stroke[:, None]).sum())
    return _finalise(domain, metric, "gss", values, undefined)


def evaluate_field(
    mechanism: SbsSupport | gss.GasSpringParams,
    body: BodyModel,
    domain: RomDomain,
    metric: str,
    moment_arm: float | None = None,
) -> FieldMap:
    """Evaluate one metric for one mechanism over a ROM grid."""
    if metric not in METRICS:
        raise DomainError(f"metrics: unknown metric {metric!r}, expected one of {METRICS}")
    if isinstance(mechanism, SbsSupport):
        return _sbs_field(mechanism, body, domain, metric, moment_arm)
    if isinstance(mechanism, gss.GasSpringParams):
        return _gss_field(mechanism, body, domain, metric, moment_arm)
    raise DomainError(f"metrics: unsupported mechanism type {type(mechanism).__name__}")
