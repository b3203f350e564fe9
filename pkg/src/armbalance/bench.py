"""Virtual test bench: theoretical torque sweeps and measured-data comparison.

The sweep reproduces the torque-vs-angle characterisation: for each
grounding-part setting the device torque is evaluated over the bench
angle range, with an uncertainty band from the manufacturing tolerance
on the spring constant. Measured curves (with hysteresis branches) are
ingested from CSV, never simulated; the relative error compares them to
the interpolated theoretical curve.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace

import numpy as np

from . import sbs
from .errors import DomainError, ParseError, ValidationError

#: Angles where the theoretical torque is below this are excluded from
#: relative error (the division is a presentation artefact there).
RELATIVE_ERROR_TORQUE_FLOOR = 1e-6  # N*m


@dataclass(frozen=True)
class SweepSpec:
    """Bench sweep layout.

    The default angle range is the protected bench range; the grounding
    settings run over the full adjustable travel. ``k_tolerance`` is the
    fractional spring-constant tolerance that defines the band.
    """

    angle_range: tuple[float, float] = (-69.0, 63.0)
    angle_step: float = 1.0
    delta_s_values: tuple[float, ...] = (0.01, 0.02, 0.03, 0.04, 0.05, 0.06)
    k_tolerance: float = 0.10

    def __post_init__(self):
        lo, hi = self.angle_range
        if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
            raise DomainError(f"bench: empty angle range {self.angle_range}")
        if not (math.isfinite(self.angle_step) and self.angle_step > 0.0):
            raise DomainError(f"bench: angle step must be positive, got {self.angle_step}")
        if not (0.0 <= self.k_tolerance < 1.0):
            raise DomainError(f"bench: k tolerance must lie in [0, 1), got {self.k_tolerance}")
        for ds in self.delta_s_values:
            if not (sbs.DELTA_S_MIN <= ds <= sbs.DELTA_S_MAX):
                raise DomainError(
                    f"bench: grounding travel {ds} outside "
                    f"[{sbs.DELTA_S_MIN}, {sbs.DELTA_S_MAX}]"
                )

    def angles(self) -> np.ndarray:
        lo, hi = self.angle_range
        n = int(math.floor((hi - lo) / self.angle_step + 1e-9)) + 1
        return lo + self.angle_step * np.arange(n)


@dataclass(frozen=True, eq=False)
class TorqueCurve:
    """Theoretical torque over bench angles for one grounding setting."""

    delta_s: float
    angles: np.ndarray       # degrees
    torque: np.ndarray       # N*m
    band_low: np.ndarray     # torque with k*(1 - tol)
    band_high: np.ndarray    # torque with k*(1 + tol)


@dataclass(frozen=True, eq=False)
class MeasuredCurve:
    """One hysteresis branch of an ingested bench measurement."""

    angles: np.ndarray
    torque: np.ndarray
    direction: str  # "loading" | "unloading"


def theoretical_sweep(
    geom: sbs.MechanismGeometry,
    spring: sbs.SpringParams,
    spec: SweepSpec = SweepSpec(),
) -> list[TorqueCurve]:
    """One torque curve per grounding setting, with tolerance bands.

    The bands are the torque evaluated with the spring constant scaled by
    1 -/+ tolerance; with f0 = 0 the torque is proportional to k, so the
    high/low ratio is exactly (1+tol)/(1-tol) wherever the torque is
    non-zero.
    """
    lo, hi = spec.angle_range
    j_lo, j_hi = geom.joint_range
    if lo < j_lo or hi > j_hi:
        raise DomainError(
            f"bench: sweep range {spec.angle_range} exceeds the mechanism joint range "
            f"{geom.joint_range}"
        )
    angles = spec.angles()
    spring_low = replace(spring, k=spring.k * (1.0 - spec.k_tolerance))
    spring_high = replace(spring, k=spring.k * (1.0 + spec.k_tolerance))
    curves = []
    for ds in spec.delta_s_values:
        g = replace(geom, delta_s=ds)
        curves.append(
            TorqueCurve(
                delta_s=ds,
                angles=angles.copy(),
                torque=sbs.device_torque_curve(g, spring, angles),
                band_low=sbs.device_torque_curve(g, spring_low, angles),
                band_high=sbs.device_torque_curve(g, spring_high, angles),
            )
        )
    return curves


def ingest_measured(path) -> list[MeasuredCurve]:
    """Parse a measured-torque CSV into per-direction branches.

    Expected header: ``angle_deg,torque_nm,direction`` with direction
    ``loading`` or ``unloading``. Rows are grouped by direction in file
    order; angles must be strictly monotone within each branch.
    """
    branches: dict[str, tuple[list[float], list[float]]] = {}
    order: list[str] = []
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["angle_deg", "torque_nm", "direction"]:
            raise ParseError(
                f"bench: {path}: expected header 'angle_deg,torque_nm,direction', got {header}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 3:
                raise ParseError(f"bench: {path}:{lineno}: expected 3 fields, got {len(row)}")
            try:
                angle = float(row[0])
                torque = float(row[1])
            except ValueError as exc:
                raise ParseError(f"bench: {path}:{lineno}: {exc}") from None
            direction = row[2].strip()
            if direction not in ("loading", "unloading"):
                raise ParseError(
                    f"bench: {path}:{lineno}: direction must be 'loading' or 'unloading', "
                    f"got {direction!r}"
                )
            if direction not in branches:
                branches[direction] = ([], [])
                order.append(direction)
            branches[direction][0].append(angle)
            branches[direction][1].append(torque)

    curves = []
    for direction in order:
        angles, torque = branches[direction]
        a = np.array(angles)
        steps = np.diff(a)
        if len(a) > 1 and not (np.all(steps > 0.0) or np.all(steps < 0.0)):
            raise ValidationError(
                f"bench: {path}: angles in branch {direction!r} are not strictly monotone"
            )
        curves.append(MeasuredCurve(angles=a, torque=np.array(torque), direction=direction))
    return curves


def relative_error(measured: MeasuredCurve, theoretical: TorqueCurve) -> np.ndarray:
    """(theoretical - measured) / theoretical at each measured angle.

    The theoretical curve is linearly interpolated. Entries are NaN
    (undefined) where the measured angle falls outside the sweep range or
    where the theoretical torque is below the near-zero floor.
    """
    t_angles = theoretical.angles
    lo, hi = float(t_angles[0]), float(t_angles[-1])
    inside = (measured.angles >= lo) & (measured.angles <= hi)
    if not inside.any():
        raise DomainError(
            f"bench: measured branch {measured.direction!r} spanning "
            f"[{measured.angles.min()}, {measured.angles.max()}] deg does not overlap the "
            f"theoretical range [{lo}, {hi}] deg"
        )
    theo = np.interp(measured.angles, t_angles, theoretical.torque)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = (theo - measured.torque) / theo
    rel = np.where(inside & (np.abs(theo) >= RELATIVE_ERROR_TORQUE_FLOOR), rel, np.nan)
    return rel
