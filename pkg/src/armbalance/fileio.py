"""Deterministic file emission.

Every writer produces byte-identical output for identical inputs: fixed
9-significant-digit formatting with a locale-independent decimal point,
LF newlines, fixed row order (row-major, alpha varying fastest), and no
timestamps. Undefined values are emitted as empty fields.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .bench import MeasuredCurve, TorqueCurve
from .kinematics import RomDomain
from .metrics import FieldMap
from .optimizer import OptimizationProblem, OptimizationResult


def fmt(value: float) -> str:
    """9-significant-digit representation; empty string for NaN."""
    v = float(value)
    if math.isnan(v):
        return ""
    return format(v, ".9g")


def _write_lines(path, lines) -> None:
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def write_rom_csv(path, domain: RomDomain) -> None:
    """Reachability grid: ``alpha_deg,beta_deg,reachable`` (1/0), alpha fastest."""
    lines = ["alpha_deg,beta_deg,reachable"]
    alpha = domain.alpha_values
    beta = domain.beta_values
    for j in range(len(beta)):
        for i in range(len(alpha)):
            lines.append(f"{fmt(alpha[i])},{fmt(beta[j])},{1 if domain.mask[i, j] else 0}")
    _write_lines(path, lines)


def write_field_csv(path, fmap: FieldMap) -> None:
    """Metric field: ``alpha_deg,beta_deg,value``, alpha fastest, NaN empty."""
    lines = ["alpha_deg,beta_deg,value"]
    alpha = fmap.domain.alpha_values
    beta = fmap.domain.beta_values
    for j in range(len(beta)):
        for i in range(len(alpha)):
            lines.append(f"{fmt(alpha[i])},{fmt(beta[j])},{fmt(fmap.values[i, j])}")
    _write_lines(path, lines)


def write_field_stats(path, fmaps: list[FieldMap]) -> None:
    """Sidecar statistics file, one block per field map."""
    lines = []
    for fmap in fmaps:
        lines.append(f"[{fmap.mechanism}.{fmap.metric}]")
        lines.append(f"mean = {fmt(fmap.mean)}")
        lines.append(f"max_abs = {fmt(fmap.max_abs)}")
        lines.append(f"min = {fmt(fmap.min)}")
        lines.append(f"max = {fmt(fmap.max)}")
        lines.append(f"coverage = {fmt(fmap.coverage)}")
        lines.append(f"undefined_cells = {fmap.undefined_cells}")
        lines.append("")
    _write_lines(path, lines[:-1] if lines and lines[-1] == "" else lines)


def write_curve_csv(path, curve: TorqueCurve) -> None:
    """Bench curve: ``angle_deg,torque_nm,band_low_nm,band_high_nm``."""
    lines = ["angle_deg,torque_nm,band_low_nm,band_high_nm"]
    for i in range(len(curve.angles)):
        lines.append(
            f"{fmt(curve.angles[i])},{fmt(curve.torque[i])},"
            f"{fmt(curve.band_low[i])},{fmt(curve.band_high[i])}"
        )
    _write_lines(path, lines)


def write_measured_csv(path, curves: list[MeasuredCurve]) -> None:
    """Measured-format CSV: ``angle_deg,torque_nm,direction``."""
    lines = ["angle_deg,torque_nm,direction"]
    for curve in curves:
        for i in range(len(curve.angles)):
            lines.append(f"{fmt(curve.angles[i])},{fmt(curve.torque[i])},{curve.direction}")
    _write_lines(path, lines)


def write_relative_error_csv(path, angles: np.ndarray, errors: np.ndarray) -> None:
    """Relative error per measured angle: ``angle_deg,relative_error``, NaN empty."""
    lines = ["angle_deg,relative_error"]
    for i in range(len(angles)):
        lines.append(f"{fmt(angles[i])},{fmt(errors[i])}")
    _write_lines(path, lines)


def write_optimization_report(
    path, problem: OptimizationProblem, result: OptimizationResult
) -> None:
    """Structured text with full parameter provenance."""
    lines = ["[result]"]
    lines.append(f"objective_n2 = {fmt(result.objective)}")
    lines.append(f"iterations = {result.iterations}")
    lines.append(f"converged = {'true' if result.converged else 'false'}")
    lines.append("")
    lines.append("[parameters]")
    base = {
        "k": problem.spring.k,
        "l0": problem.spring.l0,
        "f0": problem.spring.f0,
        "delta_s": problem.geometry.delta_s,
    }
    for name in ("k", "l0", "f0", "delta_s"):
        if name in result.parameters:
            lo, hi = problem.bounds[name]
            lines.append(
                f"{name} = {fmt(result.parameters[name])} "
                f"(free, start {fmt(problem.initial_guess[name])}, "
                f"bounds [{fmt(lo)}, {fmt(hi)}])"
            )
        else:
            lines.append(f"{name} = {fmt(base[name])} (fixed)")
    lines.append(f"b0 = {fmt(problem.spring.pretension)} (fixed pretension)")
    _write_lines(path, lines)


def write_key_values(path, pairs: list[tuple[str, str]]) -> None:
    """Plain ``key = value`` report."""
    _write_lines(path, [f"{key} = {value}" for key, value in pairs])
