"""Run configuration: embedded defaults, TOML loading, strict validation.

The configuration is a single TOML file with nested sections. Unknown
keys are rejected so that typos cannot silently fall back to defaults.
Every value is validated before any computation starts.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - version shim
    import tomli as tomllib

from . import gss, sbs
from .anthro import BodyModel, RomLimits, body_for_percentile
from .bench import SweepSpec
from .errors import ConfigError
from .kinematics import RomDomain, rom_domain
from .optimizer import MethodConfig, OptimizationProblem

DEFAULT_CONFIG: dict[str, Any] = {
    "body": {
        "percentile": "1pf",
    },
    "rom": {
        "alpha_range": [-60.0, 5.0],
        "beta_range": [-20.0, 20.0],
        "resolution": 1.0,
        # recorded flight-range limits; unused by the frontal-plane model
        "torso_flexion": [-30.0, 40.0],
        "torso_rotation": [-60.0, 60.0],
        "shoulder_flexion": [-40.0, 0.0],
        "shoulder_rotation": [-5.0, 5.0],
    },
    "sbs": {
        "a": 0.05,
        "k": 6121.4,
        "l0": 0.05,
        "f0": 30.0,
        "zero_free_length": True,
        "delta_s": "auto",
        "arm_segment_length": 0.312,
        "joint_range": [-80.0, 80.0],
        "constant_b": False,
    },
    "gss": {
        "enabled": True,
        "anchor_offset": [0.08, -0.10],
        "attach_fraction": 1.0,
        "nominal_force": "auto",
        "nominal_length": 0.36,
        "gas_stiffness": 300.0,
        "stroke": [0.28, 0.44],
    },
    "kinematics": {
        "literal_elbow_form": False,
    },
    "bench": {
        "angle_range": [-69.0, 63.0],
        "angle_step": 1.0,
        "delta_s_values": [0.01, 0.02, 0.03, 0.04, 0.05, 0.06],
        "k_tolerance": 0.10,
    },
    "optimize": {
        "free": ["delta_s"],
        "grid_points": 8,
        "max_evaluations": 10000,
        "refine_starts": 3,
        "jitter": 0.0,
        "seed": 0,
        "bounds": {"delta_s": [0.0, 0.06]},
        "initial": {"delta_s": 0.02},
    },
    "output": {
        "directory": "out",
    },
}

_BODY_FIELDS = (
    "arm_mass",
    "upper_arm_length",
    "upper_trunk_height",
    "lower_trunk_height",
    "half_chest_width",
    "half_hip_width",
)

_ALLOWED_KEYS: dict[str, set[str]] = {
    "body": {"percentile", "moment_arm", *_BODY_FIELDS},
    "rom": {
        "alpha_range",
        "beta_range",
        "resolution",
        "torso_flexion",
        "torso_rotation",
        "shoulder_flexion",
        "shoulder_rotation",
    },
    "sbs": {
        "a",
        "k",
        "l0",
        "f0",
        "b0",
        "zero_free_length",
        "delta_s",
        "arm_segment_length",
        "joint_range",
        "constant_b",
    },
    "gss": {
        "enabled",
        "anchor_offset",
        "attach_fraction",
        "nominal_force",
        "nominal_length",
        "gas_stiffness",
        "stroke",
    },
    "kinematics": {"literal_elbow_form"},
    "bench": {"angle_range", "angle_step", "delta_s_values", "k_tolerance"},
    "optimize": {
        "free",
        "grid_points",
        "max_evaluations",
        "refine_starts",
        "jitter",
        "seed",
        "bounds",
        "initial",
    },
    "output": {"directory"},
}


def _merge(base: dict, override: dict, path: str = "") -> dict:
    merged = dict(base)
    for key, value in override.items():
        here = f"{path}.{key}" if path else key
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value, here)
        else:
            merged[key] = value
    return merged


def _check_unknown(raw: dict) -> None:
    for section, content in raw.items():
        if section not in _ALLOWED_KEYS:
            raise ConfigError(f"config: unknown section [{section}]")
        if not isinstance(content, dict):
            raise ConfigError(f"config: section [{section}] must be a table")
        for key in content:
            if key not in _ALLOWED_KEYS[section]:
                raise ConfigError(f"config: unknown key {key!r} in section [{section}]")


def _number(raw, section, key, minimum=None, maximum=None) -> float:
    value = raw[section][key]
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(f"config: [{section}].{key} must be a finite number, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"config: [{section}].{key} = {value} below minimum {minimum}")
    if maximum is not None and value > maximum:
        raise ConfigError(f"config: [{section}].{key} = {value} above maximum {maximum}")
    return float(value)


def _pair(raw, section, key) -> tuple[float, float]:
    value = raw[section][key]
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in value)
    ):
        raise ConfigError(f"config: [{section}].{key} must be a pair of numbers, got {value!r}")
    return float(value[0]), float(value[1])


def _bool(raw, section, key) -> bool:
    value = raw[section][key]
    if not isinstance(value, bool):
        raise ConfigError(f"config: [{section}].{key} must be true or false, got {value!r}")
    return value


def parse_percentile(value) -> tuple[float, str]:
    """Resolve a percentile selector to (fraction, label)."""
    if isinstance(value, str):
        name = value.strip().lower()
        if name == "1pf":
            return 0.0, "1pf"
        if name == "99pm":
            return 1.0, "99pm"
        try:
            value = float(name)
        except ValueError:
            raise ConfigError(
                f"config: percentile must be '1pf', '99pm' or a fraction in [0, 1], got {value!r}"
            ) from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"config: percentile must be a string or number, got {value!r}")
    p = float(value)
    if not (0.0 <= p <= 1.0):
        raise ConfigError(f"config: percentile fraction {p} outside [0, 1]")
    if p == 0.0:
        return 0.0, "1pf"
    if p == 1.0:
        return 1.0, "99pm"
    return p, "p" + format(p, "g").replace(".", "d")


@dataclass
class RunConfig:
    """Validated configuration for one CLI invocation."""

    raw: dict[str, Any]
    percentiles: list[tuple[float, str]]
    explicit_body: BodyModel | None
    moment_arm: float | None
    limits: RomLimits
    resolution: float
    joint_range: tuple[float, float]
    geometry_base: sbs.MechanismGeometry
    spring: sbs.SpringParams
    delta_s_auto: bool
    gss_enabled: bool
    gss_base: gss.GasSpringParams | None
    gss_force_auto: bool
    literal_elbow_form: bool
    sweep: SweepSpec
    opt_free: tuple[str, ...]
    opt_bounds: dict[str, tuple[float, float]]
    opt_initial: dict[str, float]
    opt_method: MethodConfig
    out_dir: str
    notes: list[str] = field(default_factory=list)

    def bodies(self) -> list[tuple[BodyModel, str]]:
        if self.explicit_body is not None:
            return [(self.explicit_body, "custom")]
        return [(body_for_percentile(p), label) for p, label in self.percentiles]

    def geometry_for(self, body: BodyModel) -> tuple[sbs.MechanismGeometry, sbs.TuneResult | None]:
        """Mechanism geometry with delta_s resolved (tuned when 'auto')."""
        if not self.delta_s_auto:
            return self.geometry_base, None
        tuned = sbs.tune_delta_s(body, self.geometry_base, self.spring, self.moment_arm)
        from dataclasses import replace

        return replace(self.geometry_base, delta_s=tuned.delta_s), tuned

    def gss_for(self, body: BodyModel) -> gss.GasSpringParams | None:
        if not self.gss_enabled or self.gss_base is None:
            return None
        if self.gss_force_auto:
            return gss.default_gas_spring(body, self.gss_base)
        return self.gss_base

    def domain(self, body: BodyModel, unconstrained: bool = False) -> RomDomain:
        joint = (-360.0, 360.0) if unconstrained else self.joint_range
        return rom_domain(body, self.limits, joint, self.resolution)


def load_config(path=None, overrides: dict[str, Any] | None = None) -> RunConfig:
    """Load, merge (defaults <- file <- CLI overrides) and validate."""
    raw = DEFAULT_CONFIG
    if path is not None:
        try:
            with open(path, "rb") as handle:
                user = tomllib.load(handle)
        except OSError as exc:
            raise ConfigError(f"config: cannot read {path}: {exc}") from None
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"config: {path}: {exc}") from None
        _check_unknown(user)
        raw = _merge(raw, user)
    if overrides:
        _check_unknown(overrides)
        raw = _merge(raw, overrides)
    return _validate(raw)


def _validate(raw: dict[str, Any]) -> RunConfig:
    _check_unknown(raw)
    notes: list[str] = []

    body_sec = raw["body"]
    explicit = [name for name in _BODY_FIELDS if name in body_sec]
    explicit_body = None
    percentiles: list[tuple[float, str]] = []
    if explicit:
        missing = [name for name in _BODY_FIELDS if name not in body_sec]
        if missing:
            raise ConfigError(f"config: explicit body is missing fields {missing}")
        explicit_body = BodyModel(**{name: _number(raw, "body", name, minimum=0.0) for name in _BODY_FIELDS})
    else:
        selector = body_sec.get("percentile", "1pf")
        values = selector if isinstance(selector, list) else [selector]
        if not values:
            raise ConfigError("config: [body].percentile list is empty")
        percentiles = [parse_percentile(v) for v in values]
    moment_arm = None
    if "moment_arm" in body_sec:
        moment_arm = _number(raw, "body", "moment_arm", minimum=1e-6)

    alpha_range = _pair(raw, "rom", "alpha_range")
    beta_range = _pair(raw, "rom", "beta_range")
    if alpha_range[1] < alpha_range[0] or beta_range[1] < beta_range[0]:
        raise ConfigError("config: [rom] ranges must satisfy min <= max")
    limits = RomLimits(
        shoulder_abduction=alpha_range,
        torso_lateral_bend=beta_range,
        torso_flexion=_pair(raw, "rom", "torso_flexion"),
        torso_rotation=_pair(raw, "rom", "torso_rotation"),
        shoulder_flexion=_pair(raw, "rom", "shoulder_flexion"),
        shoulder_rotation=_pair(raw, "rom", "shoulder_rotation"),
    )
    resolution = _number(raw, "rom", "resolution", minimum=1e-6)

    joint_range = _pair(raw, "sbs", "joint_range")
    spring_kwargs = dict(
        k=_number(raw, "sbs", "k", minimum=1e-9),
        l0=_number(raw, "sbs", "l0", minimum=1e-9),
        f0=_number(raw, "sbs", "f0", minimum=0.0),
    )
    if _bool(raw, "sbs", "zero_free_length"):
        if "b0" in raw["sbs"]:
            raise ConfigError("config: [sbs].b0 conflicts with zero_free_length = true")
        spring = sbs.SpringParams.zero_free_length(**spring_kwargs)
    else:
        b0 = _number(raw, "sbs", "b0", minimum=0.0) if "b0" in raw["sbs"] else None
        spring = sbs.SpringParams(b0=b0, **spring_kwargs)

    delta_s_raw = raw["sbs"]["delta_s"]
    delta_s_auto = isinstance(delta_s_raw, str)
    if delta_s_auto and delta_s_raw != "auto":
        raise ConfigError(f"config: [sbs].delta_s must be a number or 'auto', got {delta_s_raw!r}")
    geometry_base = sbs.MechanismGeometry(
        a=_number(raw, "sbs", "a", minimum=1e-9),
        delta_s=0.0 if delta_s_auto else _number(raw, "sbs", "delta_s", minimum=0.0),
        arm_segment_length=_number(raw, "sbs", "arm_segment_length", minimum=1e-6),
        joint_range=joint_range,
        constant_b=_bool(raw, "sbs", "constant_b"),
    )

    gss_enabled = _bool(raw, "gss", "enabled")
    gss_base = None
    gss_force_auto = False
    if gss_enabled:
        force_raw = raw["gss"]["nominal_force"]
        gss_force_auto = isinstance(force_raw, str)
        if gss_force_auto and force_raw != "auto":
            raise ConfigError(
                f"config: [gss].nominal_force must be a number or 'auto', got {force_raw!r}"
            )
        gss_base = gss.GasSpringParams(
            anchor_offset=_pair(raw, "gss", "anchor_offset"),
            attach_fraction=_number(raw, "gss", "attach_fraction", minimum=1e-9, maximum=1.0),
            nominal_force=18.0 if gss_force_auto else _number(raw, "gss", "nominal_force", minimum=1e-9),
            nominal_length=_number(raw, "gss", "nominal_length", minimum=1e-9),
            gas_stiffness=_number(raw, "gss", "gas_stiffness", minimum=0.0),
            stroke=_pair(raw, "gss", "stroke"),
        )

    sweep = SweepSpec(
        angle_range=_pair(raw, "bench", "angle_range"),
        angle_step=_number(raw, "bench", "angle_step", minimum=1e-9),
        delta_s_values=tuple(
            float(v) for v in raw["bench"]["delta_s_values"]
        ),
        k_tolerance=_number(raw, "bench", "k_tolerance", minimum=0.0, maximum=0.999),
    )

    opt = raw["optimize"]
    free = tuple(opt["free"])
    bounds = {}
    for name, pair in opt["bounds"].items():
        if name not in ("k", "l0", "f0", "delta_s"):
            raise ConfigError(f"config: [optimize.bounds] unknown parameter {name!r}")
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ConfigError(f"config: [optimize.bounds].{name} must be a pair")
        bounds[name] = (float(pair[0]), float(pair[1]))
    initial = {}
    for name, value in opt["initial"].items():
        if name not in ("k", "l0", "f0", "delta_s"):
            raise ConfigError(f"config: [optimize.initial] unknown parameter {name!r}")
        initial[name] = float(value)
    method = MethodConfig(
        grid_points=int(_number(raw, "optimize", "grid_points", minimum=1)),
        max_evaluations=int(_number(raw, "optimize", "max_evaluations", minimum=10)),
        refine_starts=int(_number(raw, "optimize", "refine_starts", minimum=1)),
        jitter=_number(raw, "optimize", "jitter", minimum=0.0, maximum=1.0),
        seed=int(_number(raw, "optimize", "seed", minimum=0)),
    )

    out_dir = raw["output"]["directory"]
    if not isinstance(out_dir, str) or not out_dir:
        raise ConfigError("config: [output].directory must be a non-empty string")

    return RunConfig(
        raw=raw,
        percentiles=percentiles,
        explicit_body=explicit_body,
        moment_arm=moment_arm,
        limits=limits,
        resolution=resolution,
        joint_range=joint_range,
        geometry_base=geometry_base,
        spring=spring,
        delta_s_auto=delta_s_auto,
        gss_enabled=gss_enabled,
        gss_base=gss_base,
        gss_force_auto=gss_force_auto,
        literal_elbow_form=_bool(raw, "kinematics", "literal_elbow_form"),
        sweep=sweep,
        opt_free=free,
        opt_bounds=bounds,
        opt_initial=initial,
        opt_method=method,
        out_dir=out_dir,
        notes=notes,
    )


def build_problem(config: RunConfig, body: BodyModel) -> OptimizationProblem:
    """Optimisation problem for one body under the configured domain."""
    geometry, _ = config.geometry_for(body)
    return OptimizationProblem(
        body=body,
        domain=config.domain(body),
        geometry=geometry,
        spring=config.spring,
        free_parameters=config.opt_free,
        bounds=config.opt_bounds,
        initial_guess=config.opt_initial,
        moment_arm=config.moment_arm,
    )
