"""Passive gravity-compensation arm support analysis.

Models a spring-cable static balancer and a gas-strut support over a
user's range of motion: balancing torque, normalised torque error and
parasitic force fields, spring parameter optimisation, and the
theoretical bench torque curves with tolerance bands.
"""

from . import anthro, backend, bench, gss, kinematics, metrics, optimizer, sbs
from .anthro import BODY_1PF, BODY_99PM, BodyModel, RomLimits, arm_weight, body_for_percentile
from .kinematics import Pose, RomDomain, elbow_position, rom_domain, theta
from .metrics import FieldMap, SbsSupport, evaluate_field
from .sbs import MechanismGeometry, SpringParams, net_torque, tune_delta_s

__version__ = "0.1.0"

__all__ = [
    "BODY_1PF",
    "BODY_99PM",
    "BodyModel",
    "FieldMap",
    "MechanismGeometry",
    "Pose",
    "RomDomain",
    "RomLimits",
    "SbsSupport",
    "SpringParams",
    "anthro",
    "arm_weight",
    "backend",
    "bench",
    "body_for_percentile",
    "elbow_position",
    "evaluate_field",
    "gss",
    "kinematics",
    "metrics",
    "net_torque",
    "optimizer",
    "rom_domain",
    "sbs",
    "theta",
    "tune_delta_s",
    "__version__",
]
