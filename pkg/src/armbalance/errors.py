"""Exception types shared across the toolkit.

Error messages name the module and the offending quantity so that CLI
failures can be traced to the equation that rejected the input.
"""


class ArmBalanceError(Exception):
    """Base class for all model errors."""


class DomainError(ArmBalanceError, ValueError):
    """An input lies outside the documented domain of an operation."""


class GeometryError(ArmBalanceError, ValueError):
    """A kinematic construction is degenerate or impossible."""


class MechanismError(ArmBalanceError, ValueError):
    """A mechanism configuration is physically out of range or singular."""


class OptimizationError(ArmBalanceError, RuntimeError):
    """No feasible start or the search could not proceed."""


class ConfigError(ArmBalanceError, ValueError):
    """The run configuration file is malformed or inconsistent."""


class ParseError(ArmBalanceError, ValueError):
    """An input data file has a malformed row."""


class ValidationError(ArmBalanceError, ValueError):
    """Parsed data violates a structural requirement (e.g. monotonicity)."""
