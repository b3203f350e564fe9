"""Spring parameter search: minimise the summed squared balancing error.

The objective is the sum over reachable ROM cells of the squared
balancing force error (N^2) for the spring-cable mechanism configured
with the candidate parameters. It is cheap, smooth and at most
four-dimensional, so the search is a coarse multi-start grid over the
bounds followed by Nelder-Mead refinement from the best starts. All
randomness is limited to an optional seeded jitter of the grid starts;
objective evaluation order is fixed, so results are reproducible.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import minimize

from . import backend
from .anthro import BodyModel
from .errors import DomainError, OptimizationError
from .kinematics import RomDomain
from .sbs import MechanismGeometry, SpringParams

log = logging.getLogger(__name__)

#: Canonical ordering of the optimisable parameters.
PARAM_ORDER = ("k", "l0", "f0", "delta_s")


@dataclass(frozen=True)
class OptimizationProblem:
    """Free parameters, bounds and starting point for one body and domain.

    Parameters not listed in ``free_parameters`` keep the values from
    ``spring``/``geometry``. The spring pretension b0 is a build constant
    and is never varied.
    """

    body: BodyModel
    domain: RomDomain
    geometry: MechanismGeometry
    spring: SpringParams
    free_parameters: tuple[str, ...]
    bounds: dict[str, tuple[float, float]]
    initial_guess: dict[str, float]
    moment_arm: float | None = None

    def __post_init__(self):
        if not self.free_parameters:
            raise DomainError("optimizer: free_parameters must not be empty")
        for name in self.free_parameters:
            if name not in PARAM_ORDER:
                raise DomainError(
                    f"optimizer: unknown parameter {name!r}, expected one of {PARAM_ORDER}"
                )
            if name not in self.bounds:
                raise DomainError(f"optimizer: missing bounds for free parameter {name!r}")
            lo, hi = self.bounds[name]
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise DomainError(f"optimizer: bounds for {name!r} must be finite, got {(lo, hi)}")
            if name not in self.initial_guess:
                raise DomainError(f"optimizer: missing initial guess for {name!r}")
            if not (lo <= self.initial_guess[name] <= hi):
                raise DomainError(
                    f"optimizer: initial guess for {name!r} = {self.initial_guess[name]} "
                    f"outside bounds {(lo, hi)}"
                )

    @property
    def ordered_free(self) -> tuple[str, ...]:
        return tuple(name for name in PARAM_ORDER if name in self.free_parameters)

    def vector(self, values: dict[str, float]) -> np.ndarray:
        return np.array([values[name] for name in self.ordered_free], dtype=np.float64)

    def as_dict(self, x: np.ndarray) -> dict[str, float]:
        return {name: float(v) for name, v in zip(self.ordered_free, x)}


@dataclass(frozen=True)
class MethodConfig:
    """Search settings; the defaults are part of the reproducibility contract."""

    grid_points: int = 8
    max_evaluations: int = 10_000
    f_tol: float = 1e-12      # stop when objective improvement falls below (N^2)
    x_tol: float = 1e-9       # or the parameter step falls below
    refine_starts: int = 3    # local refinements from the best grid starts
    jitter: float = 0.0       # grid start jitter as a fraction of each bound span
    seed: int = 0


@dataclass
class OptimizationResult:
    parameters: dict[str, float]
    objective: float
    iterations: int
    converged: bool
    history: list[float] = field(default_factory=list)


def _configured(problem: OptimizationProblem, values: dict[str, float]):
    spring_kwargs = {}
    for name in ("k", "l0", "f0"):
        if name in values:
            spring_kwargs[name] = values[name]
    spring = replace(problem.spring, **spring_kwargs) if spring_kwargs else problem.spring
    geom = (
        replace(problem.geometry, delta_s=values["delta_s"])
        if "delta_s" in values
        else problem.geometry
    )
    return geom, spring


def objective(problem: OptimizationProblem, params: dict[str, float]) -> float:
    """Sum of squared balancing errors (N^2) over the reachable cells.

    Configuration errors (singular cable geometry, over-extended spring)
    come back as +inf so the search simply avoids them.
    """
    for name in problem.free_parameters:
        if name not in params:
            raise DomainError(f"optimizer: objective called without free parameter {name!r}")
    try:
        geom, spring = _configured(problem, params)
    except Exception as exc:  # invalid spring/geometry for this candidate
        log.debug("objective: infeasible candidate %s (%s)", params, exc)
        return math.inf
    body = problem.body
    l = body.upper_arm_length if problem.moment_arm is None else problem.moment_arm
    phi = np.radians(problem.domain.elevation_grid()[problem.domain.mask])
    err = backend.balance_error_curve(
        np.ascontiguousarray(phi),
        geom.a, geom.delta_s, spring.k, spring.l0, spring.f0,
        spring.pretension, l, body.arm_mass, body.gravity, geom.constant_b,
    )
    bad = int(np.isnan(err).sum())
    if bad:
        log.debug("objective: %d singular cells for %s", bad, params)
        return math.inf
    return float(err @ err)


def _grid_starts(problem: OptimizationProblem, method: MethodConfig) -> list[np.ndarray]:
    axes = []
    for name in problem.ordered_free:
        lo, hi = problem.bounds[name]
        if method.grid_points == 1 or hi == lo:
            axes.append(np.array([0.5 * (lo + hi)]))
        else:
            axes.append(lo + (hi - lo) * np.arange(method.grid_points) / (method.grid_points - 1))
    mesh = np.meshgrid(*axes, indexing="ij")
    starts = np.stack([m.ravel() for m in mesh], axis=1)
    if method.jitter > 0.0:
        rng = np.random.default_rng(method.seed)
        spans = np.array([problem.bounds[n][1] - problem.bounds[n][0] for n in problem.ordered_free])
        starts = starts + method.jitter * spans * rng.uniform(-0.5, 0.5, size=starts.shape)
        lows = np.array([problem.bounds[n][0] for n in problem.ordered_free])
        highs = np.array([problem.bounds[n][1] for n in problem.ordered_free])
        starts = np.clip(starts, lows, highs)
    return [starts[i] for i in range(starts.shape[0])]


def optimize(problem: OptimizationProblem, method: MethodConfig = MethodConfig()) -> OptimizationResult:
    """Multi-start grid search plus simplex refinement within bounds.

    Stops each refinement when the objective improvement drops below
    ``f_tol`` or the parameter step below ``x_tol``, with
    ``max_evaluations`` capping the total work. The reported optimum is
    never worse than the best grid start or the initial guess; ties are
    broken by lexicographic parameter order.
    """
    evaluations = 0
    history: list[float] = []
    best_f = math.inf
    best_x: np.ndarray | None = None

    def tracked(x: np.ndarray) -> float:
        nonlocal evaluations, best_f, best_x
        evaluations += 1
        f = objective(problem, problem.as_dict(x))
        if f < best_f or (f == best_f and best_x is not None and tuple(x) < tuple(best_x)):
            best_f = f
            best_x = np.array(x, dtype=np.float64)
        history.append(best_f)
        return f

    starts = [problem.vector(problem.initial_guess)] + _grid_starts(problem, method)
    scored: list[tuple[float, tuple[float, ...], np.ndarray]] = []
    for x in starts:
        if evaluations >= method.max_evaluations:
            break
        scored.append((tracked(x), tuple(x), x))
    scored.sort(key=lambda item: (item[0], item[1]))
    feasible = [item for item in scored if math.isfinite(item[0])]
    if not feasible:
        raise OptimizationError("optimizer: every start evaluated to an infeasible objective")

    bounds = [problem.bounds[name] for name in problem.ordered_free]
    converged = False
    for _, _, x0 in feasible[: max(1, method.refine_starts)]:
        budget = method.max_evaluations - evaluations
        if budget <= 1:
            break
        res = minimize(
            tracked,
            x0,
            method="Nelder-Mead",
            bounds=bounds,
            options={
                "fatol": method.f_tol,
                "xatol": method.x_tol,
                "maxfev": budget,
                "disp": False,
            },
        )
        converged = converged or bool(res.success)

    assert best_x is not None
    return OptimizationResult(
        parameters=problem.as_dict(best_x),
        objective=best_f,
        iterations=evaluations,
        converged=converged,
        history=history,
    )
