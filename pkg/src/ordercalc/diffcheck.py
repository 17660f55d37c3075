"""Finite-difference oracles for the exact derivative formulas.

Nothing here looks at the closed-form multiplier expressions: directional
derivatives are estimated from difference quotients, and Fréchet-ness is
certified by the decay rate of the remainder ||T(x+u) - T(x) - D(u)|| / ||u||
as ||u|| shrinks. These estimates are what the exact formulas are checked
against.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import (
    ConfigurationError,
    InvalidScale,
    NumericalBreakdown,
    ZeroDirection,
)
from .operators import (
    MultiplierMap,
    OperatorSpec,
    Power,
    apply,
    apply_map,
    exact_derivative,
)
from .spaces import SpaceKind, Vector, axpy, norm, sub, sup_functional

# A remainder this small (relative) is treated as exactly zero: the operator
# is its own derivative and no slope can be fitted.
_EXACT_ZERO_REL = 1e-13

SLOPE_THRESHOLD = 0.9
RESIDUAL_REL_TOL = 1e-6


class Scheme(enum.Enum):
    FORWARD = "forward"
    CENTRAL = "central"


@dataclass(frozen=True)
class DiffConfig:
    """Knobs for the finite-difference oracles.

    ``h_values`` are the candidate step sizes for directional quotients;
    ``slope_scales`` are the perturbation norms used in the remainder-decay
    fit. Both must be strictly decreasing and positive.
    """

    h_values: Tuple[float, ...] = (1e-2, 1e-3, 1e-4, 1e-5)
    scheme: Scheme = Scheme.CENTRAL
    slope_scales: Tuple[float, ...] = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7)
    num_directions: int = 16
    rng_seed: int = 0

    def __post_init__(self) -> None:
        for name, seq in (("h_values", self.h_values), ("slope_scales", self.slope_scales)):
            values = tuple(float(v) for v in seq)
            if not values or any(v <= 0 for v in values):
                raise ConfigurationError(f"{name} must be positive")
            if any(a <= b for a, b in zip(values, values[1:])):
                raise ConfigurationError(f"{name} must be strictly decreasing")
            object.__setattr__(self, name, values)
        if self.num_directions < 1:
            raise ConfigurationError("num_directions must be positive")


@dataclass(frozen=True)
class GateauxEstimate:
    """A directional-derivative estimate with its step-selection diagnostics."""

    value: Vector
    step: float
    agreement_gap: float


@dataclass(frozen=True)
class FrechetReport:
    """Numerical evidence that a multiplier map is the derivative at a point.

    ``remainder_slope`` is the fitted log-log slope of the remainder
    quotient against the perturbation norm (NaN when the remainder is
    identically zero, i.e. a linear operator). ``verdict`` is ``"pass"``
    when the slope clears the threshold and the smallest-scale residual is
    below tolerance in every tested direction.
    """

    max_directional_error: float
    remainder_slope: float
    residual_at_smallest: float
    scales: Tuple[float, ...]
    residuals: Tuple[float, ...]
    exact_zero_remainder: bool
    verdict: str
    seed: int
    bound_satisfied: Optional[bool] = None

    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "max_directional_error": self.max_directional_error,
            "remainder_slope": self.remainder_slope,
            "residual_at_smallest": self.residual_at_smallest,
            "scales": list(self.scales),
            "residuals": list(self.residuals),
            "exact_zero_remainder": self.exact_zero_remainder,
            "verdict": self.verdict,
            "seed": self.seed,
            "bound_satisfied": self.bound_satisfied,
        }


def gateaux_fd(op: OperatorSpec, xbar: Vector, v: Vector, cfg: DiffConfig) -> GateauxEstimate:
    """Finite-difference directional derivative of ``op`` at ``xbar`` along ``v``.

    Difference quotients are computed for every configured step; the
    reported estimate is the one whose agreement gap with its neighbour
    (Richardson pair) is smallest, preferring smaller steps on ties.
    """
    if norm(v) == 0.0:
        raise ZeroDirection("direction vector must be nonzero")
    estimates = []
    for h in cfg.h_values:
        if cfg.scheme is Scheme.CENTRAL:
            plus = apply(op, axpy(1.0, xbar, h, v))
            minus = apply(op, axpy(1.0, xbar, -h, v))
            quotient = axpy(1.0 / (2.0 * h), plus, -1.0 / (2.0 * h), minus)
        else:
            plus = apply(op, axpy(1.0, xbar, h, v))
            base = apply(op, xbar)
            quotient = axpy(1.0 / h, plus, -1.0 / h, base)
        if not np.all(np.isfinite(quotient.coords)):
            raise NumericalBreakdown(f"nonfinite difference quotient at step {h}")
        estimates.append(quotient)
    if len(estimates) == 1:
        return GateauxEstimate(estimates[0], cfg.h_values[0], math.nan)
    best_idx, best_gap = 1, math.inf
    for i in range(1, len(estimates)):
        gap = norm(sub(estimates[i], estimates[i - 1]))
        if gap <= best_gap:
            best_idx, best_gap = i, gap
    return GateauxEstimate(estimates[best_idx], cfg.h_values[best_idx], best_gap)


def _unit_directions(op: OperatorSpec, cfg: DiffConfig) -> list:
    rng = np.random.default_rng(cfg.rng_seed)
    directions = []
    while len(directions) < cfg.num_directions:
        u = Vector(op.domain, rng.standard_normal(op.domain.dim))
        length = norm(u)
        if length == 0.0:
            continue
        directions.append(Vector(op.domain, u.coords / length))
    return directions


def verify_frechet(
    op: OperatorSpec, xbar: Vector, cfg: DiffConfig, exact: MultiplierMap
) -> FrechetReport:
    """Certify (or refute) ``exact`` as the derivative of ``op`` at ``xbar``.

    Samples random unit directions, measures the remainder quotient
    r(s) = ||T(x+su) - T(x) - exact(su)|| / ||su||over the configured
    scales, and fits its log-log slope. Also records the worst disagreement
    between the finite-difference directional derivative and the multiplier
    map over the same directions.
    """
    base_value = apply(op, xbar)
    rel = 1.0 + norm(base_value)
    directions = _unit_directions(op, cfg)

    residuals = []
    for s in cfg.slope_scales:
        worst = 0.0
        for u in directions:
            shifted = apply(op, axpy(1.0, xbar, s, u))
            linear = apply_map(exact, Vector(op.domain, s * u.coords))
            remainder = axpy(1.0, shifted, -1.0, base_value)
            remainder = sub(remainder, linear)
            # Directions are unit vectors, so ||s u|| = s in the domain norm.
            worst = max(worst, norm(remainder) / s)
        if not math.isfinite(worst):
            raise NumericalBreakdown(f"nonfinite remainder at scale {s}")
        residuals.append(worst)

    max_dir_err = 0.0
    for u in directions:
        fd = gateaux_fd(op, xbar, u, cfg)
        exact_dir = apply_map(exact, u)
        err = norm(sub(fd.value, exact_dir))
        max_dir_err = max(max_dir_err, err / (1.0 + norm(exact_dir)))

    # A linear operator has zero remainder in exact arithmetic; in floating
    # point the difference T(x+su) - T(x) cancels down to roundoff, so test
    # the absolute remainder r(s) * s against a roundoff-level threshold.
    exact_zero = all(
        r * s <= _EXACT_ZERO_REL * rel for r, s in zip(residuals, cfg.slope_scales)
    )
    if exact_zero:
        slope = math.nan
        ok = max_dir_err <= RESIDUAL_REL_TOL
    else:
        logs = np.log(np.maximum(residuals, 1e-300))
        slope = float(np.polyfit(np.log(cfg.slope_scales), logs, 1)[0])
        ok = (
            slope >= SLOPE_THRESHOLD
            and residuals[-1] <= RESIDUAL_REL_TOL * rel
            and max_dir_err <= RESIDUAL_REL_TOL
        )
    return FrechetReport(
        max_directional_error=max_dir_err,
        remainder_slope=slope,
        residual_at_smallest=residuals[-1],
        scales=cfg.slope_scales,
        residuals=tuple(residuals),
        exact_zero_remainder=exact_zero,
        verdict="pass" if ok else "fail",
        seed=cfg.rng_seed,
    )


def check_remainder_bound(op: OperatorSpec, xbar: Vector, u: Vector) -> bool:
    """Remainder bound for power operators on the sequence space.

    For 0 < ||u|| < 1 the remainder quotient of t^m is bounded by
    (1 + P(x))^m * ||u|| where P is the sup functional; returns whether the
    bound holds with a 1e-10 slack.
    """
    if not isinstance(op, Power) or op.domain.kind is not SpaceKind.SEQUENCE_LP:
        raise ConfigurationError("the remainder bound applies to sequence-space powers")
    u_norm = norm(u)
    if not (0.0 < u_norm < 1.0):
        raise InvalidScale(f"perturbation norm must lie in (0, 1), got {u_norm}")
    shifted = apply(op, axpy(1.0, xbar, 1.0, u))
    linear = apply_map(exact_derivative(op, xbar), u)
    remainder = sub(sub(shifted, apply(op, xbar)), linear)
    lhs = norm(remainder) / u_norm
    rhs = (1.0 + sup_functional(xbar)) ** op.m * u_norm + 1e-10
    return lhs <= rhs
