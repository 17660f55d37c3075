"""Ordering cones and the partial orders they induce.

Four cones are implemented: the coordinatewise-nonnegative cones of the
sequence space, of C[0,1] and of L_p[0,1], and the cone of polynomials of
degree <= n with nonnegative monomial coefficients inside C[0,1].
Membership is tolerance-based so it is robust under floating point; the
comparison ``x <= y`` tests whether ``y - x`` belongs to the cone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from .errors import ConfigurationError, SpaceMismatch
from .spaces import SpaceDescriptor, SpaceKind, Vector, norm, sub

MAX_POLY_DEGREE = 12


class ConeKind(enum.Enum):
    LP_POSITIVE = "K"
    C_POSITIVE = "C+"
    LP_FUNCTION_POSITIVE = "Lp+"
    POLY_NONNEG = "Pn+"


_CONE_SPACE = {
    ConeKind.LP_POSITIVE: SpaceKind.SEQUENCE_LP,
    ConeKind.C_POSITIVE: SpaceKind.GRID_C01,
    ConeKind.POLY_NONNEG: SpaceKind.GRID_C01,
    ConeKind.LP_FUNCTION_POSITIVE: SpaceKind.GRID_LP01,
}


@dataclass(frozen=True)
class ConeDescriptor:
    """One of the four ordering cones, with membership tolerances.

    ``eps_cone`` bounds how far below zero a coordinate (or fitted
    coefficient) may dip; ``eps_fit`` bounds the sup-norm residual of the
    polynomial fit and is used by the polynomial cone only. ``degree`` is
    the polynomial degree bound n.
    """

    kind: ConeKind
    degree: Optional[int] = None
    eps_cone: float = 1e-9
    eps_fit: float = 1e-8

    def __post_init__(self) -> None:
        if self.eps_cone < 0 or self.eps_fit < 0:
            raise ConfigurationError("tolerances must be nonnegative")
        if self.kind is ConeKind.POLY_NONNEG:
            if self.degree is None or self.degree < 0:
                raise ConfigurationError("polynomial cone requires a degree bound n >= 0")
            if self.degree > MAX_POLY_DEGREE:
                # Vandermonde fits above this degree are too ill-conditioned
                # to give a trustworthy membership verdict.
                raise ConfigurationError(
                    f"polynomial degree bound above {MAX_POLY_DEGREE} is rejected"
                )
        elif self.degree is not None:
            raise ConfigurationError(f"{self.kind.value} cone takes no degree bound")

    @property
    def space_kind(self) -> SpaceKind:
        return _CONE_SPACE[self.kind]

    def label(self) -> str:
        if self.kind is ConeKind.POLY_NONNEG:
            return f"Pn+:n={self.degree}"
        return self.kind.value


def lp_positive(eps_cone: float = 1e-9) -> ConeDescriptor:
    return ConeDescriptor(ConeKind.LP_POSITIVE, eps_cone=eps_cone)


def c_positive(eps_cone: float = 1e-9) -> ConeDescriptor:
    return ConeDescriptor(ConeKind.C_POSITIVE, eps_cone=eps_cone)


def lp_function_positive(eps_cone: float = 1e-9) -> ConeDescriptor:
    return ConeDescriptor(ConeKind.LP_FUNCTION_POSITIVE, eps_cone=eps_cone)


def poly_nonneg(degree: int, eps_cone: float = 1e-9, eps_fit: float = 1e-8) -> ConeDescriptor:
    return ConeDescriptor(ConeKind.POLY_NONNEG, degree=degree, eps_cone=eps_cone, eps_fit=eps_fit)


@dataclass(frozen=True)
class Membership:
    """Result of a cone membership test with its diagnostic.

    ``witness_index`` is the most-violating coordinate (or monomial
    coefficient index) when membership fails on signs; ``fit_residual`` is
    the sup-norm residual of the polynomial fit, present for the polynomial
    cone whether or not the test passed.
    """

    member: bool
    witness_index: Optional[int] = None
    witness_value: Optional[float] = None
    fit_residual: Optional[float] = None


class Relation(enum.Enum):
    LESS_EQ = "less_eq"
    GREATER_EQ = "greater_eq"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of comparing two vectors under a cone order.

    ``is_strict`` marks a LESS_EQ/GREATER_EQ whose difference has norm above
    ten times the cone tolerance. ``witness`` explains an INCOMPARABLE
    verdict (the membership diagnostic of the failing direction).
    """

    relation: Relation
    is_strict: bool = False
    witness: Optional[Membership] = None


def _check_space(cone: ConeDescriptor, x: Vector) -> None:
    if x.space.kind is not cone.space_kind:
        raise SpaceMismatch(
            f"cone {cone.label()} is incompatible with space {x.space.label()}"
        )
    if cone.kind is ConeKind.POLY_NONNEG and cone.degree >= x.space.dim:
        raise ConfigurationError("polynomial degree bound must be below the grid size")


def in_cone(cone: ConeDescriptor, x: Vector) -> Membership:
    """Tolerance-based cone membership with a diagnostic.

    The three coordinatewise cones accept ``x`` when every coordinate is at
    least ``-eps_cone * (1 + ||x||)``. The polynomial cone fits the grid
    samples against the monomial basis 1, t, ..., t^n by least squares and
    accepts when the sup-norm fit residual is within ``eps_fit * (1 + ||x||)``
    and every fitted coefficient is at least ``-eps_cone``.
    """
    _check_space(cone, x)
    if cone.kind is ConeKind.POLY_NONNEG:
        return _in_poly_cone(cone, x)
    threshold = -cone.eps_cone * (1.0 + norm(x))
    worst = int(np.argmin(x.coords))
    if x.coords[worst] >= threshold:
        return Membership(True)
    return Membership(False, witness_index=worst, witness_value=float(x.coords[worst]))


def _in_poly_cone(cone: ConeDescriptor, x: Vector) -> Membership:
    t = x.space.grid()
    basis = np.vander(t, cone.degree + 1, increasing=True)
    coeffs, *_ = np.linalg.lstsq(basis, x.coords, rcond=None)
    residual = float(np.max(np.abs(basis @ coeffs - x.coords)))
    scale = 1.0 + norm(x)
    if residual > cone.eps_fit * scale:
        return Membership(False, fit_residual=residual)
    worst = int(np.argmin(coeffs))
    if coeffs[worst] < -cone.eps_cone:
        return Membership(
            False,
            witness_index=worst,
            witness_value=float(coeffs[worst]),
            fit_residual=residual,
        )
    return Membership(True, fit_residual=residual)


def compare(cone: ConeDescriptor, x: Vector, y: Vector) -> OrderVerdict:
    """Order ``x`` against ``y``: tests y - x and x - y via :func:`in_cone`."""
    if not x.space.compatible_with(y.space):
        raise SpaceMismatch("cannot compare vectors from different spaces")
    forward = in_cone(cone, sub(y, x))
    backward = in_cone(cone, sub(x, y))
    if forward.member and backward.member:
        return OrderVerdict(Relation.EQUAL)
    strict = norm(sub(y, x)) > 10.0 * cone.eps_cone
    if forward.member:
        return OrderVerdict(Relation.LESS_EQ, is_strict=strict)
    if backward.member:
        return OrderVerdict(Relation.GREATER_EQ, is_strict=strict)
    return OrderVerdict(Relation.INCOMPARABLE, witness=forward)


def cone_refinement_check(
    fine: ConeDescriptor,
    coarse: ConeDescriptor,
    sample_pairs: Iterable[Tuple[Vector, Vector]],
) -> bool:
    """Check that fine-cone comparability implies coarse-cone comparability.

    For every pair found comparable under the fine (polynomial) cone, the
    coarse (pointwise) cone must agree in the same direction. Returns True
    iff no pair violates this; the converse is allowed to fail.
    """
    if fine.kind is not ConeKind.POLY_NONNEG or coarse.kind is not ConeKind.C_POSITIVE:
        raise SpaceMismatch("refinement check expects a Pn+ fine cone and a C+ coarse cone")
    comparable = {Relation.LESS_EQ, Relation.GREATER_EQ, Relation.EQUAL}
    for x, y in sample_pairs:
        fine_verdict = compare(fine, x, y)
        if fine_verdict.relation not in comparable:
            continue
        coarse_verdict = compare(coarse, x, y)
        if coarse_verdict.relation is Relation.EQUAL:
            continue
        if fine_verdict.relation is Relation.EQUAL:
            if coarse_verdict.relation is Relation.INCOMPARABLE:
                return False
            continue
        if coarse_verdict.relation is not fine_verdict.relation:
            return False
    return True
