"""Generalized critical points, ordered extrema, and monotonicity certificates.

A point is generalized-critical when the derivative multiplier map is the
zero operator. Extremum verdicts compare operator values under a cone order
over declared sample sets (directional rays or explicit point lists), so a
"maximum" here is a falsifiable sampled claim, not a proof. Monotonicity
certificates pair a sampled order-preservation test with the derivative
cone-positivity criterion it implies.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .cones import ConeDescriptor, ConeKind, Relation, compare, in_cone
from .errors import DegenerateOperator, SpaceMismatch, ZeroDirection
from .operators import (
    OperatorSpec,
    apply,
    apply_map,
    exact_derivative,
    operator_norm,
    sine,
)
from .spaces import SpaceKind, Vector, axpy, constant, grid_c01, norm

ROOT_IMAG_TOL = 1e-10
ROOT_MERGE_TOL = 1e-8


class CriticalSetKind(enum.Enum):
    ONLY_ORIGIN = "only_origin"
    EMPTY = "empty"
    ORIGIN_PLUS_NONZERO_ROOTS = "origin_plus_nonzero_roots"
    # Truncation-only regime: every root of the multiplier polynomial is
    # nonzero, so no genuine l_p point (whose tail forces zero coordinates)
    # can be critical; kept distinct so the full-space argument is visible.
    NONZERO_ROOTS_ONLY = "nonzero_roots_only"


class PaperClaim(enum.Enum):
    ORIGIN_ONLY = "origin_only"
    EMPTY = "empty"


@dataclass(frozen=True)
class CriticalSetResult:
    """Real roots of the scalar multiplier polynomial and their meaning.

    ``roots`` are the admissible coordinate values of a critical point (in
    the full sequence space the zero tail additionally forces 0 to be among
    them). ``paper_claim`` and ``discrepancy_flag`` are populated in paper
    mode, where the classification is checked against the published
    dichotomy (origin-only when a_1 = 0, empty otherwise).
    """

    roots: Tuple[float, ...]
    set_kind: CriticalSetKind
    paper_claim: Optional[PaperClaim] = None
    discrepancy_flag: bool = False


def critical_set_polytype(coeffs: Sequence[float], paper_mode: bool = False) -> CriticalSetResult:
    """Critical set of the sequence-space polynomial operator with ``coeffs``.

    Finds the real roots of q(t) = sum_i i * a_i * t^(i-1) via companion
    matrix eigenvalues. A sequence-space point is critical iff every
    coordinate is a root of q; since an l_p tail converges to 0, the true
    critical set is empty whenever 0 is not a root, is {origin} when 0 is
    the only root, and is an infinite family (finitely many coordinates at
    nonzero roots, the rest 0) otherwise.
    """
    coeffs = [float(c) for c in coeffs]
    if not coeffs or all(c == 0.0 for c in coeffs):
        raise DegenerateOperator("all polynomial coefficients are zero")
    # q in ascending order: coefficient of t^k is (k+1) * a_{k+1}.
    q = [(k + 1) * a for k, a in enumerate(coeffs)]
    while q and q[-1] == 0.0:
        q.pop()

    if len(q) <= 1:
        # q is a nonzero constant (a_1 != 0, higher derivative terms vanish).
        roots: Tuple[float, ...] = ()
    else:
        raw = np.roots(q[::-1])
        real = [complex(r) for r in raw if abs(r.imag) <= ROOT_IMAG_TOL]
        merged: List[float] = []
        for r in sorted(x.real for x in real):
            if not merged or abs(r - merged[-1]) > ROOT_MERGE_TOL:
                merged.append(r)
        roots = tuple(0.0 if abs(r) <= ROOT_IMAG_TOL else r for r in merged)

    has_zero = any(r == 0.0 for r in roots)
    has_nonzero = any(r != 0.0 for r in roots)
    if not roots or not has_zero:
        kind = CriticalSetKind.EMPTY
    elif has_nonzero:
        kind = CriticalSetKind.ORIGIN_PLUS_NONZERO_ROOTS
    else:
        kind = CriticalSetKind.ONLY_ORIGIN

    claim = None
    flag = False
    if paper_mode:
        claim = PaperClaim.EMPTY if coeffs[0] != 0.0 else PaperClaim.ORIGIN_ONLY
        expected = (
            CriticalSetKind.EMPTY if claim is PaperClaim.EMPTY else CriticalSetKind.ONLY_ORIGIN
        )
        flag = kind is not expected
    return CriticalSetResult(roots, kind, claim, flag)


def is_generalized_critical(op: OperatorSpec, xbar: Vector, tol: float = 1e-9) -> bool:
    """Whether the derivative at ``xbar`` is the zero operator within ``tol``."""
    return operator_norm(exact_derivative(op, xbar)) <= tol


class ExtremumStatus(enum.Enum):
    MAXIMUM = "maximum"
    MINIMUM = "minimum"
    NOT_EXTREME = "not_extreme"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ExtremumWitness:
    """The sample refuting extremality: its label(s) and how it compared."""

    kind: str  # "incomparable" or "both_sides"
    labels: Tuple[str, ...]
    relations: Tuple[str, ...]


@dataclass(frozen=True)
class ExtremumVerdict:
    status: ExtremumStatus
    scope: str  # human-readable sample description
    witness: Optional[ExtremumWitness] = None


def _classify(
    cone: ConeDescriptor,
    base_value: Vector,
    labelled_values: Sequence[Tuple[str, Vector]],
    scope: str,
) -> ExtremumVerdict:
    """Shared directional/absolute classification.

    ``labelled_values`` are operator values T(x) to be ordered against the
    base value T(xbar). Any incomparable sample refutes both maximality and
    minimality; strictly dominating and strictly dominated samples together
    do the same. Otherwise unanimity decides.
    """
    if not labelled_values:
        return ExtremumVerdict(ExtremumStatus.INCONCLUSIVE, scope)
    above: Optional[str] = None
    below: Optional[str] = None
    all_le = True
    all_ge = True
    for label, value in labelled_values:
        verdict = compare(cone, value, base_value)
        rel = verdict.relation
        if rel is Relation.INCOMPARABLE:
            return ExtremumVerdict(
                ExtremumStatus.NOT_EXTREME,
                scope,
                ExtremumWitness("incomparable", (label,), (rel.value,)),
            )
        if rel is Relation.LESS_EQ:
            all_ge = False
            if verdict.is_strict and below is None:
                below = label
        elif rel is Relation.GREATER_EQ:
            all_le = False
            if verdict.is_strict and above is None:
                above = label
    if above is not None and below is not None:
        return ExtremumVerdict(
            ExtremumStatus.NOT_EXTREME,
            scope,
            ExtremumWitness(
                "both_sides", (above, below), (Relation.GREATER_EQ.value, Relation.LESS_EQ.value)
            ),
        )
    if all_le:
        return ExtremumVerdict(ExtremumStatus.MAXIMUM, scope)
    if all_ge:
        return ExtremumVerdict(ExtremumStatus.MINIMUM, scope)
    return ExtremumVerdict(ExtremumStatus.INCONCLUSIVE, scope)


def directional_extremum(
    op: OperatorSpec,
    cone: ConeDescriptor,
    xbar: Vector,
    v: Vector,
    t_max: float = 1.0,
    num_t: int = 41,
) -> ExtremumVerdict:
    """Order T(xbar + t v) against T(xbar) on a symmetric grid of t values.

    The grid always includes +-t_max and a pair of tiny steps
    (+-1e-3 * t_max) so locally non-extreme behaviour is not missed.
    """
    if norm(v) == 0.0:
        raise ZeroDirection("direction vector must be nonzero")
    if cone.space_kind is not op.codomain.kind:
        raise SpaceMismatch("cone must order the operator codomain")
    ts = set(np.linspace(-t_max, t_max, num_t))
    ts.update((-1e-3 * t_max, 1e-3 * t_max))
    ts.discard(0.0)
    samples = []
    base_value = apply(op, xbar)
    for t in sorted(ts):
        samples.append((f"t={t:.6g}", apply(op, axpy(1.0, xbar, t, v))))
    scope = f"directional: {len(samples)} t-values in [-{t_max:g}, {t_max:g}]"
    return _classify(cone, base_value, samples, scope)


def absolute_extremum(
    op: OperatorSpec,
    cone: ConeDescriptor,
    xbar: Vector,
    samples: Sequence[Vector],
) -> ExtremumVerdict:
    """Order T(x) against T(xbar) for every sample point x."""
    if cone.space_kind is not op.codomain.kind:
        raise SpaceMismatch("cone must order the operator codomain")
    base_value = apply(op, xbar)
    labelled = [(f"sample[{i}]", apply(op, x)) for i, x in enumerate(samples)]
    scope = f"absolute: {len(labelled)} sample points"
    return _classify(cone, base_value, labelled, scope)


def critical_set_sine(
    lo: float,
    hi: float,
    tol: float = 1e-9,
    dim: int = 257,
) -> List[float]:
    """Constants c in [lo, hi] at which the sine operator is critical.

    Enumerates c = n*pi + pi/2, keeps those with |cos c| <= tol, and
    verifies each via :func:`is_generalized_critical` on the constant grid
    function.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("search interval must be finite")
    space = grid_c01(dim)
    op = sine(space)
    found = []
    n_lo = math.floor((lo - math.pi / 2) / math.pi)
    n_hi = math.ceil((hi - math.pi / 2) / math.pi)
    for n in range(n_lo, n_hi + 1):
        c = n * math.pi + math.pi / 2
        if lo <= c <= hi and abs(math.cos(c)) <= tol:
            if is_generalized_critical(op, constant(space, c), tol):
                found.append(c)
    return found


@dataclass(frozen=True)
class MonotoneCertificate:
    """Sampled order-preservation plus the derivative cone-positivity test."""

    order_increasing_sampled: bool
    derivative_cone_positive: bool
    num_pairs: int
    seed: int
    counterexample: Optional[Tuple[Vector, Vector]] = None
    derivative_counterexample: Optional[Tuple[Vector, Vector]] = None


def _cone_element(cone: ConeDescriptor, space, rng: np.random.Generator) -> Vector:
    """Random nonzero element of the cone, for order and direction sampling."""
    if cone.kind is ConeKind.POLY_NONNEG:
        coeffs = rng.uniform(0.0, 1.0, cone.degree + 1)
        basis = np.vander(space.grid(), cone.degree + 1, increasing=True)
        return Vector(space, basis @ coeffs)
    return Vector(space, np.abs(rng.standard_normal(space.dim)))


def check_order_monotone(
    op: OperatorSpec,
    domain_cone: ConeDescriptor,
    codomain_cone: ConeDescriptor,
    num_pairs: int = 200,
    seed: int = 0,
) -> MonotoneCertificate:
    """Certify order-increasing behaviour of ``op`` by sampling.

    Part (a) draws ``num_pairs`` ordered pairs (x, x + c) with c a random
    domain-cone element and checks T(x) <= T(x + c) under the codomain
    cone. Part (b) draws random base points and cone directions and checks
    that the derivative pushes every direction into the codomain cone.
    """
    if domain_cone.space_kind is not op.domain.kind:
        raise SpaceMismatch("domain cone must live in the operator domain")
    if codomain_cone.space_kind is not op.codomain.kind:
        raise SpaceMismatch("codomain cone must live in the operator codomain")
    rng = np.random.default_rng(seed)

    increasing = True
    counterexample = None
    for _ in range(num_pairs):
        x = Vector(op.domain, rng.standard_normal(op.domain.dim))
        c = _cone_element(domain_cone, op.domain, rng)
        y = axpy(1.0, x, 1.0, c)
        verdict = compare(codomain_cone, apply(op, x), apply(op, y))
        if verdict.relation not in (Relation.LESS_EQ, Relation.EQUAL):
            increasing = False
            counterexample = (x, y)
            break

    positive = True
    deriv_counterexample = None
    for _ in range(num_pairs):
        xbar = Vector(op.domain, rng.standard_normal(op.domain.dim))
        v = _cone_element(domain_cone, op.domain, rng)
        image = apply_map(exact_derivative(op, xbar), v)
        if not in_cone(codomain_cone, image).member:
            positive = False
            deriv_counterexample = (xbar, v)
            break

    return MonotoneCertificate(
        order_increasing_sampled=increasing,
        derivative_cone_positive=positive,
        num_pairs=num_pairs,
        seed=seed,
        counterexample=counterexample,
        derivative_counterexample=deriv_counterexample,
    )
