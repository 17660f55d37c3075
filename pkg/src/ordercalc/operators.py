"""Pointwise operators and their exact derivatives as multiplier maps.

The operator family acts coordinate by coordinate: integer powers t^m,
polynomials sum a_i t^i with zero constant term, sine, and closure under
scaling, sums, and composition. Every member has a derivative which is a
pointwise multiplication (diagonal) map, stored as the multiplier array
rather than a dense matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import ConfigurationError, SpaceMismatch
from .spaces import SpaceDescriptor, SpaceKind, Vector


def _check_codomain(domain: SpaceDescriptor, codomain: SpaceDescriptor) -> None:
    if domain == codomain:
        return
    # The only cross-kind family member maps the C[0,1] grid into the
    # L_p[0,1] grid of the same size.
    if (
        domain.kind is SpaceKind.GRID_C01
        and codomain.kind is SpaceKind.GRID_LP01
        and domain.dim == codomain.dim
    ):
        return
    raise ConfigurationError(
        f"unsupported domain/codomain pairing: {domain.label()} -> {codomain.label()}"
    )


@dataclass(frozen=True)
class OperatorSpec:
    """Base of the symbolic operator family; use the concrete subclasses."""

    domain: SpaceDescriptor
    codomain: SpaceDescriptor

    def __post_init__(self) -> None:
        _check_codomain(self.domain, self.codomain)

    # Coordinatewise value and derivative on a raw array; subclasses override.
    def _values(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _deriv(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def label(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Power(OperatorSpec):
    """t -> t^m for a positive integer m."""

    m: int = 1

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.m < 1:
            raise ConfigurationError("power exponent must be a positive integer")

    def _values(self, t: np.ndarray) -> np.ndarray:
        return t ** self.m

    def _deriv(self, t: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return np.ones_like(t)
        return self.m * t ** (self.m - 1)

    def label(self) -> str:
        return f"power:{self.m}"


@dataclass(frozen=True)
class PolyType(OperatorSpec):
    """t -> sum_{i=1..m} a_i t^i, constant term fixed to zero."""

    coeffs: Tuple[float, ...] = ()

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(self.coeffs) < 1 or not any(c != 0.0 for c in self.coeffs):
            raise ConfigurationError("polynomial operator needs a nonzero coefficient")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    def _values(self, t: np.ndarray) -> np.ndarray:
        return np.polynomial.polynomial.polyval(t, (0.0,) + self.coeffs)

    def _deriv(self, t: np.ndarray) -> np.ndarray:
        dcoeffs = tuple((i + 1) * a for i, a in enumerate(self.coeffs))
        return np.polynomial.polynomial.polyval(t, dcoeffs)

    def label(self) -> str:
        return "poly:" + ",".join(f"{c:g}" for c in self.coeffs)


@dataclass(frozen=True)
class Sine(OperatorSpec):
    """t -> sin(t); derivative multiplier cos(t)."""

    def _values(self, t: np.ndarray) -> np.ndarray:
        return np.sin(t)

    def _deriv(self, t: np.ndarray) -> np.ndarray:
        return np.cos(t)

    def label(self) -> str:
        return "sin"


@dataclass(frozen=True)
class Scaled(OperatorSpec):
    """a * inner, with the scalar pulled through the derivative."""

    a: float = 1.0
    inner: OperatorSpec = None

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.inner is None:
            raise ConfigurationError("scaled operator needs an inner operator")
        if self.inner.domain != self.domain or self.inner.codomain != self.codomain:
            raise SpaceMismatch("scaled operator must share the inner operator's spaces")

    def _values(self, t: np.ndarray) -> np.ndarray:
        return self.a * self.inner._values(t)

    def _deriv(self, t: np.ndarray) -> np.ndarray:
        return self.a * self.inner._deriv(t)

    def label(self) -> str:
        return f"scale:{self.a:g}({self.inner.label()})"


@dataclass(frozen=True)
class Sum(OperatorSpec):
    """left + right on identical domains and codomains."""

    left: OperatorSpec = None
    right: OperatorSpec = None

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.left is None or self.right is None:
            raise ConfigurationError("sum operator needs two operands")
        for part in (self.left, self.right):
            if part.domain != self.domain or part.codomain != self.codomain:
                raise SpaceMismatch("sum operands must share domain and codomain")

    def _values(self, t: np.ndarray) -> np.ndarray:
        return self.left._values(t) + self.right._values(t)

    def _deriv(self, t: np.ndarray) -> np.ndarray:
        return self.left._deriv(t) + self.right._deriv(t)

    def label(self) -> str:
        return f"sum({self.left.label()},{self.right.label()})"


@dataclass(frozen=True)
class Compose(OperatorSpec):
    """outer after inner; derivative multipliers multiply (chain rule)."""

    outer: OperatorSpec = None
    inner: OperatorSpec = None

    def __post_init__(self) -> None:
        if self.outer is None or self.inner is None:
            raise ConfigurationError("composition needs two operators")
        if self.inner.codomain != self.outer.domain:
            raise SpaceMismatch("inner codomain must equal outer domain")
        super().__post_init__()
        if self.inner.domain != self.domain or self.outer.codomain != self.codomain:
            raise SpaceMismatch("composition spaces must match the factor spaces")

    def _values(self, t: np.ndarray) -> np.ndarray:
        return self.outer._values(self.inner._values(t))

    def _deriv(self, t: np.ndarray) -> np.ndarray:
        return self.outer._deriv(self.inner._values(t)) * self.inner._deriv(t)

    def label(self) -> str:
        return f"compose({self.outer.label()},{self.inner.label()})"


@dataclass(frozen=True)
class MultiplierMap:
    """A diagonal linear map: apply is the coordinatewise product.

    This is the concrete form of every exact derivative in the family; its
    operator norm is the largest absolute multiplier (exact when domain and
    codomain norms match, an upper-bound surrogate for the C[0,1] ->
    L_p[0,1] pairing).
    """

    space_in: SpaceDescriptor
    space_out: SpaceDescriptor
    multipliers: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.multipliers, dtype=np.float64, copy=True)
        if arr.ndim != 1 or arr.size != self.space_in.dim or self.space_in.dim != self.space_out.dim:
            raise SpaceMismatch("multiplier length must match the (equal) space dims")
        arr.setflags(write=False)
        object.__setattr__(self, "multipliers", arr)


def apply(op: OperatorSpec, x: Vector) -> Vector:
    """Evaluate the operator coordinatewise; the result lives in the codomain."""
    if x.space != op.domain:
        raise SpaceMismatch(
            f"operator domain is {op.domain.label()}, vector is in {x.space.label()}"
        )
    return Vector(op.codomain, op._values(x.coords))


def exact_derivative(op: OperatorSpec, xbar: Vector) -> MultiplierMap:
    """Closed-form derivative of ``op`` at ``xbar`` as a multiplier map."""
    if xbar.space != op.domain:
        raise SpaceMismatch(
            f"operator domain is {op.domain.label()}, point is in {xbar.space.label()}"
        )
    return MultiplierMap(op.domain, op.codomain, op._deriv(xbar.coords))


def apply_map(mult: MultiplierMap, v: Vector) -> Vector:
    """Coordinatewise product multipliers * v, landing in the output space."""
    if v.space != mult.space_in:
        raise SpaceMismatch(
            f"map input space is {mult.space_in.label()}, vector is in {v.space.label()}"
        )
    return Vector(mult.space_out, mult.multipliers * v.coords)


def operator_norm(mult: MultiplierMap) -> float:
    """Largest absolute multiplier; zero iff the map is the zero operator."""
    return float(np.max(np.abs(mult.multipliers)))


def power(m: int, domain: SpaceDescriptor, codomain: SpaceDescriptor = None) -> Power:
    return Power(domain, codomain or domain, m)


def poly(coeffs, domain: SpaceDescriptor, codomain: SpaceDescriptor = None) -> PolyType:
    return PolyType(domain, codomain or domain, tuple(coeffs))


def sine(domain: SpaceDescriptor, codomain: SpaceDescriptor = None) -> Sine:
    return Sine(domain, codomain or domain)


def scaled(a: float, inner: OperatorSpec) -> Scaled:
    return Scaled(inner.domain, inner.codomain, float(a), inner)


def sum_of(left: OperatorSpec, right: OperatorSpec) -> Sum:
    return Sum(left.domain, left.codomain, left, right)


def compose(outer: OperatorSpec, inner: OperatorSpec) -> Compose:
    return Compose(inner.domain, outer.codomain, outer, inner)
