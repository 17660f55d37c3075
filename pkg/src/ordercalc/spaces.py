"""Discretized Banach spaces and their vectors.

Three spaces are supported, all represented by finite coordinate arrays:

* ``SEQUENCE_LP`` -- a length-N truncation of the real sequence space with
  the p-norm (implicit zero tail),
* ``GRID_C01`` -- continuous functions on [0, 1] sampled on a uniform grid,
  with the sup norm taken over the samples,
* ``GRID_LP01`` -- p-integrable functions on [0, 1] on the same uniform
  grid, with the norm computed by composite trapezoid quadrature.

Vectors are immutable; every operation returns a fresh vector.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ConfigurationError, InvalidVector, SpaceMismatch, WrongSpace


class SpaceKind(enum.Enum):
    SEQUENCE_LP = "lp"
    GRID_C01 = "c01"
    GRID_LP01 = "lp01"


_GRID_KINDS = (SpaceKind.GRID_C01, SpaceKind.GRID_LP01)
_P_KINDS = (SpaceKind.SEQUENCE_LP, SpaceKind.GRID_LP01)

DEFAULT_SEQUENCE_DIM = 64
DEFAULT_GRID_DIM = 257


@dataclass(frozen=True)
class SpaceDescriptor:
    """Which discretized space a vector lives in, plus its parameters.

    ``p`` is required (and must exceed 1) for the two p-norm kinds; ``dim``
    is the truncation length for sequences or the grid-point count for the
    grid spaces (uniform on [0, 1], both endpoints included).
    """

    kind: SpaceKind
    dim: int
    p: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind in _P_KINDS:
            if self.p is None or not (self.p > 1.0):
                raise ConfigurationError(
                    f"{self.kind.value} space requires exponent p > 1, got {self.p}"
                )
        elif self.p is not None:
            raise ConfigurationError("C[0,1] grid space takes no exponent p")
        min_dim = 2 if self.kind in _GRID_KINDS else 1
        if self.dim < min_dim:
            raise ConfigurationError(
                f"{self.kind.value} space requires dim >= {min_dim}, got {self.dim}"
            )

    def compatible_with(self, other: "SpaceDescriptor") -> bool:
        return self == other

    def grid(self) -> np.ndarray:
        """Uniform grid on [0, 1] for the function spaces."""
        if self.kind not in _GRID_KINDS:
            raise WrongSpace("sequence spaces carry no grid")
        return np.linspace(0.0, 1.0, self.dim)

    def label(self) -> str:
        if self.kind is SpaceKind.SEQUENCE_LP:
            return f"lp:p={_fmt(self.p)},n={self.dim}"
        if self.kind is SpaceKind.GRID_C01:
            return f"c01:g={self.dim}"
        return f"lp01:p={_fmt(self.p)},g={self.dim}"


def _fmt(x: float) -> str:
    return f"{x:g}"


def sequence_lp(p: float = 2.0, dim: int = DEFAULT_SEQUENCE_DIM) -> SpaceDescriptor:
    return SpaceDescriptor(SpaceKind.SEQUENCE_LP, dim, p)


def grid_c01(dim: int = DEFAULT_GRID_DIM) -> SpaceDescriptor:
    return SpaceDescriptor(SpaceKind.GRID_C01, dim)


def grid_lp01(p: float = 2.0, dim: int = DEFAULT_GRID_DIM) -> SpaceDescriptor:
    return SpaceDescriptor(SpaceKind.GRID_LP01, dim, p)


@dataclass(frozen=True, eq=False)
class Vector:
    """A finite coordinate array bound to a space descriptor.

    Coordinates are sequence entries for ``SEQUENCE_LP`` and grid samples
    f(t_0)..f(t_{G-1}) for the grid spaces. The array is copied on
    construction and frozen; mutate by building a new vector.
    """

    space: SpaceDescriptor
    coords: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        arr = np.array(self.coords, dtype=np.float64, copy=True)
        if arr.ndim != 1 or arr.size != self.space.dim:
            raise InvalidVector(
                f"expected {self.space.dim} coordinates, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise InvalidVector("coordinates must be finite (no NaN/Inf)")
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Vector({self.space.label()}, {format_coords(self.coords)})"


def zeros(space: SpaceDescriptor) -> Vector:
    return Vector(space, np.zeros(space.dim))


def constant(space: SpaceDescriptor, value: float) -> Vector:
    return Vector(space, np.full(space.dim, float(value)))


def geometric(space: SpaceDescriptor, ratio: float) -> Vector:
    """The sequence {r^n} for n = 1..N (so ratio 0.5 gives 1/2, 1/4, ...)."""
    n = np.arange(1, space.dim + 1, dtype=np.float64)
    return Vector(space, np.power(float(ratio), n))


def from_values(space: SpaceDescriptor, values: Sequence[float]) -> Vector:
    return Vector(space, np.asarray(values, dtype=np.float64))


def norm(x: Vector) -> float:
    """Norm of ``x`` in its own space.

    Sequence spaces use the p-norm of the coordinates; the C[0,1] grid uses
    the exact sample maximum; the L_p[0,1] grid integrates |f|^p by the
    composite trapezoid rule before taking the p-th root.
    """
    kind = x.space.kind
    if kind is SpaceKind.SEQUENCE_LP:
        p = x.space.p
        return float(np.sum(np.abs(x.coords) ** p) ** (1.0 / p))
    if kind is SpaceKind.GRID_C01:
        return float(np.max(np.abs(x.coords)))
    p = x.space.p
    trapezoid = getattr(np, "trapezoid", np.trapz)
    integral = float(trapezoid(np.abs(x.coords) ** p, x.space.grid()))
    return integral ** (1.0 / p)


def sup_functional(x: Vector) -> float:
    """Largest absolute coordinate of a sequence-space vector."""
    if x.space.kind is not SpaceKind.SEQUENCE_LP:
        raise WrongSpace("sup functional is defined on the sequence space only")
    return float(np.max(np.abs(x.coords)))


def axpy(a: float, x: Vector, b: float, y: Vector) -> Vector:
    """Coordinatewise a*x + b*y in the common space."""
    if not x.space.compatible_with(y.space):
        raise SpaceMismatch(
            f"cannot combine vectors from {x.space.label()} and {y.space.label()}"
        )
    return Vector(x.space, a * x.coords + b * y.coords)


def add(x: Vector, y: Vector) -> Vector:
    return axpy(1.0, x, 1.0, y)


def sub(x: Vector, y: Vector) -> Vector:
    return axpy(1.0, x, -1.0, y)


def scale(a: float, x: Vector) -> Vector:
    return Vector(x.space, a * x.coords)


def format_coords(coords: np.ndarray, limit: int = 8) -> str:
    """Render at most ``limit`` coordinates, with an ellipsis count."""
    head = ", ".join(f"{c:.6g}" for c in coords[:limit])
    if coords.size > limit:
        return f"[{head}, ... +{coords.size - limit} more]"
    return f"[{head}]"


def coords_list(x: Vector) -> list:
    """Full coordinate list for JSON payloads."""
    return [float(c) for c in x.coords]


def parse_vector(text: str, space: SpaceDescriptor) -> Vector:
    """Parse the vector mini-language.

    Accepted forms: ``zeros``, ``const:c``, ``geom:r`` (coordinates r^n for
    n = 1..N) and a JSON array of length dim.
    """
    text = text.strip()
    if text == "zeros":
        return zeros(space)
    if text.startswith("const:"):
        return constant(space, float(text[len("const:"):]))
    if text.startswith("geom:"):
        return geometric(space, float(text[len("geom:"):]))
    if text.startswith("["):
        values = json.loads(text)
        return from_values(space, values)
    raise InvalidVector(f"unrecognized vector literal: {text!r}")
