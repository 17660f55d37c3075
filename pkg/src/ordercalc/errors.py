"""Exception types shared across the package."""


class OrderCalcError(Exception):
    """Base class for all errors raised by ordercalc."""


class InvalidVector(OrderCalcError):
    """Vector data is malformed (wrong length, NaN/Inf entries, empty)."""


class WrongSpace(OrderCalcError):
    """Operation requires a vector from a different kind of space."""


class SpaceMismatch(OrderCalcError):
    """Two objects live in incompatible spaces."""


class ZeroDirection(OrderCalcError):
    """A nonzero direction vector was required."""


class NumericalBreakdown(OrderCalcError):
    """A finite-difference computation produced nonfinite values."""


class InvalidScale(OrderCalcError):
    """A perturbation norm fell outside the admissible range."""


class DegenerateOperator(OrderCalcError):
    """An operator description with no nonzero coefficients."""


class ConfigurationError(OrderCalcError):
    """A descriptor or config object violates its invariants."""


class UsageError(OrderCalcError):
    """Bad command-line input (unknown fixture id, bad mini-language)."""
