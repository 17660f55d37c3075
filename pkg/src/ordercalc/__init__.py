"""Pointwise-operator calculus on discretized sequence and function spaces.

Exact derivative formulas (as diagonal multiplier maps), ordering cones
with tolerance-based partial orders, generalized critical points, ordered
extremum classification, and independent finite-difference verification of
every closed form. See the README for the CLI.
"""

from .cones import (
    ConeDescriptor,
    ConeKind,
    Membership,
    OrderVerdict,
    Relation,
    c_positive,
    compare,
    cone_refinement_check,
    in_cone,
    lp_function_positive,
    lp_positive,
    poly_nonneg,
)
from .diffcheck import (
    DiffConfig,
    FrechetReport,
    GateauxEstimate,
    Scheme,
    check_remainder_bound,
    gateaux_fd,
    verify_frechet,
)
from .operators import (
    Compose,
    MultiplierMap,
    OperatorSpec,
    PolyType,
    Power,
    Scaled,
    Sine,
    Sum,
    apply,
    apply_map,
    compose,
    exact_derivative,
    operator_norm,
    poly,
    power,
    scaled,
    sine,
    sum_of,
)
from .ordopt import (
    CriticalSetKind,
    CriticalSetResult,
    ExtremumStatus,
    ExtremumVerdict,
    MonotoneCertificate,
    PaperClaim,
    absolute_extremum,
    check_order_monotone,
    critical_set_polytype,
    critical_set_sine,
    directional_extremum,
    is_generalized_critical,
)
from .spaces import (
    SpaceDescriptor,
    SpaceKind,
    Vector,
    axpy,
    constant,
    from_values,
    geometric,
    grid_c01,
    grid_lp01,
    norm,
    sequence_lp,
    sup_functional,
    zeros,
)

__version__ = "0.1.0"
