import math

import numpy as np
import pytest

from ordercalc import cones, operators, ordopt, spaces
from ordercalc.errors import DegenerateOperator, ZeroDirection
from ordercalc.operators import poly, power, sine
from ordercalc.ordopt import (
    CriticalSetKind,
    ExtremumStatus,
    PaperClaim,
    absolute_extremum,
    check_order_monotone,
    critical_set_polytype,
    critical_set_sine,
    directional_extremum,
    is_generalized_critical,
)
from ordercalc.spaces import Vector, constant, from_values, geometric, grid_c01, sequence_lp, zeros

K = cones.lp_positive()
SEQ = sequence_lp(2.0, 64)


def test_even_power_critical_at_origin():
    for m in (2, 4):
        assert is_generalized_critical(power(m, SEQ), zeros(SEQ))
    assert is_generalized_critical(power(3, SEQ), zeros(SEQ))


def test_identity_never_critical():
    assert not is_generalized_critical(poly([1.0], SEQ), geometric(SEQ, 0.5))
    assert not is_generalized_critical(poly([1.0], SEQ), zeros(SEQ))


def test_critical_set_pure_cube():
    res = critical_set_polytype([0.0, 0.0, 1.0], paper_mode=True)
    assert res.roots == (0.0,)
    assert res.set_kind is CriticalSetKind.ONLY_ORIGIN
    assert res.paper_claim is PaperClaim.ORIGIN_ONLY
    assert not res.discrepancy_flag


def test_critical_set_squared_binomial():
    # Multiplier polynomial (t + 1)^2: double root at -1, zero not a root.
    res = critical_set_polytype([1.0, 1.0, 1.0 / 3.0], paper_mode=True)
    assert len(res.roots) == 1
    assert res.roots[0] == pytest.approx(-1.0, abs=1e-6)
    assert res.set_kind is CriticalSetKind.EMPTY
    assert not res.discrepancy_flag


def test_critical_set_nonzero_roots_discrepancy():
    res = critical_set_polytype([0.0, -1.5, 1.0], paper_mode=True)
    assert np.allclose(res.roots, [0.0, 1.0], atol=1e-10)
    assert res.set_kind is CriticalSetKind.ORIGIN_PLUS_NONZERO_ROOTS
    assert res.paper_claim is PaperClaim.ORIGIN_ONLY
    assert res.discrepancy_flag
    # The nonzero root really gives a critical point in the truncated space.
    point = from_values(SEQ, [1.0] + [0.0] * 63)
    assert is_generalized_critical(poly([0.0, -1.5, 1.0], SEQ), point, tol=1e-12)


def test_critical_set_degenerate():
    with pytest.raises(DegenerateOperator):
        critical_set_polytype([0.0, 0.0])


def test_critical_set_against_grid_scan():
    # Brute-force oracle: every returned root is a near-zero local minimum of
    # |q| on a fine grid, and every grid sign change is near a returned root.
    rng = np.random.default_rng(5)
    grid = np.linspace(-10.0, 10.0, 20001)
    step = grid[1] - grid[0]
    for _ in range(20):
        m = int(rng.integers(2, 6))
        coeffs = rng.uniform(-2.0, 2.0, m)
        if not np.any(coeffs):
            continue
        res = critical_set_polytype(coeffs)
        q = np.polynomial.polynomial.polyval(
            grid, [(k + 1) * a for k, a in enumerate(coeffs)]
        )
        for root in res.roots:
            if -10.0 <= root <= 10.0:
                q_at_root = np.polynomial.polynomial.polyval(
                    root, [(k + 1) * a for k, a in enumerate(coeffs)]
                )
                assert abs(q_at_root) <= 1e-8
        signs = np.sign(q)
        changes = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
        for idx in changes:
            location = grid[idx]
            assert any(abs(location - r) <= 2 * step for r in res.roots)


def test_directional_even_power_minimum():
    verdict = directional_extremum(power(2, SEQ), K, zeros(SEQ), geometric(SEQ, 0.5))
    assert verdict.status is ExtremumStatus.MINIMUM


def test_directional_cube_not_extreme():
    verdict = directional_extremum(power(3, SEQ), K, zeros(SEQ), geometric(SEQ, 0.5))
    assert verdict.status is ExtremumStatus.NOT_EXTREME
    assert verdict.witness is not None
    assert verdict.witness.kind == "both_sides"


def test_directional_zero_direction():
    with pytest.raises(ZeroDirection):
        directional_extremum(power(2, SEQ), K, zeros(SEQ), zeros(SEQ))


def test_absolute_sine_maximum_and_minimum():
    space = grid_c01(257)
    op = sine(space)
    cone = cones.c_positive()
    rng = np.random.default_rng(1)
    samples = [Vector(space, rng.uniform(-10.0, 10.0, 257)) for _ in range(100)]
    top = absolute_extremum(op, cone, constant(space, math.pi / 2), samples)
    assert top.status is ExtremumStatus.MAXIMUM
    bottom = absolute_extremum(op, cone, constant(space, 3 * math.pi / 2), samples)
    assert bottom.status is ExtremumStatus.MINIMUM


def test_absolute_sine_pn_cone_never_extreme():
    space = grid_c01(257)
    op = sine(space)
    cone = cones.poly_nonneg(3)
    t = space.grid()
    samples = [Vector(space, np.sin(3.0 * t)), constant(space, 0.2)]
    verdict = absolute_extremum(op, cone, constant(space, math.pi / 2), samples)
    assert verdict.status not in (ExtremumStatus.MAXIMUM, ExtremumStatus.MINIMUM)
    assert verdict.witness is not None and verdict.witness.kind == "incomparable"


def test_absolute_empty_samples_inconclusive():
    verdict = absolute_extremum(power(2, SEQ), K, zeros(SEQ), [])
    assert verdict.status is ExtremumStatus.INCONCLUSIVE


def test_critical_set_sine_intervals():
    assert critical_set_sine(0.0, 1.0) == []
    sym = critical_set_sine(-2.0, 2.0)
    assert np.allclose(sym, [-math.pi / 2, math.pi / 2], atol=1e-12)
    three = critical_set_sine(0.0, 8.0)
    assert np.allclose(three, [math.pi / 2, 3 * math.pi / 2, 5 * math.pi / 2], atol=1e-12)


def test_monotone_cube():
    cert = check_order_monotone(power(3, SEQ), K, K, num_pairs=200, seed=7)
    assert cert.order_increasing_sampled
    assert cert.derivative_cone_positive
    assert cert.counterexample is None


def test_monotone_poly_example():
    cert = check_order_monotone(poly([1.0, 1.0, 1.0 / 3.0], SEQ), K, K, num_pairs=200, seed=7)
    assert cert.order_increasing_sampled
    assert cert.derivative_cone_positive


def test_monotone_square_fails_with_counterexample():
    cert = check_order_monotone(power(2, SEQ), K, K, num_pairs=200, seed=7)
    assert not cert.order_increasing_sampled
    assert cert.counterexample is not None
    x, y = cert.counterexample
    # The squaring map only reverses order where coordinates go negative.
    assert np.min(x.coords) < 0


def test_monotone_deterministic():
    a = check_order_monotone(power(3, SEQ), K, K, num_pairs=50, seed=13)
    b = check_order_monotone(power(3, SEQ), K, K, num_pairs=50, seed=13)
    assert a.order_increasing_sampled == b.order_increasing_sampled
    assert a.derivative_cone_positive == b.derivative_cone_positive


def test_extreme_implies_critical_on_fixtures():
    # Every fixture classified maximum/minimum is also a critical point.
    space = grid_c01(129)
    op = sine(space)
    cone = cones.c_positive()
    rng = np.random.default_rng(2)
    samples = [Vector(space, rng.uniform(-10.0, 10.0, 129)) for _ in range(50)]
    for c, expected in ((math.pi / 2, ExtremumStatus.MAXIMUM), (3 * math.pi / 2, ExtremumStatus.MINIMUM)):
        xbar = constant(space, c)
        assert absolute_extremum(op, cone, xbar, samples).status is expected
        assert is_generalized_critical(op, xbar, tol=1e-9)
    for m in (2, 4):
        ev = absolute_extremum(
            power(m, SEQ), K, zeros(SEQ),
            [Vector(SEQ, rng.uniform(-0.5, 0.5, 64)) for _ in range(50)],
        )
        assert ev.status is ExtremumStatus.MINIMUM
        assert is_generalized_critical(power(m, SEQ), zeros(SEQ), tol=1e-9)


def test_converse_fails_cube_at_origin():
    # Critical yet not extreme, witnessed along the decaying direction.
    op = power(3, SEQ)
    assert is_generalized_critical(op, zeros(SEQ))
    verdict = directional_extremum(op, K, zeros(SEQ), geometric(SEQ, 0.5))
    assert verdict.status is ExtremumStatus.NOT_EXTREME


def test_scalar_reduction():
    space = sequence_lp(2.0, 1)
    cone = cones.lp_positive()
    one = from_values(space, [1.0])
    origin = zeros(space)

    assert directional_extremum(power(2, space), cone, origin, one).status is ExtremumStatus.MINIMUM
    assert is_generalized_critical(power(2, space), origin)

    assert directional_extremum(power(3, space), cone, origin, one).status is ExtremumStatus.NOT_EXTREME
    assert is_generalized_critical(power(3, space), origin)

    at_half_pi = from_values(space, [math.pi / 2])
    assert (
        directional_extremum(sine(space), cone, at_half_pi, one, t_max=3.0).status
        is ExtremumStatus.MAXIMUM
    )
    assert is_generalized_critical(sine(space), at_half_pi)
