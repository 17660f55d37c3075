"""Acceptance gate: one test per advertised guarantee, at the stated tolerance.

Each test prints a single pass/fail line (visible with ``pytest -s`` or on
failure) and asserts the corresponding end-to-end property of the library.
"""

import math

import numpy as np
import pytest

from ordercalc import cli, cones, diffcheck, operators, ordopt, spaces
from ordercalc.cones import Relation, compare, lp_positive, c_positive, lp_function_positive, poly_nonneg
from ordercalc.diffcheck import DiffConfig, check_remainder_bound, gateaux_fd, verify_frechet
from ordercalc.operators import (
    MultiplierMap,
    apply,
    apply_map,
    compose,
    exact_derivative,
    poly,
    power,
    scaled,
    sine,
    sum_of,
)
from ordercalc.ordopt import (
    CriticalSetKind,
    ExtremumStatus,
    absolute_extremum,
    check_order_monotone,
    critical_set_polytype,
    critical_set_sine,
    directional_extremum,
    is_generalized_critical,
)
from ordercalc.spaces import Vector, axpy, constant, from_values, geometric, grid_c01, grid_lp01, norm, sequence_lp, zeros


def _report(number: int, name: str, ok: bool) -> None:
    print(f"criterion {number:2d} ({name}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"acceptance criterion {number} ({name}) failed"


def _space_configs():
    """The five space configurations every derivative check runs over."""
    out = []
    for p in (1.5, 2.0, 3.0):
        s = sequence_lp(p, 64)
        out.append((s, s))
    c = grid_c01(257)
    out.append((c, c))
    out.append((c, grid_lp01(2.0, 257)))
    return out


def _family(domain, codomain, rng):
    ops = [power(m, domain, codomain) for m in (1, 2, 3, 5)]
    for _ in range(3):
        deg = int(rng.integers(2, 5))
        coeffs = rng.uniform(-1.5, 1.5, deg)
        while not np.any(coeffs):
            coeffs = rng.uniform(-1.5, 1.5, deg)
        ops.append(poly(list(coeffs), domain, codomain))
    ops.append(sine(domain, codomain))
    return ops


def _random_point(space, rng, scale=0.5):
    return Vector(space, rng.uniform(-scale, scale, space.dim))


def test_criterion_01_derivative_oracle_equivalence():
    rng = np.random.default_rng(101)
    cfg = DiffConfig()
    ok = True
    for domain, codomain in _space_configs():
        for op in _family(domain, codomain, rng):
            for _ in range(50):
                xbar = _random_point(domain, rng)
                v = _random_point(domain, rng)
                if norm(v) == 0.0:
                    continue
                exact = exact_derivative(op, xbar)
                fd = gateaux_fd(op, xbar, v, cfg)
                err = norm(axpy(1.0, fd.value, -1.0, apply_map(exact, v)))
                ref = norm(apply_map(exact, v))
                if err > 1e-6 * (1.0 + ref):
                    ok = False
    _report(1, "derivative-formula oracle equivalence", ok)


def test_criterion_02_frechet_slope_and_corrupted_failure():
    rng = np.random.default_rng(202)
    cfg = DiffConfig(num_directions=8, rng_seed=7)
    ok = True
    for domain, codomain in _space_configs():
        for op in _family(domain, codomain, rng):
            for _ in range(10):
                xbar = _random_point(domain, rng)
                exact = exact_derivative(op, xbar)
                if not verify_frechet(op, xbar, cfg, exact).passed():
                    ok = False
        # A corrupted candidate derivative must be rejected.
        op = power(2, domain, codomain)
        xbar = _random_point(domain, rng)
        good = exact_derivative(op, xbar)
        corrupted = MultiplierMap(good.space_in, good.space_out, good.multipliers + 0.1)
        if verify_frechet(op, xbar, cfg, corrupted).passed():
            ok = False
    _report(2, "Frechet remainder slope + corrupted derivative rejected", ok)


def test_criterion_03_power_remainder_bound():
    rng = np.random.default_rng(303)
    space = sequence_lp(2.0, 64)
    ok = True
    for _ in range(100):
        m = int(rng.integers(1, 6))
        xbar = _random_point(space, rng, scale=1.0)
        u = _random_point(space, rng, scale=1.0)
        target = rng.uniform(0.01, 0.9)
        u = Vector(space, u.coords * (target / norm(u)))
        if not check_remainder_bound(power(m, space), xbar, u):
            ok = False
    _report(3, "power-operator remainder bound", ok)


def test_criterion_04_linearity_and_chain_rule():
    rng = np.random.default_rng(404)
    space = sequence_lp(2.0, 64)
    ok = True
    for _ in range(20):
        xbar = _random_point(space, rng)
        a = float(rng.uniform(-3.0, 3.0))
        left = power(int(rng.integers(1, 5)), space)
        right = sine(space)
        d_sum = exact_derivative(sum_of(left, right), xbar).multipliers
        d_parts = exact_derivative(left, xbar).multipliers + exact_derivative(right, xbar).multipliers
        if np.max(np.abs(d_sum - d_parts)) > 1e-12:
            ok = False
        d_scaled = exact_derivative(scaled(a, left), xbar).multipliers
        if np.max(np.abs(d_scaled - a * exact_derivative(left, xbar).multipliers)) > 1e-12:
            ok = False
        for outer, inner in ((power(3, space), sine(space)), (sine(space), power(3, space))):
            d_comp = exact_derivative(compose(outer, inner), xbar).multipliers
            mid = apply(inner, xbar)
            chained = exact_derivative(outer, mid).multipliers * exact_derivative(inner, xbar).multipliers
            if np.max(np.abs(d_comp - chained)) > 1e-12:
                ok = False
    _report(4, "derivative linearity and chain rule (1e-12)", ok)


def test_criterion_05_polynomial_critical_set_dichotomy():
    ok = True
    # a_1 != 0: the multiplier polynomial has a nonzero constant term, so 0
    # is never a root and the truncated critical set is empty.
    res = critical_set_polytype([1.0, 1.0, 1.0 / 3.0], paper_mode=True)
    ok &= res.set_kind is CriticalSetKind.EMPTY
    # pure powers: a single nonzero leading coefficient, origin only.
    for m, coeffs in ((2, [0.0, 1.0]), (3, [0.0, 0.0, 1.0]), (5, [0.0, 0.0, 0.0, 0.0, 1.0])):
        res = critical_set_polytype(coeffs, paper_mode=True)
        ok &= res.set_kind is CriticalSetKind.ONLY_ORIGIN and res.roots == (0.0,)
    # (0, -3/2, 1): a nonzero multiplier root produces extra critical points.
    res = critical_set_polytype([0.0, -1.5, 1.0], paper_mode=True)
    ok &= res.set_kind is CriticalSetKind.ORIGIN_PLUS_NONZERO_ROOTS
    ok &= res.discrepancy_flag is True
    space = sequence_lp(2.0, 64)
    point = from_values(space, [1.0] + [0.0] * 63)
    multipliers = exact_derivative(poly([0.0, -1.5, 1.0], space), point).multipliers
    ok &= bool(np.max(np.abs(multipliers)) <= 1e-12)
    _report(5, "polynomial critical-set dichotomy + flagged nonzero root", ok)


def test_criterion_06_even_power_minimum_at_origin():
    rng = np.random.default_rng(606)
    space = sequence_lp(2.0, 64)
    cone = lp_positive()
    samples = [_random_point(space, rng, scale=1.0) for _ in range(200)]
    ok = True
    for m in (2, 4):
        op = power(m, space)
        verdict = absolute_extremum(op, cone, zeros(space), samples)
        ok &= verdict.status is ExtremumStatus.MINIMUM
        ok &= is_generalized_critical(op, zeros(space))
    _report(6, "even powers: minimum + critical at the origin", ok)


def test_criterion_07_cube_critical_but_not_extreme():
    space = sequence_lp(2.0, 64)
    op = power(3, space)
    origin, v = zeros(space), geometric(space, 0.5)
    ok = is_generalized_critical(op, origin)
    verdict = directional_extremum(op, lp_positive(), origin, v)
    ok &= verdict.status is ExtremumStatus.NOT_EXTREME
    ok &= verdict.witness is not None and verdict.witness.kind == "both_sides"
    if verdict.witness is not None:
        ts = [float(lbl.split("=")[1]) for lbl in verdict.witness.labels]
        ok &= min(ts) < 0 < max(ts)
    # sign separation at t = +/- 0.5 specifically
    cone = lp_positive()
    base = apply(op, origin)
    up = compare(cone, apply(op, axpy(1.0, origin, 0.5, v)), base)
    down = compare(cone, apply(op, axpy(1.0, origin, -0.5, v)), base)
    ok &= up.relation is Relation.GREATER_EQ and up.is_strict
    ok &= down.relation is Relation.LESS_EQ and down.is_strict
    _report(7, "odd cube: critical yet directionally not extreme", ok)


def test_criterion_08_monotone_certificates():
    space = sequence_lp(2.0, 64)
    cone = lp_positive()
    ok = True
    for op in (power(3, space), poly([1.0, 1.0, 1.0 / 3.0], space)):
        first = check_order_monotone(op, cone, cone, num_pairs=200, seed=7)
        second = check_order_monotone(op, cone, cone, num_pairs=200, seed=7)
        ok &= first.order_increasing_sampled and first.derivative_cone_positive
        ok &= first.order_increasing_sampled == second.order_increasing_sampled
        ok &= first.derivative_cone_positive == second.derivative_cone_positive
    _report(8, "order-increasing certificates, seed-deterministic", ok)


def test_criterion_09_sine_critical_constants_and_pn_incomparability():
    # The first three critical constants of sin are pi/2, 3pi/2 and 5pi/2;
    # 5pi/2 = 7.8539..., so the window must reach past 7.85 to contain all
    # three (see the decisions ledger for the interval choice).
    found = critical_set_sine(0.0, 8.0)
    expected = [math.pi / 2, 3 * math.pi / 2, 5 * math.pi / 2]
    ok = len(found) == 3 and all(abs(a - b) <= 1e-12 for a, b in zip(found, expected))
    ok &= critical_set_sine(0.0, 1.0) == []
    space = grid_c01(257)
    t = space.grid()
    samples = [
        Vector(space, np.sin(3.0 * t)),
        Vector(space, t - t**2),
        constant(space, 0.3),
        Vector(space, np.cos(5.0 * t)),
    ]
    verdict = absolute_extremum(sine(space), poly_nonneg(3), constant(space, math.pi / 2), samples)
    ok &= verdict.status not in (ExtremumStatus.MAXIMUM, ExtremumStatus.MINIMUM)
    ok &= verdict.witness is not None and verdict.witness.kind == "incomparable"
    _report(9, "sine critical constants + Pn+ incomparability", ok)


def test_criterion_10_sine_extrema_under_function_cones():
    rng = np.random.default_rng(1010)
    ok = True
    for space, cone in ((grid_c01(257), c_positive()), (grid_lp01(2.0, 257), lp_function_positive())):
        op = sine(space)
        samples = [Vector(space, rng.uniform(-10.0, 10.0, space.dim)) for _ in range(100)]
        for c, expected in (
            (math.pi / 2, ExtremumStatus.MAXIMUM),
            (5 * math.pi / 2, ExtremumStatus.MAXIMUM),
            (3 * math.pi / 2, ExtremumStatus.MINIMUM),
        ):
            xbar = constant(space, c)
            ok &= absolute_extremum(op, cone, xbar, samples).status is expected
            # extreme points are generalized critical points
            ok &= is_generalized_critical(op, xbar, tol=1e-9)
    _report(10, "sine extrema under C+ and Lp+ at critical constants", ok)


def test_criterion_11_scalar_reduction():
    space = sequence_lp(2.0, 1)
    cone = lp_positive()
    one = from_values(space, [1.0])
    origin = zeros(space)
    ok = directional_extremum(power(2, space), cone, origin, one).status is ExtremumStatus.MINIMUM
    ok &= is_generalized_critical(power(2, space), origin)
    ok &= directional_extremum(power(3, space), cone, origin, one).status is ExtremumStatus.NOT_EXTREME
    ok &= is_generalized_critical(power(3, space), origin)
    at_half_pi = from_values(space, [math.pi / 2])
    ok &= (
        directional_extremum(sine(space), cone, at_half_pi, one, t_max=3.0).status
        is ExtremumStatus.MAXIMUM
    )
    ok &= is_generalized_critical(sine(space), at_half_pi)
    _report(11, "scalar reduction on the nonnegative half-line", ok)


def test_criterion_12_verify_json_determinism(capsys):
    argv = ["verify", "--seed", "0", "--json"]
    code1 = cli.main(list(argv))
    out1 = capsys.readouterr().out
    code2 = cli.main(list(argv))
    out2 = capsys.readouterr().out
    ok = code1 == 0 and code2 == 0 and out1 == out2 and len(out1) > 0
    _report(12, "verification suite JSON is byte-identical across runs", ok)
