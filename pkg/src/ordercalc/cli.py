"""Command-line front end.

Subcommands: ``derive``, ``frechet``, ``critical``, ``extrema``,
``monotone``, ``verify``. Spaces, vectors, cones, and operators are given
in small shorthand languages (see ``--help`` of each subcommand); reports
print as text or, with ``--json``, as canonical JSON (sorted keys), which
is byte-identical across runs for a fixed seed.

Exit codes: 0 all checks passed, 1 some check failed, 2 usage/parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import cones, diffcheck, fixtures, operators, ordopt, spaces
from .errors import OrderCalcError, UsageError

SPACE_HELP = "space: lp:p=2,n=64 | c01:g=257 | lp01:p=2,g=257"
VECTOR_HELP = "vector: zeros | const:c | geom:r | JSON array"
CONE_HELP = "cone: K | C+ | Lp+ | Pn+:n=3"
OP_HELP = (
    "operator: power:3 | poly:a1,a2,... | sin | scale:a(OP) | sum(OP,OP) | compose(OP,OP)"
)


def parse_space(text: str) -> spaces.SpaceDescriptor:
    text = text.strip()
    head, _, rest = text.partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            key, _, value = item.partition("=")
            if not value:
                raise UsageError(f"bad space parameter {item!r} in {text!r}")
            params[key.strip()] = value.strip()
    try:
        if head == "lp":
            return spaces.sequence_lp(
                float(params.get("p", 2.0)), int(params.get("n", spaces.DEFAULT_SEQUENCE_DIM))
            )
        if head == "c01":
            return spaces.grid_c01(int(params.get("g", spaces.DEFAULT_GRID_DIM)))
        if head == "lp01":
            return spaces.grid_lp01(
                float(params.get("p", 2.0)), int(params.get("g", spaces.DEFAULT_GRID_DIM))
            )
    except ValueError as exc:
        raise UsageError(f"bad space literal {text!r}: {exc}") from exc
    raise UsageError(f"unknown space kind {head!r} (expected lp, c01 or lp01)")


def parse_cone(text: str) -> cones.ConeDescriptor:
    text = text.strip()
    if text == "K":
        return cones.lp_positive()
    if text == "C+":
        return cones.c_positive()
    if text == "Lp+":
        return cones.lp_function_positive()
    if text.startswith("Pn+:n="):
        try:
            return cones.poly_nonneg(int(text[len("Pn+:n="):]))
        except ValueError as exc:
            raise UsageError(f"bad degree bound in {text!r}") from exc
    raise UsageError(f"unknown cone {text!r} ({CONE_HELP})")


def _split_top_level(text: str) -> list:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise UsageError(f"unbalanced parentheses in {text!r}")
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth != 0:
        raise UsageError(f"unbalanced parentheses in {text!r}")
    parts.append(text[start:])
    return parts


def parse_operator(
    text: str,
    domain: spaces.SpaceDescriptor,
    codomain: Optional[spaces.SpaceDescriptor] = None,
) -> operators.OperatorSpec:
    """Parse the operator mini-language (see module docstring)."""
    text = text.strip()
    codomain = codomain or domain
    try:
        if text == "sin":
            return operators.sine(domain, codomain)
        if text.startswith("power:"):
            return operators.power(int(text[len("power:"):]), domain, codomain)
        if text.startswith("poly:"):
            coeffs = [float(c) for c in text[len("poly:"):].split(",")]
            return operators.poly(coeffs, domain, codomain)
        if text.startswith("scale:"):
            body = text[len("scale:"):]
            open_idx = body.index("(")
            if not body.endswith(")"):
                raise UsageError(f"malformed scale operator {text!r}")
            factor = float(body[:open_idx])
            inner = parse_operator(body[open_idx + 1 : -1], domain, codomain)
            return operators.scaled(factor, inner)
        for name, builder in (("sum(", operators.sum_of), ("compose(", operators.compose)):
            if text.startswith(name) and text.endswith(")"):
                args = _split_top_level(text[len(name):-1])
                if len(args) != 2:
                    raise UsageError(f"{name[:-1]} expects two operators, got {len(args)}")
                if name == "compose(":
                    # The inner factor stays inside the domain space; any
                    # codomain kind change is carried by the outer factor.
                    inner = parse_operator(args[1], domain, domain)
                    outer = parse_operator(args[0], domain, codomain)
                    return builder(outer, inner)
                return builder(
                    parse_operator(args[0], domain, codomain),
                    parse_operator(args[1], domain, codomain),
                )
    except (ValueError, IndexError) as exc:
        raise UsageError(f"bad operator literal {text!r}: {exc}") from exc
    raise UsageError(f"unknown operator {text!r} ({OP_HELP})")


def _emit(payload: dict, as_json: bool, lines) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)


def _report_lines(report: diffcheck.FrechetReport) -> list:
    slope = "exact-zero remainder" if report.exact_zero_remainder else f"{report.remainder_slope:.4f}"
    lines = [
        f"remainder slope:        {slope}",
        f"residual at s={report.scales[-1]:g}: {report.residual_at_smallest:.3e}",
        f"max directional error:  {report.max_directional_error:.3e}",
        f"verdict:                {report.verdict}  (seed {report.seed})",
    ]
    return lines


def _derive_payload(args) -> tuple:
    space = parse_space(args.space)
    codomain = parse_space(args.codomain) if args.codomain else None
    op = parse_operator(args.op, space, codomain)
    xbar = spaces.parse_vector(args.at, space)
    cfg = diffcheck.DiffConfig(rng_seed=args.seed)
    exact = operators.exact_derivative(op, xbar)
    report = diffcheck.verify_frechet(op, xbar, cfg, exact)
    payload = {
        "operator": op.label(),
        "space": space.label(),
        "point": spaces.coords_list(xbar),
        "multipliers": [float(m) for m in exact.multipliers],
        "operator_norm": operators.operator_norm(exact),
        "frechet": report.to_dict(),
    }
    return payload, exact, report


def cmd_derive(args) -> int:
    payload, exact, report = _derive_payload(args)
    _emit(
        payload,
        args.json,
        [
            f"operator:    {payload['operator']}",
            f"space:       {payload['space']}",
            f"multipliers: {spaces.format_coords(exact.multipliers)}",
            f"op norm:     {payload['operator_norm']:.6g}",
            *_report_lines(report),
        ],
    )
    return 0 if report.passed() else 1


def cmd_frechet(args) -> int:
    payload, _, report = _derive_payload(args)
    _emit(payload["frechet"], args.json, _report_lines(report))
    return 0 if report.passed() else 1


def cmd_critical(args) -> int:
    if args.op.strip() == "sin":
        roots = ordopt.critical_set_sine(args.lo, args.hi, tol=args.tol)
        payload = {"operator": "sin", "interval": [args.lo, args.hi], "critical_constants": roots}
        _emit(payload, args.json, [
            f"critical constants of sin in [{args.lo:g}, {args.hi:g}]:",
            "  " + (", ".join(f"{r:.12f}" for r in roots) if roots else "(none)"),
        ])
        return 0
    if not args.op.startswith("poly:"):
        raise UsageError("critical expects --op poly:a1,a2,... or --op sin")
    coeffs = [float(c) for c in args.op[len("poly:"):].split(",")]
    result = ordopt.critical_set_polytype(coeffs, paper_mode=args.paper_mode)
    payload = {
        "coefficients": coeffs,
        "roots": list(result.roots),
        "set_kind": result.set_kind.value,
        "paper_claim": None if result.paper_claim is None else result.paper_claim.value,
        "discrepancy_flag": result.discrepancy_flag,
    }
    lines = [
        f"multiplier roots: {payload['roots']}",
        f"critical set:     {result.set_kind.value}",
    ]
    if args.paper_mode:
        lines.append(
            f"published claim:  {result.paper_claim.value}"
            + ("  ** computed set disagrees **" if result.discrepancy_flag else "")
        )
    _emit(payload, args.json, lines)
    return 0


def cmd_extrema(args) -> int:
    space = parse_space(args.space)
    codomain = parse_space(args.codomain) if args.codomain else None
    op = parse_operator(args.op, space, codomain)
    cone = parse_cone(args.cone)
    xbar = spaces.parse_vector(args.at, space)
    if args.direction is not None:
        v = spaces.parse_vector(args.direction, space)
        verdict = ordopt.directional_extremum(
            op, cone, xbar, v, t_max=args.t_max, num_t=args.num_t
        )
    else:
        rng = np.random.default_rng(args.seed)
        lo, hi = args.sample_range
        samples = [
            spaces.Vector(space, rng.uniform(lo, hi, space.dim)) for _ in range(args.samples)
        ]
        verdict = ordopt.absolute_extremum(op, cone, xbar, samples)
    payload = {
        "operator": op.label(),
        "cone": cone.label(),
        "status": verdict.status.value,
        "scope": verdict.scope,
        "witness": None
        if verdict.witness is None
        else {"kind": verdict.witness.kind, "labels": list(verdict.witness.labels)},
        "seed": args.seed,
    }
    _emit(payload, args.json, [
        f"operator: {payload['operator']}   cone: {payload['cone']}",
        f"scope:    {verdict.scope}",
        f"status:   {verdict.status.value}"
        + (f"   witness: {payload['witness']}" if verdict.witness else ""),
    ])
    return 0


def cmd_monotone(args) -> int:
    space = parse_space(args.space)
    codomain = parse_space(args.codomain) if args.codomain else None
    op = parse_operator(args.op, space, codomain)
    cert = ordopt.check_order_monotone(
        op, parse_cone(args.dcone), parse_cone(args.ccone), args.pairs, args.seed
    )
    payload = {
        "operator": op.label(),
        "order_increasing_sampled": cert.order_increasing_sampled,
        "derivative_cone_positive": cert.derivative_cone_positive,
        "num_pairs": cert.num_pairs,
        "seed": cert.seed,
        "counterexample": None
        if cert.counterexample is None
        else [spaces.coords_list(v) for v in cert.counterexample],
    }
    lines = [
        f"operator:                 {payload['operator']}",
        f"order increasing sampled: {cert.order_increasing_sampled}",
        f"derivative cone positive: {cert.derivative_cone_positive}",
        f"pairs/points per test:    {cert.num_pairs}  (seed {cert.seed})",
    ]
    if cert.counterexample is not None:
        x, y = cert.counterexample
        lines.append(f"counterexample x: {spaces.format_coords(x.coords)}")
        lines.append(f"counterexample y: {spaces.format_coords(y.coords)}")
    _emit(payload, args.json, lines)
    return 0


def cmd_verify(args) -> int:
    results = fixtures.run_fixtures(args.filter, args.seed)
    payload = {
        "seed": args.seed,
        "fixtures": [r.to_dict() for r in results],
        "num_pass": sum(r.status == fixtures.PASS for r in results),
        "num_fail": sum(r.status == fixtures.FAIL for r in results),
        "num_discrepancy_documented": sum(r.status == fixtures.DISCREPANCY for r in results),
    }
    lines = [f"{r.fixture_id:36s} {r.status}" for r in results]
    lines.append(
        f"{payload['num_pass']} pass, {payload['num_fail']} fail, "
        f"{payload['num_discrepancy_documented']} discrepancy documented"
    )
    _emit(payload, args.json, lines)
    return 1 if payload["num_fail"] else 0


def _add_common(parser: argparse.ArgumentParser, cone_flags: bool = False) -> None:
    parser.add_argument("--space", default="lp:p=2,n=64", help=SPACE_HELP)
    parser.add_argument("--codomain", default=None, help="codomain space (c01 -> lp01 only)")
    parser.add_argument("--op", required=True, help=OP_HELP)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json", action="store_true", help="emit canonical JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordercalc",
        description="Exact pointwise-operator derivatives, ordering cones and "
        "ordered extrema on discretized sequence and function spaces.",
    )
    parser.add_argument("--config", default=None, help="TOML file providing argument defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="exact derivative multipliers plus the finite-difference certificate")
    _add_common(p)
    p.add_argument("--at", default="zeros", help=VECTOR_HELP)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("frechet", help="finite-difference certificate only")
    _add_common(p)
    p.add_argument("--at", default="zeros", help=VECTOR_HELP)
    p.set_defaults(func=cmd_frechet)

    p = sub.add_parser("critical", help="critical set of a polynomial operator or of sin")
    p.add_argument("--op", required=True, help="poly:a1,a2,... or sin")
    p.add_argument("--paper-mode", action="store_true", help="compare against the published dichotomy")
    p.add_argument("--lo", type=float, default=0.0, help="interval start (sin only)")
    p.add_argument("--hi", type=float, default=7.0, help="interval end (sin only)")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_critical, seed=0)

    p = sub.add_parser("extrema", help="directional or sampled absolute extremum classification")
    _add_common(p)
    p.add_argument("--cone", required=True, help=CONE_HELP)
    p.add_argument("--at", default="zeros", help=VECTOR_HELP)
    p.add_argument("--direction", default=None, help=f"direction for the ray test ({VECTOR_HELP})")
    p.add_argument("--t-max", type=float, default=1.0)
    p.add_argument("--num-t", type=int, default=41)
    p.add_argument("--samples", type=int, default=100, help="absolute test sample count")
    p.add_argument(
        "--sample-range",
        type=lambda s: tuple(float(x) for x in s.split(",")),
        default=(-10.0, 10.0),
        help="uniform coordinate range for absolute-test samples, as lo,hi",
    )
    p.set_defaults(func=cmd_extrema)

    p = sub.add_parser("monotone", help="order-increasing certificate for an operator")
    _add_common(p)
    p.add_argument("--dcone", required=True, help=f"domain {CONE_HELP}")
    p.add_argument("--ccone", required=True, help=f"codomain {CONE_HELP}")
    p.add_argument("--pairs", type=int, default=200)
    p.set_defaults(func=cmd_monotone)

    p = sub.add_parser("verify", help="run the built-in verification fixture suite")
    p.add_argument("filter", nargs="?", default=None, help="glob over fixture ids")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def _apply_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    if not args.config:
        return
    try:
        with open(args.config, "rb") as handle:
            table = tomllib.load(handle)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise UsageError(f"cannot read config {args.config!r}: {exc}") from exc
    defaults = parser.parse_args([args.command, *_dummy_required(args)])
    for key, value in table.items():
        key = key.replace("-", "_")
        if not hasattr(args, key):
            raise UsageError(f"unknown config key {key!r}")
        # Explicit command-line values win; config only replaces defaults.
        if getattr(args, key) == getattr(defaults, key, None):
            setattr(args, key, value)


def _dummy_required(args: argparse.Namespace) -> list:
    if hasattr(args, "op"):
        extra = ["--op", args.op]
        for flag in ("cone", "dcone", "ccone"):
            if hasattr(args, flag):
                extra += [f"--{flag}", getattr(args, flag)]
        return extra
    return []


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config(args, parser)
        return args.func(args)
    except OrderCalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
