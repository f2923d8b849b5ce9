"""Command-line frontend.

Subcommands: target, domain, bounded, boyd, conjugate, probe.  Space
descriptions use the small DSL from ``specdsl``.  Reports are deterministic
JSON (fixed field order, floats at 12 significant digits) or CSV grid dumps.
Exit codes: 0 decision reached (negative verdicts included), 2 parse error,
3 numeric indeterminacy.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import oracle, optimality, reduction
from . import boyd as boydmod
from . import young as youngmod
from .grid import GridSpec
from .specdsl import SpecParseError, parse_spec, render
from .young import GammaContext

SCHEMA = "orlicz-calc/1"


def _fmt(value):
    """Render floats at 12 significant digits; recurse into containers."""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {k: _fmt(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_fmt(v) for v in value]
    return value


def _emit_json(payload: dict) -> None:
    body = {"schema": SCHEMA}
    body.update(payload)
    json.dump(_fmt(body), sys.stdout, indent=2)
    sys.stdout.write("\n")


def _emit_grid_csv(fn: youngmod.YoungFn) -> None:
    tab = fn.table
    sys.stdout.write("t,value\n")
    for t, y in zip(tab.t, tab.y):
        sys.stdout.write(f"{t:.12g},{y:.12g}\n")


def young_record(fn: youngmod.YoungFn, *, stride: int | None = None) -> dict:
    """JSON record {family, params, grid} for a Young function.

    The grid section is decimated to one sample per decade by default; the
    full table is available through the CSV output format.
    """
    family = fn.symbolic.render() if fn.symbolic is not None else (
        fn.profile_hint.render() if fn.profile_hint is not None else "tabulated")
    tab = fn.table
    step = stride if stride else max(1, fn.grid.points_per_decade)
    idx = np.arange(0, len(tab.t), step)
    return {
        "family": family,
        "params": {
            "zero_plateau_end": fn.zero_plateau_end,
            "finite_sup": fn.finite_sup,
        },
        "grid": {
            "t": [float(x) for x in tab.t[idx]],
            "value": [float(x) for x in tab.y[idx]],
        },
    }


def _grid_from_args(args) -> GridSpec:
    return GridSpec(t_min=args.tmin, t_max=args.tmax,
                    points_per_decade=args.grid_points_per_decade)


def _load(text: str, grid: GridSpec) -> youngmod.YoungFn:
    return parse_spec(text).to_young(grid=grid)


def _boyd_payload(est) -> dict:
    return {
        "i_lower": est.i_lower,
        "I_upper": est.I_upper,
        "ci_halfwidth": est.ci_halfwidth,
        "method": est.method,
        "flags": list(est.flags),
    }


def cmd_target(args) -> int:
    grid = _grid_from_args(args)
    ctx = GammaContext(args.n, args.gamma)
    A = _load(args.spec, grid)
    result = optimality.optimal_target(A, ctx)
    payload = {
        "command": "target",
        "input": render(parse_spec(args.spec)),
        "n": args.n,
        "gamma": args.gamma,
        "kind": result.kind,
        "i_Agamma": result.index_value,
        "gate": result.gate,
        "flags": list(result.flags),
    }
    if result.target is not None:
        payload["target"] = result.target.describe()
        payload["target_record"] = young_record(result.target)
    if args.format == "csv" and result.target is not None:
        _emit_grid_csv(result.target)
    else:
        _emit_json(payload)
    return 0


def cmd_domain(args) -> int:
    grid = _grid_from_args(args)
    ctx = GammaContext(args.n, args.gamma)
    B = _load(args.spec, grid)
    result = optimality.optimal_domain(B, ctx)
    payload = {
        "command": "domain",
        "input": render(parse_spec(args.spec)),
        "n": args.n,
        "gamma": args.gamma,
        "kind": result.kind,
        "simplified": result.simplified,
        "flags": list(result.flags),
    }
    if result.domain is not None:
        payload["domain"] = result.domain.describe()
        payload["domain_record"] = young_record(result.domain)
    if args.format == "csv" and result.domain is not None:
        _emit_grid_csv(result.domain)
    else:
        _emit_json(payload)
    return 0


def cmd_bounded(args) -> int:
    grid = _grid_from_args(args)
    ctx = GammaContext(args.n, args.gamma)
    A = _load(args.spec_a, grid)
    B = _load(args.spec_b, grid)
    verdict = reduction.bounded(A, B, ctx, constant_cap=args.constant_cap)
    _emit_json({
        "command": "bounded",
        "domain": render(parse_spec(args.spec_a)),
        "target": render(parse_spec(args.spec_b)),
        "n": args.n,
        "gamma": args.gamma,
        "holds": verdict.holds,
        "constant": verdict.constant,
        "criterion": verdict.criterion_used,
        "worst_t": verdict.worst_t,
        "flags": list(verdict.flags),
    })
    return 0


def cmd_boyd(args) -> int:
    grid = _grid_from_args(args)
    A = _load(args.spec, grid)
    est = boydmod.boyd_indices(A)
    payload = {"command": "boyd", "input": render(parse_spec(args.spec))}
    payload.update(_boyd_payload(est))
    _emit_json(payload)
    return 3 if "indeterminate" in est.flags else 0


def cmd_conjugate(args) -> int:
    grid = _grid_from_args(args)
    A = _load(args.spec, grid)
    conj = youngmod.conjugate(A)
    if args.format == "csv":
        _emit_grid_csv(conj)
    else:
        _emit_json({
            "command": "conjugate",
            "input": render(parse_spec(args.spec)),
            "conjugate": conj.describe(),
            "zero_plateau_end": conj.zero_plateau_end,
            "finite_sup": conj.finite_sup,
            "record": young_record(conj),
        })
    return 0


def cmd_probe(args) -> int:
    grid = _grid_from_args(args)
    ctx = GammaContext(args.n, args.gamma)
    if args.spec_a and not args.spec_b:
        print("probe needs two spec arguments", file=sys.stderr)
        return 2
    pairs = [(args.spec_a, args.spec_b)] if args.spec_a else []
    if args.fixtures:
        with open(args.fixtures) as fh:
            pairs.extend((e["A"], e["B"]) for e in json.load(fh))
    if not pairs:
        print("probe needs spec arguments or --fixtures", file=sys.stderr)
        return 2
    reports = []
    for text_a, text_b in pairs:
        A = _load(text_a, grid)
        B = _load(text_b, grid)
        rep = oracle.norm_probe(A, B, ctx)
        verdict = reduction.bounded(A, B, ctx, constant_cap=args.constant_cap)
        reports.append({
            "domain": render(parse_spec(text_a)),
            "target": render(parse_spec(text_b)),
            "trend": rep.trend,
            "max_ratio": rep.max_ratio,
            "bounded_verdict": verdict.holds,
            "consistent": (rep.trend == "bounded") == verdict.holds
                          or rep.trend == "inconclusive",
            "ratios": [{"fn": i, "scale": s, "ratio": r}
                       for i, s, r in rep.ratios],
            "flags": list(rep.flags),
        })
    _emit_json({"command": "probe", "n": args.n, "gamma": args.gamma,
                "reports": reports})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orlicz-calc",
        description="Young-function transforms and boundedness decisions for "
                    "the fractional maximal operator between Orlicz spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, pair=False):
        if pair:
            p.add_argument("spec_a", help="domain space description")
            p.add_argument("spec_b", help="target space description")
        else:
            p.add_argument("spec", help="space description, e.g. 'Zygmund(2,1,2,1)'")
        p.add_argument("--n", type=int, default=3)
        p.add_argument("--gamma", type=float, default=1.0)
        p.add_argument("--grid-points-per-decade", type=int, default=24)
        p.add_argument("--tmin", type=float, default=1e-12)
        p.add_argument("--tmax", type=float, default=1e12)
        p.add_argument("--constant-cap", type=float, default=1e6)
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("target", help="optimal Orlicz target space")
    common(p)
    p.set_defaults(func=cmd_target)
    p = sub.add_parser("domain", help="optimal Orlicz domain space")
    common(p)
    p.set_defaults(func=cmd_domain)
    p = sub.add_parser("bounded", help="decide boundedness between two spaces")
    common(p, pair=True)
    p.set_defaults(func=cmd_bounded)
    p = sub.add_parser("boyd", help="Boyd indices of a space description")
    common(p)
    p.set_defaults(func=cmd_boyd)
    p = sub.add_parser("conjugate", help="Young conjugate of a description")
    common(p)
    p.set_defaults(func=cmd_conjugate)
    p = sub.add_parser("probe", help="independent norm-ratio probe")
    p.add_argument("spec_a", nargs="?", default=None)
    p.add_argument("spec_b", nargs="?", default=None)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--grid-points-per-decade", type=int, default=24)
    p.add_argument("--tmin", type=float, default=1e-12)
    p.add_argument("--tmax", type=float, default=1e12)
    p.add_argument("--constant-cap", type=float, default=1e6)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--fixtures", help="JSON file with [{'A': spec, 'B': spec}, ...]")
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except optimality.IndeterminateIndexError as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
