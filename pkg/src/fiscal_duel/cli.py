"""Command-line surface: solve / sweep / verify / scenarios / report.

Every command reads one TOML configuration and emits flat rows (CSV or
JSON lines) with full-precision numbers, so any emitted row can be re-parsed
back to the exact values.  Exit codes: 0 success, 1 input error, 2 oracle
mismatch, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from dataclasses import replace
from fractions import Fraction
from typing import Any, Optional

from .config import SWEEP_AXES, OutputSpec, RunConfig, parse_config
from .errors import (
    FiscalDuelError,
    MissingField,
    NoConvergence,
    NoEquilibrium,
    ParseError,
)
from .model import CentralTaxes, ModelParams, validate_params, validate_taxes
from .oracle import (
    OracleConfig,
    OracleReport,
    grid_nash_posting,
    grid_optimal_central,
    grid_stackelberg_bp,
    delta_limit_check,
    tax_grid,
)
from .policy import (
    conflict_threshold,
    j1_regime_choice,
    optimal_central_taxes,
    proposition2_check,
    scenario_welfare,
)
from .subgame import Regime, SubgameOutcome, solve_bb, solve_pp, solve_profile

COMMANDS = ("solve", "sweep", "verify", "scenarios", "report")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MISMATCH = 2
EXIT_INTERNAL = 3


def _cell(value: Any) -> Any:
    """Serialize one field: exact text for rationals, native types otherwise."""
    if isinstance(value, Fraction):
        return str(value)
    if hasattr(value, "value") and not isinstance(value, (int, float)):  # Enum
        return value.value
    return value


def _outcome_row(p: ModelParams, g: CentralTaxes, out: SubgameOutcome) -> dict:
    posted = out.posted_taxes or (None, None)
    row: dict[str, Any] = {
        "r_low": p.r_low,
        "r_high": p.r_high,
        "q": p.q,
        "g1": g.g1,
        "g2": g.g2,
        "profile_j1": out.profile.j1,
        "profile_j2": out.profile.j2,
        "posted_t1": posted[0],
        "posted_t2": posted[1],
    }
    for name, t in (("low", out.low), ("high", out.high)):
        row[f"{name}_location"] = t.location
        row[f"{name}_tax"] = t.jurisdiction_tax
        row[f"{name}_mnc_payoff"] = t.mnc_payoff
        row[f"{name}_j1_payoff"] = t.j1_payoff
        row[f"{name}_j2_payoff"] = t.j2_payoff
        row[f"{name}_welfare"] = t.realized_welfare
    row["expected_j1"] = out.expected_j1
    row["expected_j2"] = out.expected_j2
    row["expected_welfare"] = out.expected_welfare
    return row


def _solve_row(cfg: RunConfig, p: ModelParams, g: CentralTaxes) -> dict:
    start = time.perf_counter()
    out = solve_profile(p, g, cfg.regime_profile, cfg.t2_selection)
    regime, w_b, w_p = j1_regime_choice(p, g)
    chosen = solve_pp(p, g) if regime is Regime.POST else solve_bb(p, g)
    row = _outcome_row(p, g, out)
    row["stage2_regime"] = regime
    row["stage2_j1_payoff_bargain"] = w_b
    row["stage2_j1_payoff_post"] = w_p
    row["stage2_welfare"] = chosen.expected_welfare
    row["elapsed_ms"] = (time.perf_counter() - start) * 1000.0
    return row


def _require(cfg: RunConfig, field: str) -> None:
    if getattr(cfg, field) is None:
        raise MissingField(f"this command needs the {field!r} configuration")


def _cmd_solve(cfg: RunConfig) -> tuple[int, list[dict]]:
    _require(cfg, "taxes")
    _require(cfg, "regime_profile")
    return EXIT_OK, [_solve_row(cfg, cfg.params, cfg.taxes)]


def _sweep_points(cfg: RunConfig):
    """Deterministic grid iteration in fixed axis order."""
    base = {
        "r_low": cfg.params.r_low,
        "r_high": cfg.params.r_high,
        "q": cfg.params.q,
        "g1": cfg.taxes.g1 if cfg.taxes else None,
        "g2": cfg.taxes.g2 if cfg.taxes else None,
    }
    axes = [a for a in SWEEP_AXES if a in cfg.sweep]
    grids = [cfg.sweep[a].values() for a in axes]

    def rec(i: int, point: dict):
        if i == len(axes):
            yield dict(point)
            return
        for v in grids[i]:
            point[axes[i]] = v
            yield from rec(i + 1, point)

    yield from rec(0, dict(base))


def _cmd_sweep(cfg: RunConfig) -> tuple[int, list[dict]]:
    if not cfg.sweep:
        raise MissingField("sweep command needs at least one [sweep.<axis>] table")
    _require(cfg, "regime_profile")
    rows = []
    for point in _sweep_points(cfg):
        if point["g1"] is None or point["g2"] is None:
            raise MissingField("sweep needs g1 and g2, from [taxes] or sweep axes")
        p = validate_params(point["r_low"], point["r_high"], point["q"])
        g = validate_taxes(CentralTaxes(point["g1"], point["g2"]), p)
        rows.append(_solve_row(cfg, p, g))
    return EXIT_OK, rows


def _report_fields(report: OracleReport) -> dict:
    return {
        "matched": report.matched,
        "max_discrepancy": report.max_discrepancy,
        "equilibrium_multiplicity": report.equilibrium_multiplicity,
    }


def _verify_checks(cfg: RunConfig):
    p = cfg.params
    taxes = cfg.taxes
    if taxes is None:
        taxes = optimal_central_taxes(p).optimal_taxes
    oracle_cfg = cfg.oracle
    yield "grid_nash_posting", taxes, lambda: grid_nash_posting(p, taxes, oracle_cfg)
    if not taxes.g1 > p.r_low:
        yield "grid_stackelberg_bp", taxes, lambda: grid_stackelberg_bp(
            p, taxes, oracle_cfg
        )
    yield "grid_optimal_central", taxes, lambda: grid_optimal_central(p, oracle_cfg)
    for label, rent in (("low", p.r_low), ("high", p.r_high)):
        s1 = float(rent - taxes.g1)
        outside = float(rent - taxes.g2)
        if s1 >= 0:
            yield f"delta_limit_{label}", taxes, (
                lambda s1=s1, outside=outside: delta_limit_check(s1, outside, oracle_cfg)
            )


def _battery_point(rng: random.Random) -> tuple[ModelParams, CentralTaxes]:
    """One random in-region draw; the rent ratio is capped so the default
    grid stays desk-scale."""
    r_low = rng.uniform(15.0, 90.0)
    r_high = rng.uniform(r_low + 2.0, min(100.0, 3.0 * r_low))
    q = rng.uniform(0.0, 1.0)
    g1 = rng.uniform(0.0, r_low)
    g2 = rng.uniform(g1, r_high)
    p = validate_params(r_low, r_high, q)
    return p, validate_taxes(CentralTaxes(g1, g2), p)


def _cmd_verify(cfg: RunConfig) -> tuple[int, list[dict]]:
    rows = []
    any_mismatch = False
    for name, taxes, run in _verify_checks(cfg):
        start = time.perf_counter()
        report = run()
        row = {
            "check": name,
            "r_low": cfg.params.r_low,
            "r_high": cfg.params.r_high,
            "q": cfg.params.q,
            "g1": taxes.g1,
            "g2": taxes.g2,
            **_report_fields(report),
            "elapsed_ms": (time.perf_counter() - start) * 1000.0,
        }
        rows.append(row)
        any_mismatch |= not report.matched

    rng = random.Random(cfg.seed)
    for i in range(cfg.verify_battery_points):
        p, g = _battery_point(rng)
        oracle_cfg = OracleConfig.for_params(p)
        for name, run in (
            ("grid_nash_posting", lambda: grid_nash_posting(p, g, oracle_cfg)),
            ("grid_stackelberg_bp", lambda: grid_stackelberg_bp(p, g, oracle_cfg)),
        ):
            start = time.perf_counter()
            report = run()
            rows.append(
                {
                    "check": f"battery[{i}].{name}",
                    "r_low": p.r_low,
                    "r_high": p.r_high,
                    "q": p.q,
                    "g1": g.g1,
                    "g2": g.g2,
                    **_report_fields(report),
                    "elapsed_ms": (time.perf_counter() - start) * 1000.0,
                }
            )
            any_mismatch |= not report.matched
    return (EXIT_MISMATCH if any_mismatch else EXIT_OK), rows


def _cmd_scenarios(cfg: RunConfig) -> tuple[int, list[dict]]:
    start = time.perf_counter()
    p = cfg.params
    sw = scenario_welfare(p)
    holds, strict = proposition2_check(p)
    row = {
        "r_low": p.r_low,
        "r_high": p.r_high,
        "q": p.q,
        "scenario_i": sw.scenario_i,
        "scenario_ii": sw.scenario_ii,
        "scenario_iii": sw.scenario_iii,
        "central_only_posting": sw.central_only_posting,
        "central_only_bargaining": sw.central_only_bargaining,
        "local_only": sw.local_only,
        "prop2_holds": holds,
        "prop2_strict": strict,
        "elapsed_ms": (time.perf_counter() - start) * 1000.0,
    }
    return EXIT_OK, [row]


def _cmd_report(cfg: RunConfig) -> tuple[int, list[dict]]:
    """Long-format plot data: welfare and regime payoffs against g2 at a
    fixed g1, plus the regime-choice boundary."""
    p = cfg.params
    g1 = cfg.taxes.g1 if cfg.taxes is not None else p.r_low
    if g1 > p.r_low:
        raise MissingField("report needs g1 <= r_low (fix [taxes] or omit it)")
    rows = []
    for g2 in tax_grid(cfg.oracle.grid_step, float(p.r_high)):
        if g2 < g1:
            continue
        g = CentralTaxes(g1, float(g2))
        regime, w_b, w_p = j1_regime_choice(p, g)
        bargained = solve_bb(p, g)
        posted = solve_pp(p, g)
        realized = posted if regime is Regime.POST else bargained
        for series, value in (
            ("welfare_realized", realized.expected_welfare),
            ("welfare_bargain_regime", bargained.expected_welfare),
            ("welfare_posting_regime", posted.expected_welfare),
            ("j1_payoff_bargain", w_b),
            ("j1_payoff_post", w_p),
            ("regime_is_bargain", 1 if regime is Regime.BARGAIN else 0),
        ):
            rows.append({"g1": g1, "g2": float(g2), "series": series, "value": value})
    threshold = conflict_threshold(p, g1)
    rows.append(
        {"g1": g1, "g2": threshold, "series": "regime_boundary_g2", "value": threshold}
    )
    return EXIT_OK, rows


def run_command(cfg: RunConfig, cmd: str) -> tuple[int, list[dict]]:
    """Execute one command; returns (exit status, emitted rows)."""
    handler = {
        "solve": _cmd_solve,
        "sweep": _cmd_sweep,
        "verify": _cmd_verify,
        "scenarios": _cmd_scenarios,
        "report": _cmd_report,
    }[cmd]
    return handler(cfg)


def emit_rows(rows: list[dict], fmt: str, stream: io.TextIOBase) -> None:
    if not rows:
        return
    if fmt == "csv":
        writer = csv.DictWriter(stream, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})
    else:
        for row in rows:
            stream.write(json.dumps({k: _cell(v) for k, v in row.items()}))
            stream.write("\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fiscal-duel",
        description="Solve and verify the two-jurisdiction locational-tax game.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="path to a TOML configuration")
    parser.add_argument("--out", default="", help="output path (default: stdout)")
    parser.add_argument("--format", choices=("csv", "jsonl"), default=None)
    parser.add_argument("--grid-step", type=float, default=None, help="override oracle grid step")
    parser.add_argument("--seed", type=int, default=None, help="override configured seed")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = parse_config(fh.read())
        if args.grid_step is not None:
            cfg = replace(cfg, oracle=replace(cfg.oracle, grid_step=args.grid_step))
        if args.seed is not None:
            cfg = replace(cfg, seed=args.seed)
        if args.format is not None or args.out:
            cfg = replace(
                cfg,
                output=OutputSpec(
                    format=args.format or cfg.output.format,
                    path=args.out or cfg.output.path,
                ),
            )
        status, rows = run_command(cfg, args.command)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, MissingField, NoEquilibrium) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NoConvergence as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except FiscalDuelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL

    if cfg.output.path:
        with open(cfg.output.path, "w", encoding="utf-8", newline="") as fh:
            emit_rows(rows, cfg.output.format, fh)
    else:
        emit_rows(rows, cfg.output.format, sys.stdout)
    return status


if __name__ == "__main__":
    sys.exit(main())
