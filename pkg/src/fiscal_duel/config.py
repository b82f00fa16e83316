"""Run configuration: a strict TOML key-value document.

Unknown keys are rejected rather than ignored so a typo never silently runs
with defaults.  Only the three primitives are required; everything else has
a documented default:

    arithmetic     "float"              "rational" switches the closed forms
                                        to exact fractions
    t2_selection   0                    nonfavored posted-tax selection
    oracle.grid_step      r_low / 200
    oracle.deltas         [0.9, 0.99, 0.999]
    oracle.max_candidates 64
    output.format  "csv"                or "jsonl"
    output.path    ""                   empty means stdout
    seed           0                    used by randomized verify batteries
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .bargaining import DiscountSchedule
from .errors import ParseError
from .model import CentralTaxes, ModelParams, validate_params, validate_taxes
from .numeric import Currency
from .oracle import OracleConfig
from .subgame import Regime, RegimeProfile

SWEEP_AXES = ("r_low", "r_high", "q", "g1", "g2")

_SCHEMA: dict[str, Any] = {
    "r_low": None,
    "r_high": None,
    "q": None,
    "arithmetic": None,
    "t2_selection": None,
    "seed": None,
    "taxes": {"g1": None, "g2": None},
    "regime": {"j1": None, "j2": None},
    "oracle": {"grid_step": None, "deltas": None, "max_candidates": None},
    "sweep": {axis: {"start": None, "stop": None, "step": None} for axis in SWEEP_AXES},
    "output": {"format": None, "path": None},
    "verify": {"battery_points": None},
}


@dataclass(frozen=True)
class GridRange:
    """Inclusive sweep range with a positive step."""

    start: Currency
    stop: Currency
    step: Currency

    def __post_init__(self) -> None:
        if not self.step > 0:
            raise ParseError(f"sweep step must be > 0, got {self.step}")
        if self.stop < self.start:
            raise ParseError(
                f"sweep stop must be >= start, got [{self.start}, {self.stop}]"
            )

    def values(self) -> list[Currency]:
        out = []
        k = 0
        while True:
            v = self.start + k * self.step
            if v > self.stop:
                break
            out.append(v)
            k += 1
        return out


@dataclass(frozen=True)
class OutputSpec:
    format: str = "csv"
    path: str = ""  # empty: stdout


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams
    taxes: Optional[CentralTaxes]
    regime_profile: Optional[RegimeProfile]
    oracle: OracleConfig
    sweep: dict[str, GridRange] = field(default_factory=dict)
    output: OutputSpec = OutputSpec()
    arithmetic: str = "float"
    t2_selection: Currency = 0
    seed: int = 0
    verify_battery_points: int = 0


def _reject_unknown(doc: dict, schema: dict, prefix: str = "") -> None:
    for key, value in doc.items():
        if key not in schema:
            raise ParseError(f"unknown key {prefix}{key!r}")
        sub = schema[key]
        if isinstance(sub, dict):
            if not isinstance(value, dict):
                raise ParseError(f"key {prefix}{key!r} must be a table")
            _reject_unknown(value, sub, prefix=f"{prefix}{key}.")


def _number(value: Any, where: str, rational: bool) -> Currency:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where} must be a number, got {value!r}")
    if rational:
        return Fraction(str(value))
    return value


def _regime(name: Any, where: str) -> Regime:
    try:
        return Regime(name)
    except ValueError:
        raise ParseError(f"{where} must be 'bargain' or 'post', got {name!r}") from None


def parse_config(source: str) -> RunConfig:
    """Parse and validate a configuration document."""
    try:
        doc = tomllib.loads(source)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"malformed document: {exc}") from exc
    _reject_unknown(doc, _SCHEMA)

    arithmetic = doc.get("arithmetic", "float")
    if arithmetic not in ("float", "rational"):
        raise ParseError(f"arithmetic must be 'float' or 'rational', got {arithmetic!r}")
    rational = arithmetic == "rational"

    for key in ("r_low", "r_high", "q"):
        if key not in doc:
            raise ParseError(f"missing required key {key!r}")
    params = validate_params(
        _number(doc["r_low"], "r_low", rational),
        _number(doc["r_high"], "r_high", rational),
        _number(doc["q"], "q", rational),
    )

    taxes = None
    if "taxes" in doc:
        t = doc["taxes"]
        if "g1" not in t or "g2" not in t:
            raise ParseError("taxes table needs both g1 and g2")
        taxes = validate_taxes(
            CentralTaxes(
                _number(t["g1"], "taxes.g1", rational),
                _number(t["g2"], "taxes.g2", rational),
            ),
            params,
        )

    profile = None
    if "regime" in doc:
        r = doc["regime"]
        if "j1" not in r or "j2" not in r:
            raise ParseError("regime table needs both j1 and j2")
        profile = RegimeProfile(_regime(r["j1"], "regime.j1"), _regime(r["j2"], "regime.j2"))

    o = doc.get("oracle", {})
    step = o.get("grid_step", float(params.r_low) / 200.0)
    if not isinstance(step, (int, float)) or isinstance(step, bool) or step <= 0:
        raise ParseError(f"oracle.grid_step must be a positive number, got {step!r}")
    deltas = o.get("deltas", [0.9, 0.99, 0.999])
    if not isinstance(deltas, list) or not deltas:
        raise ParseError("oracle.deltas must be a nonempty array")
    try:
        schedule = DiscountSchedule(tuple(float(d) for d in deltas))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"oracle.deltas invalid: {exc}") from exc
    max_candidates = o.get("max_candidates", 64)
    if not isinstance(max_candidates, int) or max_candidates < 1:
        raise ParseError("oracle.max_candidates must be a positive integer")
    oracle = OracleConfig(
        grid_step=float(step), delta_schedule=schedule, max_candidates=max_candidates
    )

    sweep: dict[str, GridRange] = {}
    for axis, spec in doc.get("sweep", {}).items():
        for bound in ("start", "stop", "step"):
            if bound not in spec:
                raise ParseError(f"sweep.{axis} needs start, stop and step")
        sweep[axis] = GridRange(
            _number(spec["start"], f"sweep.{axis}.start", rational),
            _number(spec["stop"], f"sweep.{axis}.stop", rational),
            _number(spec["step"], f"sweep.{axis}.step", rational),
        )

    out = doc.get("output", {})
    fmt = out.get("format", "csv")
    if fmt not in ("csv", "jsonl"):
        raise ParseError(f"output.format must be 'csv' or 'jsonl', got {fmt!r}")
    output = OutputSpec(format=fmt, path=str(out.get("path", "")))

    t2_selection = _number(doc.get("t2_selection", 0), "t2_selection", rational)
    if t2_selection < 0:
        raise ParseError(f"t2_selection must be >= 0, got {t2_selection}")

    seed = doc.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ParseError(f"seed must be an integer, got {seed!r}")

    battery = doc.get("verify", {}).get("battery_points", 0)
    if not isinstance(battery, int) or battery < 0:
        raise ParseError("verify.battery_points must be a nonnegative integer")

    return RunConfig(
        params=params,
        taxes=taxes,
        regime_profile=profile,
        oracle=oracle,
        sweep=sweep,
        output=output,
        arithmetic=arithmetic,
        t2_selection=t2_selection,
        seed=seed,
        verify_battery_points=battery,
    )
