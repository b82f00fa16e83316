"""Two-jurisdiction locational-tax game: closed-form equilibria plus
brute-force verification oracles."""

from .bargaining import (
    BargainSplit,
    DiscountSchedule,
    Proposer,
    rubinstein_delta_oracle,
    rubinstein_outside,
    three_party_bargain,
)
from .config import GridRange, OutputSpec, RunConfig, parse_config
from .model import (
    CentralTaxes,
    MncType,
    ModelParams,
    RentProfile,
    assumption1_holds,
    locational_rent,
    surplus,
    validate_params,
    validate_taxes,
)
from .oracle import (
    OracleConfig,
    OracleReport,
    TieBreaks,
    delta_limit_check,
    grid_nash_posting,
    grid_optimal_central,
    grid_stackelberg_bp,
)
from .policy import (
    Attracts,
    PolicyResult,
    ScenarioWelfare,
    conflict_threshold,
    j1_regime_choice,
    optimal_central_taxes,
    proposition2_check,
    scenario_welfare,
)
from .subgame import (
    Location,
    Regime,
    RegimeProfile,
    SubgameOutcome,
    TypeOutcome,
    expected_over_types,
    solve_bb,
    solve_bp,
    solve_pb,
    solve_pp,
    solve_profile,
)

__version__ = "0.1.0"

__all__ = [
    "BargainSplit",
    "DiscountSchedule",
    "Proposer",
    "rubinstein_delta_oracle",
    "rubinstein_outside",
    "three_party_bargain",
    "GridRange",
    "OutputSpec",
    "RunConfig",
    "parse_config",
    "CentralTaxes",
    "MncType",
    "ModelParams",
    "RentProfile",
    "assumption1_holds",
    "locational_rent",
    "surplus",
    "validate_params",
    "validate_taxes",
    "OracleConfig",
    "OracleReport",
    "TieBreaks",
    "delta_limit_check",
    "grid_nash_posting",
    "grid_optimal_central",
    "grid_stackelberg_bp",
    "Attracts",
    "PolicyResult",
    "ScenarioWelfare",
    "conflict_threshold",
    "j1_regime_choice",
    "optimal_central_taxes",
    "proposition2_check",
    "scenario_welfare",
    "Location",
    "Regime",
    "RegimeProfile",
    "SubgameOutcome",
    "TypeOutcome",
    "expected_over_types",
    "solve_bb",
    "solve_bp",
    "solve_pb",
    "solve_pp",
    "solve_profile",
]
