"""Stage-1 optimum, regime-choice equilibrium, and institutional comparisons.

The central government anticipates which regime the favored jurisdiction
will pick and sets the tax pair maximizing expected country welfare.  The
scenario comparator prices the institutional variants: free regime choice,
bargaining-only, posting-only, a single central tax-setter (posting or
bargaining), and local-only taxation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import PreconditionG1
from .model import CentralTaxes, ModelParams, assumption1_holds
from .numeric import Currency, ge, gt
from .subgame import Regime, solve_bb, solve_pp


class Attracts(Enum):
    BOTH_TYPES = "both_types"
    HIGH_ONLY = "high_only"


@dataclass(frozen=True)
class PolicyResult:
    """The stage-1/stage-2 equilibrium under optimal central taxes."""

    optimal_taxes: CentralTaxes
    j1_regime: Regime
    attracts: Attracts
    expected_welfare: Currency
    binding_assumption1: bool


@dataclass(frozen=True)
class ScenarioWelfare:
    """Expected country welfare under each institutional restriction."""

    scenario_i: Currency
    scenario_ii: Currency
    scenario_iii: Currency
    central_only_posting: Currency
    central_only_bargaining: Currency
    local_only: Currency


def j1_regime_choice(
    p: ModelParams, g: CentralTaxes
) -> tuple[Regime, Currency, Currency]:
    """Favored jurisdiction's regime pick with its payoff under each.

    Compares its expected payoff from bargaining (the nonfavored side's
    regime is payoff-irrelevant to it, and the poster selection is the
    competitive one) against posting; ties go to bargaining.
    """
    w_bargain = solve_bb(p, g).expected_j1
    w_post = solve_pp(p, g).expected_j1
    regime = Regime.POST if gt(w_post, w_bargain) else Regime.BARGAIN
    return regime, w_bargain, w_post


def welfare_attracting_both(p: ModelParams) -> Currency:
    """Best expected welfare when both types are kept: the low rent plus the
    expected bargained share of the high type's extra surplus."""
    return p.q * (p.r_high + p.r_low) / 2 + (1 - p.q) * p.r_low


def welfare_high_only(p: ModelParams) -> Currency:
    """Best expected welfare when only the high type is taxed in."""
    return p.q * p.r_high


def optimal_central_taxes(p: ModelParams) -> PolicyResult:
    """Stage-1 optimum.

    If keeping both types beats chasing the high type (ties included), the
    optimum is g1 = r_low with g2 at the regime-choice threshold so the
    favored jurisdiction still bargains.  Otherwise both taxes are set at
    r_high and only the high type shows up.
    """
    w_both = welfare_attracting_both(p)
    w_high = welfare_high_only(p)
    if ge(w_both, w_high):
        taxes = CentralTaxes(p.r_low, (p.r_high + p.r_low) / 2)
        return PolicyResult(
            optimal_taxes=taxes,
            j1_regime=Regime.BARGAIN,
            attracts=Attracts.BOTH_TYPES,
            expected_welfare=w_both,
            binding_assumption1=assumption1_holds(p),
        )
    taxes = CentralTaxes(p.r_high, p.r_high)
    return PolicyResult(
        optimal_taxes=taxes,
        j1_regime=Regime.BARGAIN,
        attracts=Attracts.HIGH_ONLY,
        expected_welfare=w_high,
        binding_assumption1=assumption1_holds(p),
    )


def conflict_threshold(p: ModelParams, g1: Currency) -> Currency:
    """Largest nonfavored tax keeping bargaining incentive-compatible at the
    policy optimum: (r_high + g1) / 2.

    Above it the favored jurisdiction prefers posting a tax that extracts the
    high type's whole surplus, against the country's interest.
    """
    if g1 > p.r_low:
        raise PreconditionG1(f"requires g1 <= r_low, got g1={g1}, r_low={p.r_low}")
    return (p.r_high + g1) / 2


def scenario_welfare(p: ModelParams) -> ScenarioWelfare:
    """Welfare of each institutional arrangement at its own optimal taxes.

    Free choice and bargaining-only coincide; posting-only collapses the
    country into a single poster; a lone central bargainer has no reservation
    tax and splits the expected rent evenly; local-only taxation races to the
    bottom.
    """
    w_both = welfare_attracting_both(p)
    w_high = welfare_high_only(p)
    free_choice = max(w_both, w_high)
    posting_only = max(p.r_low, w_high)
    return ScenarioWelfare(
        scenario_i=free_choice,
        scenario_ii=free_choice,
        scenario_iii=posting_only,
        central_only_posting=posting_only,
        central_only_bargaining=(p.q * p.r_high + (1 - p.q) * p.r_low) / 2,
        local_only=0,
    )


def proposition2_check(p: ModelParams) -> tuple[bool, bool]:
    """Weak-dominance check of free regime choice over posting-only.

    Returns (holds, strict): dominance always holds; it is strict exactly
    when keeping both types is strictly better than chasing the high type.
    """
    sw = scenario_welfare(p)
    holds = ge(sw.scenario_i, sw.scenario_iii)
    strict = gt(sw.scenario_i, sw.scenario_iii)
    return holds, strict
