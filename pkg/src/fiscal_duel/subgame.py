"""Stage-2..4 equilibria for the four regime profiles.

Each solver takes validated primitives and central taxes with g1 <= r_low
(the region where the closed forms live; the oracle module covers the rest)
and returns per-type outcomes plus q-weighted expectations.  Locations obey
the model's tie-breaking rules: an indifferent investor locates rather than
going abroad, and prefers the favored jurisdiction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .bargaining import rubinstein_outside, three_party_bargain
from .errors import NegativeSelection, PreconditionG1, PreconditionOrder
from .model import CentralTaxes, MncType, ModelParams, surplus, validate_taxes
from .numeric import Currency, ge


class Regime(Enum):
    BARGAIN = "bargain"
    POST = "post"


@dataclass(frozen=True)
class RegimeProfile:
    j1: Regime
    j2: Regime


class Location(Enum):
    J1 = "j1"
    J2 = "j2"
    ABROAD = "abroad"


@dataclass(frozen=True)
class TypeOutcome:
    """Realized outcome for one investor type: where it goes, the
    jurisdictional tax it pays, and everyone's payoff."""

    location: Location
    jurisdiction_tax: Currency
    mnc_payoff: Currency
    j1_payoff: Currency
    j2_payoff: Currency
    realized_welfare: Currency


@dataclass(frozen=True)
class SubgameOutcome:
    """Equilibrium of one regime profile: per-type outcomes, posted taxes
    where posting occurs (None entries mark bargainers), and expectations."""

    profile: RegimeProfile
    low: TypeOutcome
    high: TypeOutcome
    posted_taxes: Optional[tuple[Optional[Currency], Optional[Currency]]]
    expected_j1: Currency
    expected_j2: Currency
    expected_welfare: Currency


def located_outcome(
    location: Location, tax: Currency, rent: Currency, g: CentralTaxes
) -> TypeOutcome:
    """Outcome for a type that locates and pays `tax` on top of the central tax."""
    if location is Location.J1:
        g_j, j1, j2 = g.g1, tax, 0
    else:
        g_j, j1, j2 = g.g2, 0, tax
    return TypeOutcome(
        location=location,
        jurisdiction_tax=tax,
        mnc_payoff=rent - g_j - tax,
        j1_payoff=j1,
        j2_payoff=j2,
        realized_welfare=tax + g_j,
    )


def abroad_outcome() -> TypeOutcome:
    return TypeOutcome(
        location=Location.ABROAD,
        jurisdiction_tax=0,
        mnc_payoff=0,
        j1_payoff=0,
        j2_payoff=0,
        realized_welfare=0,
    )


def expected_over_types(
    low: TypeOutcome, high: TypeOutcome, p: ModelParams
) -> tuple[Currency, Currency, Currency]:
    """q-weighted expectations of (j1_payoff, j2_payoff, realized_welfare)."""
    q = p.q
    e_j1 = q * high.j1_payoff + (1 - q) * low.j1_payoff
    e_j2 = q * high.j2_payoff + (1 - q) * low.j2_payoff
    e_w = q * high.realized_welfare + (1 - q) * low.realized_welfare
    return e_j1, e_j2, e_w


def _check_region(p: ModelParams, g: CentralTaxes) -> None:
    validate_taxes(g, p)
    if g.g1 > p.r_low:
        raise PreconditionG1(
            f"closed forms require g1 <= r_low, got g1={g.g1}, r_low={p.r_low}"
        )


def _assemble(
    profile: RegimeProfile,
    low: TypeOutcome,
    high: TypeOutcome,
    posted: Optional[tuple[Optional[Currency], Optional[Currency]]],
    p: ModelParams,
) -> SubgameOutcome:
    e_j1, e_j2, e_w = expected_over_types(low, high, p)
    return SubgameOutcome(
        profile=profile,
        low=low,
        high=high,
        posted_taxes=posted,
        expected_j1=e_j1,
        expected_j2=e_j2,
        expected_welfare=e_w,
    )


def solve_bp(
    p: ModelParams, g: CentralTaxes, t2_selection: Currency = 0
) -> SubgameOutcome:
    """Favored jurisdiction bargains, nonfavored posts.

    The nonfavored poster is always undercut and earns zero at any posted
    tax, so its tax is an equilibrium selection (default 0, the most
    competitive one).  Each type then locates in the favored jurisdiction
    and pays the bargained tax min(s_i1/2, t2 + g2 - g1).
    """
    _check_region(p, g)
    if t2_selection < 0:
        raise NegativeSelection(f"t2_selection must be >= 0, got {t2_selection}")

    outcomes = {}
    for mnc in MncType:
        r = mnc.rent(p)
        s1 = surplus(r, g.g1)
        outside = surplus(r, g.g2) - t2_selection
        split = rubinstein_outside(s1, outside)
        outcomes[mnc] = located_outcome(Location.J1, split.j1_payoff, r, g)
    return _assemble(
        RegimeProfile(Regime.BARGAIN, Regime.POST),
        outcomes[MncType.LOW],
        outcomes[MncType.HIGH],
        (None, t2_selection),
        p,
    )


def _posting_equilibrium(
    p: ModelParams, g: CentralTaxes, profile: RegimeProfile
) -> SubgameOutcome:
    """Shared core for the profiles where the favored jurisdiction posts.

    The nonfavored jurisdiction competes its tax down to zero regardless of
    its own regime.  When g2 <= r_low the favored jurisdiction just matches
    the tax gap and attracts both types.  When g2 > r_low it picks the better
    of extracting the low type's whole surplus (keeping both types) and
    posting the tax gap (keeping only the high type); ties attract both.
    """
    s_l1 = surplus(p.r_low, g.g1)
    gap = g.g2 - g.g1
    t2_posted: Optional[Currency] = 0 if profile.j2 is Regime.POST else None

    if ge(p.r_low, g.g2):
        t1 = gap
        low = located_outcome(Location.J1, t1, p.r_low, g)
        high = located_outcome(Location.J1, t1, p.r_high, g)
    elif ge(s_l1, p.q * gap):
        t1 = s_l1
        low = located_outcome(Location.J1, t1, p.r_low, g)
        high = located_outcome(Location.J1, t1, p.r_high, g)
    else:
        t1 = gap
        low = abroad_outcome()
        high = located_outcome(Location.J1, t1, p.r_high, g)
    return _assemble(profile, low, high, (t1, t2_posted), p)


def solve_pb(p: ModelParams, g: CentralTaxes) -> SubgameOutcome:
    """Favored jurisdiction posts, nonfavored bargains (requires g1 < g2;
    the equal-tax case belongs to the mirrored profile)."""
    _check_region(p, g)
    if not g.g1 < g.g2:
        raise PreconditionOrder(f"requires g1 < g2, got g1={g.g1}, g2={g.g2}")
    return _posting_equilibrium(p, g, RegimeProfile(Regime.POST, Regime.BARGAIN))


def solve_pp(p: ModelParams, g: CentralTaxes) -> SubgameOutcome:
    """Both jurisdictions post simultaneously.

    Undercutting drives the nonfavored tax to zero and yields the same
    outcome as when the nonfavored side bargains; with equal central taxes
    both local taxes are zero and both types locate in the favored
    jurisdiction by the tie rule.
    """
    _check_region(p, g)
    return _posting_equilibrium(p, g, RegimeProfile(Regime.POST, Regime.POST))


def solve_bb(p: ModelParams, g: CentralTaxes) -> SubgameOutcome:
    """Both jurisdictions bargain.

    Each type negotiates with the favored jurisdiction, holding the
    nonfavored surplus as its outside option; it never exits, and the
    favored jurisdiction's take is capped by the tax gap g2 - g1.
    """
    _check_region(p, g)
    outcomes = {}
    for mnc in MncType:
        r = mnc.rent(p)
        split = three_party_bargain(surplus(r, g.g1), surplus(r, g.g2))
        outcomes[mnc] = located_outcome(Location.J1, split.j1_payoff, r, g)
    return _assemble(
        RegimeProfile(Regime.BARGAIN, Regime.BARGAIN),
        outcomes[MncType.LOW],
        outcomes[MncType.HIGH],
        None,
        p,
    )


def solve_profile(
    p: ModelParams,
    g: CentralTaxes,
    profile: RegimeProfile,
    t2_selection: Currency = 0,
) -> SubgameOutcome:
    """Dispatch to the solver matching a regime profile."""
    if profile.j1 is Regime.BARGAIN and profile.j2 is Regime.POST:
        return solve_bp(p, g, t2_selection)
    if profile.j1 is Regime.POST and profile.j2 is Regime.BARGAIN:
        return solve_pb(p, g)
    if profile.j1 is Regime.POST:
        return solve_pp(p, g)
    return solve_bb(p, g)
