"""Economy primitives: investor types, rents, central taxes, and surpluses.

The tax base of the whole model is the locational rent each multinational
earns by producing here rather than abroad.  Two investor types exist: a
low-rent one (probability 1 - q) and a high-rent one (probability q).  The
central government moves first and posts lump-sum locational taxes g1 <= g2
on the two otherwise identical jurisdictions; the low-tax one is called the
favored jurisdiction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    DomainError,
    NonPositiveRent,
    ProbabilityRange,
    RentExceedsProfit,
    RentOrder,
    TaxRange,
)
from .numeric import Currency


@dataclass(frozen=True)
class ModelParams:
    """Primitives of the economy: the two rents and the high-type probability.

    Invariants (enforced on construction): 0 < r_low < r_high, 0 <= q <= 1.
    """

    r_low: Currency
    r_high: Currency
    q: Currency

    def __post_init__(self) -> None:
        if not self.r_low > 0:
            raise NonPositiveRent(f"r_low must be > 0, got {self.r_low}")
        if not self.r_high > self.r_low:
            raise RentOrder(
                f"r_high must exceed r_low, got r_low={self.r_low}, r_high={self.r_high}"
            )
        if not (0 <= self.q <= 1):
            raise ProbabilityRange(f"q must lie in [0, 1], got {self.q}")


def validate_params(r_low: Currency, r_high: Currency, q: Currency) -> ModelParams:
    """Build validated parameters, raising a typed error naming any violation."""
    return ModelParams(r_low, r_high, q)


@dataclass(frozen=True)
class CentralTaxes:
    """The stage-1 lump-sum tax pair (g1 for the favored jurisdiction).

    Inputs with g1 > g2 are canonicalized by swapping the jurisdiction labels;
    the swap is recorded but does not affect equality.
    """

    g1: Currency
    g2: Currency
    swapped: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if self.g1 > self.g2:
            g1, g2 = self.g2, self.g1
            object.__setattr__(self, "g1", g1)
            object.__setattr__(self, "g2", g2)
            object.__setattr__(self, "swapped", True)
        if self.g1 < 0:
            raise TaxRange(f"g1 must be nonnegative, got {self.g1}")


def validate_taxes(g: CentralTaxes, p: ModelParams) -> CentralTaxes:
    """Check the parameter-dependent upper bound g2 <= r_high."""
    if g.g2 > p.r_high:
        raise TaxRange(f"g2 must not exceed r_high={p.r_high}, got {g.g2}")
    return g


class MncType(Enum):
    LOW = "low"
    HIGH = "high"

    def rent(self, p: ModelParams) -> Currency:
        return p.r_low if self is MncType.LOW else p.r_high

    def probability(self, p: ModelParams) -> Currency:
        return (1 - p.q) if self is MncType.LOW else p.q


def assumption1_holds(p: ModelParams) -> bool:
    """True when attracting both investor types can beat attracting only the
    high type: q < 2*r_low / (r_high + r_low), strictly (equality is False)."""
    return p.q * (p.r_high + p.r_low) < 2 * p.r_low


def surplus(r_i: Currency, g_j: Currency) -> Currency:
    """After-central-tax pie available in jurisdiction j: r_i - g_j.

    May be negative; callers treat a negative surplus as "no attraction
    possible".
    """
    return r_i - g_j


@dataclass(frozen=True)
class RentProfile:
    """One investor's profit if producing here (pre-tax) versus abroad
    (after tax); the difference is its locational rent."""

    profit_home: Currency
    profit_abroad: Currency

    def __post_init__(self) -> None:
        if self.profit_home < 0:
            raise DomainError(f"profit_home must be >= 0, got {self.profit_home}")


def locational_rent(rp: RentProfile) -> tuple[Currency, Currency]:
    """Rent and the flat profit-tax rate that would just extract it.

    The rate is rent / profit_home (0 when there is no home profit).  A rent
    exceeding home profit would need a rate above 100% and is rejected rather
    than clamped.
    """
    if rp.profit_abroad < 0:
        raise RentExceedsProfit(
            f"profit_abroad must be >= 0, got {rp.profit_abroad}"
        )
    rent = rp.profit_home - rp.profit_abroad
    rate = rent / rp.profit_home if rp.profit_home > 0 else 0
    return rent, rate
