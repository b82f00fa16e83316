"""Bargaining over a locational surplus, closed forms and a finite-discount oracle.

Two closed forms are used by the subgame solvers:

* a two-party alternating-offer split where only the investor holds an
  outside option, taken in its patient limit (the investor gets the larger
  of half the pie and the outside option), and
* a three-party split for the case where both jurisdictions negotiate: the
  investor deals with the favored jurisdiction immediately and never exits,
  with the nonfavored surplus acting as its outside option.

`rubinstein_delta_oracle` replays the two-party game at an explicit discount
factor via fixed-point iteration, so the patient-limit closed form can be
verified independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import NoConvergence, PreconditionOrder
from .numeric import Currency

# Absolute tolerance and step cap for the finite-discount fixed point.  The
# iteration contracts by delta**2 per step, so the cap is never binding for
# any sane schedule.
BARGAIN_TOL = 1e-12
ITERATION_CAP = 10**6


@dataclass(frozen=True)
class BargainSplit:
    """How a surplus s1 is divided.  On agreement mnc + j1 = s1 and the
    nonfavored jurisdiction gets nothing; without agreement the investor
    walks away with its outside option."""

    mnc_payoff: Currency
    j1_payoff: Currency
    j2_payoff: Currency
    agreement: bool


@dataclass(frozen=True)
class DiscountSchedule:
    """Strictly increasing discount factors in (0, 1), ordered toward 1."""

    deltas: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.deltas:
            raise ValueError("schedule must contain at least one delta")
        prev = 0.0
        for d in self.deltas:
            if not (0.0 < d < 1.0):
                raise ValueError(f"deltas must lie in (0, 1), got {d}")
            if d <= prev:
                raise ValueError("deltas must be strictly increasing")
            prev = d


DEFAULT_DELTAS = DiscountSchedule((0.9, 0.99, 0.999))


class Proposer(Enum):
    MNC = "mnc"
    JURISDICTION = "jurisdiction"


def rubinstein_outside(s1: Currency, outside: Currency) -> BargainSplit:
    """Patient-limit split of pie s1 when the investor can exit for `outside`.

    A negative outside option is floored at zero (walking away never pays
    worse than nothing).  If the pie is negative or smaller than the outside
    option there is no deal and the investor takes the outside option.
    """
    o = max(outside, 0)
    if s1 < 0 or o > s1:
        return BargainSplit(mnc_payoff=o, j1_payoff=0, j2_payoff=0, agreement=False)
    mnc = max(s1 / 2, o)
    return BargainSplit(mnc_payoff=mnc, j1_payoff=s1 - mnc, j2_payoff=0, agreement=True)


def three_party_bargain(s1: Currency, s2: Currency) -> BargainSplit:
    """Split when the investor can negotiate with either jurisdiction.

    Requires s1 >= s2 (the favored jurisdiction never has the smaller pie).
    Agreement with the favored jurisdiction is immediate; the investor gets
    the larger of half of s1 and the nonfavored surplus s2, and the favored
    jurisdiction keeps the rest (at most the tax gap s1 - s2).
    """
    if s1 < s2:
        raise PreconditionOrder(f"requires s1 >= s2, got s1={s1}, s2={s2}")
    if s1 < 0:
        return BargainSplit(mnc_payoff=0, j1_payoff=0, j2_payoff=0, agreement=False)
    mnc = max(s1 / 2, max(s2, 0))
    return BargainSplit(mnc_payoff=mnc, j1_payoff=s1 - mnc, j2_payoff=0, agreement=True)


def rubinstein_delta_oracle(
    s1: float,
    outside: float,
    delta: float,
    first_proposer: Proposer,
) -> BargainSplit:
    """Alternating-offer split at an explicit discount factor.

    The investor may opt out (taking `outside`, floored at 0) whenever it is
    responding to an offer.  The responder value v solves

        v = max(outside, delta*(1-delta)*s1 + delta**2 * v),

    found here by plain value iteration from 0 to within BARGAIN_TOL.  The
    reported investor payoff is v when the jurisdiction proposes first and
    s1 - delta*(s1 - v) when the investor does; both converge to
    max(s1/2, outside) as delta -> 1.
    """
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if s1 < 0:
        raise ValueError(f"oracle requires s1 >= 0, got {s1}")
    o = max(float(outside), 0.0)
    s1 = float(s1)

    drift = delta * (1.0 - delta) * s1
    shrink = delta * delta
    v = 0.0
    for _ in range(ITERATION_CAP):
        v_next = max(o, drift + shrink * v)
        if abs(v_next - v) <= BARGAIN_TOL:
            v = v_next
            break
        v = v_next
    else:
        raise NoConvergence(
            f"responder value did not converge within {ITERATION_CAP} steps"
        )

    if o > s1:
        # The jurisdiction cannot profitably match the outside option.
        return BargainSplit(mnc_payoff=o, j1_payoff=0.0, j2_payoff=0.0, agreement=False)
    if first_proposer is Proposer.JURISDICTION:
        mnc = v
    else:
        mnc = s1 - delta * (s1 - v)
    return BargainSplit(mnc_payoff=mnc, j1_payoff=s1 - mnc, j2_payoff=0.0, agreement=True)
