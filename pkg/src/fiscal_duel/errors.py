"""Exception types shared across the package."""

from __future__ import annotations


class FiscalDuelError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FiscalDuelError, ValueError):
    """An input violates a model invariant."""


class NonPositiveRent(DomainError):
    """Low rent must be strictly positive."""


class RentOrder(DomainError):
    """High rent must strictly exceed low rent."""


class ProbabilityRange(DomainError):
    """Arrival probability must lie in [0, 1]."""


class TaxRange(DomainError):
    """Central taxes must satisfy 0 <= g1 and g2 <= r_high."""


class RentExceedsProfit(DomainError):
    """A locational rent larger than home profit is not representable."""


class PreconditionOrder(DomainError):
    """Operation requires strictly ordered inputs (e.g. g1 < g2, s1 >= s2)."""


class PreconditionG1(DomainError):
    """Closed-form solvers require the favored-jurisdiction tax g1 <= r_low."""


class NegativeSelection(DomainError):
    """The nonfavored posted-tax selection must be nonnegative."""


class NoConvergence(FiscalDuelError):
    """Fixed-point iteration exceeded its cap; indicates a bug, not bad input."""


class NoEquilibrium(FiscalDuelError):
    """No pure profile on the tax grid is an equilibrium (grid too coarse)."""


class ParseError(FiscalDuelError, ValueError):
    """Configuration text is malformed or contains unknown keys."""


class MissingField(FiscalDuelError, ValueError):
    """A command needs a configuration field that was not provided."""
