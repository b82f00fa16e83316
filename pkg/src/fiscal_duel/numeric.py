"""Tolerance-aware comparisons over floats and exact rationals.

Equilibrium boundaries in this model are knife edges (e.g. the regime-choice
threshold), so every ordering decision that feeds a tie-breaking rule goes
through these helpers.  Exact types (int, Fraction) compare with zero
tolerance; floats use a relative tolerance of 1e-9 scaled by magnitude.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Currency = Union[int, float, Fraction]

REL_TOL = 1e-9


def is_exact(x: Currency) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def tol(*values: Currency) -> Currency:
    """Comparison tolerance for the given operands (0 for exact types)."""
    if all(is_exact(v) for v in values):
        return 0
    m = max((abs(float(v)) for v in values), default=0.0)
    return REL_TOL * max(1.0, m)


def eq(a: Currency, b: Currency) -> bool:
    return abs(a - b) <= tol(a, b)


def gt(a: Currency, b: Currency) -> bool:
    """a exceeds b beyond tolerance."""
    return a - b > tol(a, b)


def ge(a: Currency, b: Currency) -> bool:
    """a is at least b, counting a within-tolerance tie as true."""
    return not gt(b, a)
