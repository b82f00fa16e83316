"""Shared fixtures and draw helpers for the test suite."""

from __future__ import annotations

import random

import pytest

from fiscal_duel import CentralTaxes, ModelParams, validate_params, validate_taxes

# Baseline economy used across the suite and the worked examples.
BASELINE = validate_params(40, 70, 0.4)


@pytest.fixture
def baseline() -> ModelParams:
    return BASELINE


def draw_params(rng: random.Random, *, q_lo: float = 0.0, q_hi: float = 1.0) -> ModelParams:
    """Random economy with the rent ratio capped so default oracle grids stay
    small (ratio <= 3 keeps the tax grid under ~600 points)."""
    r_low = rng.uniform(15.0, 90.0)
    r_high = rng.uniform(r_low + 2.0, min(100.0, 3.0 * r_low))
    q = rng.uniform(q_lo, q_hi)
    return validate_params(r_low, r_high, q)


def draw_taxes(
    rng: random.Random, p: ModelParams, *, strict_gap: bool = False
) -> CentralTaxes:
    """Random in-region tax pair: 0 <= g1 <= r_low, g1 <= g2 <= r_high."""
    g1 = rng.uniform(0.0, float(p.r_low))
    lo = g1 + 1e-6 if strict_gap else g1
    g2 = rng.uniform(lo, float(p.r_high))
    return validate_taxes(CentralTaxes(g1, g2), p)


def random_battery(seed: int, n: int, *, strict_gap: bool = False):
    """Deterministic battery of (params, taxes) points used by several tests."""
    rng = random.Random(seed)
    return [
        (p, draw_taxes(rng, p, strict_gap=strict_gap))
        for p in (draw_params(rng) for _ in range(n))
    ]
