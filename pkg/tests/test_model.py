"""Primitive types, validators, and rent arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fiscal_duel import (
    CentralTaxes,
    ModelParams,
    RentProfile,
    assumption1_holds,
    locational_rent,
    surplus,
    validate_params,
    validate_taxes,
)
from fiscal_duel.errors import (
    NonPositiveRent,
    ProbabilityRange,
    RentExceedsProfit,
    RentOrder,
    TaxRange,
)
from fiscal_duel.numeric import tol

# The six worked rent profiles: (home profit, abroad profit, rent, rate %).
RENT_TABLE = [
    (40, 40, 0, 0),
    (40, 0, 40, 100),
    (70, 30, 40, 57),
    (140, 100, 40, 29),
    (1040, 1000, 40, 4),
    (70, 0, 70, 100),
]


class TestValidateParams:
    def test_valid(self):
        p = validate_params(40, 70, 0.4)
        assert (p.r_low, p.r_high, p.q) == (40, 70, 0.4)

    def test_rent_order_rejects_equal_rents(self):
        with pytest.raises(RentOrder):
            validate_params(40, 40, 0.4)

    def test_nonpositive_rent(self):
        with pytest.raises(NonPositiveRent):
            validate_params(0, 70, 0.4)
        with pytest.raises(NonPositiveRent):
            validate_params(-3, 70, 0.4)

    def test_probability_range(self):
        with pytest.raises(ProbabilityRange):
            validate_params(40, 70, 1.3)
        with pytest.raises(ProbabilityRange):
            validate_params(40, 70, -0.1)

    def test_degenerate_q_allowed(self):
        assert validate_params(40, 70, 0).q == 0
        assert validate_params(40, 70, 1).q == 1


class TestAssumption1:
    def test_baseline_true(self):
        assert assumption1_holds(validate_params(40, 70, 0.4))  # 0.4 < 8/11

    def test_high_q_false(self):
        assert not assumption1_holds(validate_params(10, 100, 0.5))  # 0.5 >= 2/11

    def test_q_zero_true(self):
        assert assumption1_holds(validate_params(3, 97, 0))

    def test_exact_equality_is_false(self):
        p = ModelParams(Fraction(40), Fraction(70), Fraction(2 * 40, 110))
        assert not assumption1_holds(p)


class TestSurplus:
    def test_examples(self):
        assert surplus(70, 40) == 30
        assert surplus(40, 40) == 0
        assert surplus(40, 55) == -15

    @given(
        st.floats(0.1, 1e6),
        st.floats(0, 1e6),
    )
    def test_decomposition_exact(self, r, g):
        assert abs(surplus(r, g) + g - r) <= tol(r, g)


class TestCentralTaxes:
    def test_canonicalization_swaps_and_records(self):
        g = CentralTaxes(55, 40)
        assert (g.g1, g.g2, g.swapped) == (40, 55, True)
        assert g == CentralTaxes(40, 55)

    def test_negative_g1_rejected(self):
        with pytest.raises(TaxRange):
            CentralTaxes(-1, 10)

    def test_upper_bound_needs_params(self):
        p = validate_params(40, 70, 0.4)
        with pytest.raises(TaxRange):
            validate_taxes(CentralTaxes(0, 71), p)
        assert validate_taxes(CentralTaxes(0, 70), p).g2 == 70


class TestLocationalRent:
    @pytest.mark.parametrize("home,abroad,rent,rate_pct", RENT_TABLE)
    def test_rent_table(self, home, abroad, rent, rate_pct):
        got_rent, got_rate = locational_rent(RentProfile(home, abroad))
        assert got_rent == rent
        assert round(got_rate * 100) == rate_pct

    def test_rate_identity(self):
        for home, abroad, rent, _ in RENT_TABLE:
            got_rent, got_rate = locational_rent(RentProfile(home, abroad))
            if home > 0:
                assert got_rate == pytest.approx(got_rent / home, rel=1e-12)

    def test_negative_abroad_rejected(self):
        with pytest.raises(RentExceedsProfit):
            locational_rent(RentProfile(40, -1))

    def test_zero_home_profit(self):
        assert locational_rent(RentProfile(0, 0)) == (0, 0)


class TestScaleCovariance:
    @given(
        st.floats(0.01, 100),
        st.floats(1, 50),
        st.floats(1.1, 2.0),
        st.floats(0, 1),
    )
    def test_scaling(self, lam, r_low, ratio, q):
        p = validate_params(r_low, r_low * ratio, q)
        scaled = validate_params(lam * p.r_low, lam * p.r_high, q)
        assert assumption1_holds(p) == assumption1_holds(scaled)
        g = 0.3 * r_low
        assert surplus(lam * p.r_high, lam * g) == pytest.approx(
            lam * surplus(p.r_high, g), rel=1e-9
        )
