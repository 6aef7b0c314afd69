"""Property-based invariants (deterministic: the fixed-seed profile)."""

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from matmodel.correlators import thin_genus
from matmodel.exactmath import (
    GenusPolynomial,
    TruncatedSeries,
    series_exp,
    series_log,
    series_pow,
)

F = Fraction

parts_strategy = st.lists(
    st.integers(min_value=1, max_value=6), min_size=1, max_size=5
)

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(
    bool
)

G_MONOMIALS = [
    (("g_1", 1),),
    (("g_2", 1),),
    (("g_1", 2),),
    (("g_3", 1),),
    (("g_2", 1), ("g_1", 1)),
    (("g_4", 1),),
    (("g_2", 2),),
    (("g_3", 1), ("g_1", 2)),
    (("g_5", 1),),
    (("g_2", 1), ("g_1", 3)),
]

T_MONOMIALS = [
    (("t_0", 1),),
    (("t_1", 1),),
    (("t_0", 2),),
    (("t_2", 1),),
    (("t_1", 1), ("t_0", 1)),
    (("t_3", 1),),
    (("t_0", 3), ("t_1", 1)),
    (("t_2", 1), ("t_0", 2)),
]

series_terms = st.dictionaries(
    st.sampled_from(G_MONOMIALS + T_MONOMIALS), coeffs, max_size=5
)


class TestCorrelatorInvariance:
    @given(parts=parts_strategy, seed=st.randoms(use_true_random=False))
    def test_part_order_invariance(self, engine, parts, seed):
        canonical = tuple(sorted(parts, reverse=True))
        genus = thin_genus(canonical)
        assume(genus is not None)
        shuffled = list(parts)
        seed.shuffle(shuffled)
        assert engine.thin(tuple(shuffled), genus) == engine.thin(
            canonical, genus
        )

    @given(parts=parts_strategy, genus=st.integers(min_value=0, max_value=3))
    def test_odd_degree_vanishes(self, engine, parts, genus):
        canonical = tuple(sorted(parts, reverse=True))
        assume(sum(canonical) % 2 == 1)
        assert engine.thin(canonical, genus).is_zero
        assert engine.fat(canonical, genus).is_zero

    @given(parts=parts_strategy)
    def test_n_power_parity(self, engine, parts):
        # Every surviving power of N in V(lambda, g) is congruent to
        # g + 1 mod 2: orientable gluings change the face count by two.
        canonical = tuple(sorted(parts, reverse=True))
        genus = thin_genus(canonical)
        assume(genus is not None)
        value = engine.thin(canonical, genus)
        for exponent in value.exponents():
            assert exponent % 2 == (genus + 1) % 2

    @given(parts=parts_strategy, genus=st.integers(min_value=0, max_value=2))
    def test_fat_is_monomial_of_fixed_power(self, engine, parts, genus):
        # A fat layer is a monomial in t: the power is pinned by the
        # selection rule m = (|lambda| - 2 l - 4 g + 4) / 2.
        canonical = tuple(sorted(parts, reverse=True))
        value = engine.fat(canonical, genus)
        assume(not value.is_zero)
        expected = (sum(canonical) - 2 * len(canonical) - 4 * genus + 4) // 2
        assert value.exponents() == (expected,)


class TestDilatonPowerLaw:
    @pytest.mark.parametrize("m", range(1, 7))
    def test_pure_g2_tower(self, engine, m):
        expected = GenusPolynomial("N", {2: F(factorial(m - 1), 2)})
        assert engine.thin((2,) * m, 1) == expected


class TestSeriesRoundTrips:
    @given(terms=series_terms)
    def test_exp_log(self, terms):
        zero_min = TruncatedSeries(8, terms)
        assume(not zero_min.coefficient(()))
        one_plus = TruncatedSeries.one(8) + zero_min
        assert series_log(series_exp(zero_min)) == zero_min
        assert series_exp(series_log(one_plus)) == one_plus

    @given(terms=series_terms, exponent=st.integers(min_value=-3, max_value=3))
    def test_integer_power_is_repeated_product(self, terms, exponent):
        base = TruncatedSeries.one(8) + TruncatedSeries(8, terms)
        assume(base.coefficient(()))
        value = series_pow(base, exponent)
        direct = TruncatedSeries.one(8)
        for _ in range(abs(exponent)):
            direct = direct * base
        if exponent < 0:
            assert value * direct == TruncatedSeries.one(8)
        else:
            assert value == direct

    @given(terms=series_terms)
    def test_half_power_squares_back(self, terms):
        base = TruncatedSeries.one(8) + TruncatedSeries(8, terms)
        assume(base.coefficient(()))
        root = series_pow(base, F(1, 2))
        assert root * root == base
