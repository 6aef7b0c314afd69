from fractions import Fraction

import pytest

from matmodel.exactmath import (
    GenusPolynomial,
    TruncatedSeries,
    as_parts,
    automorphism_factor,
    monomial_weight,
    multiplicities,
    partitions_of,
    partitions_up_to,
    poly_from_json,
    poly_json,
    poly_text,
    series_exp,
    series_from_json,
    series_json,
    series_log,
    series_pow,
    series_substitute,
    series_text,
    z_lambda,
)


class TestPartitions:
    def test_as_parts_sorts_descending(self):
        assert as_parts([3, 5, 3]) == (5, 3, 3)

    def test_multiplicities(self):
        assert multiplicities((5, 3, 3)) == {5: 1, 3: 2}

    def test_z_lambda(self):
        # z_(3,3,1) = 3^2 * 2! * 1^1 * 1!
        assert z_lambda((3, 3, 1)) == 18

    def test_automorphism_factor(self):
        assert automorphism_factor((4, 3, 3, 3)) == 6
        assert automorphism_factor((2,)) == 1

    def test_partition_counts(self):
        assert len(list(partitions_of(10))) == 42
        assert list(partitions_of(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_partitions_up_to_even(self):
        sweep = list(partitions_up_to(10, even_only=True))
        assert len(sweep) == 82
        assert all(sum(p) % 2 == 0 for p in sweep)

    def test_max_part_bound(self):
        assert all(p[0] <= 3 for p in partitions_of(6, max_part=3))


class TestGenusPolynomial:
    def test_arithmetic(self):
        n = GenusPolynomial.variable("N")
        poly = (n * n + 1) * Fraction(1, 2)
        assert poly.coefficient(2) == Fraction(1, 2)
        assert poly.coefficient(0) == Fraction(1, 2)
        assert (poly - poly).is_zero

    def test_shift_and_evaluate(self):
        n = GenusPolynomial.variable("N")
        poly = n.shifted(2) + n  # N^3 + N
        assert poly.evaluate(Fraction(2)) == 10
        assert poly.coefficient(3) == 1

    def test_fraction_interop(self):
        n = GenusPolynomial.variable("N")
        assert Fraction(1, 2) * n == n * Fraction(1, 2)
        assert (1 + n) - n == GenusPolynomial.constant("N", Fraction(1))

    def test_text(self):
        poly = GenusPolynomial("N", {3: Fraction(1, 2), 1: Fraction(-1, 4)})
        assert poly_text(poly) == "1/2*N^3 - 1/4*N"
        assert poly_text(GenusPolynomial.zero("N")) == "0"
        assert poly_text(GenusPolynomial.variable("t")) == "t"

    def test_json_round_trip(self):
        poly = GenusPolynomial("N", {4: Fraction(3), 2: Fraction(4)})
        assert poly_from_json(poly_json(poly)) == poly
        assert poly_json(poly)["terms"] == [["3", 4], ["4", 2]]


def _series(terms, truncation=8):
    return TruncatedSeries(truncation, terms)


class TestTruncatedSeries:
    def test_weights(self):
        assert monomial_weight((("g_3", 2), ("t_1", 1))) == 8  # 3+3 and 1+1

    def test_mul_respects_truncation(self):
        g2 = TruncatedSeries.symbol(6, "g_2")
        product = g2 * g2 * g2 * g2  # weight 8 > truncation
        assert product.is_zero

    def test_pow_and_scale(self):
        g1 = TruncatedSeries.symbol(8, "g_1")
        cube = (g1 * Fraction(2)) ** 3
        assert cube.coefficient((("g_1", 3),)) == 8

    def test_exp_log_round_trip(self):
        s = _series({(("g_1", 1),): Fraction(1), (("g_2", 1),): Fraction(-1, 3)})
        assert series_log(series_exp(s)) == s

    def test_log_exp_round_trip(self):
        u = _series({(("t_1", 1),): Fraction(2, 5), (("t_0", 2),): Fraction(1)})
        one_plus = TruncatedSeries.one(8) + u
        assert series_exp(series_log(one_plus)) == one_plus

    def test_pow_rational(self):
        u = TruncatedSeries.symbol(8, "g_2")
        one_plus = TruncatedSeries.one(8) + u
        root = series_pow(one_plus, Fraction(1, 2))
        assert root * root == one_plus

    def test_pow_negative(self):
        u = TruncatedSeries.symbol(8, "g_2")
        one_plus = TruncatedSeries.one(8) + u
        inverse = series_pow(one_plus, Fraction(-1))
        assert inverse * one_plus == TruncatedSeries.one(8)

    def test_exp_requires_zero_constant(self):
        with pytest.raises(ValueError):
            series_exp(TruncatedSeries.one(6))

    def test_log_requires_unit_constant(self):
        with pytest.raises(ValueError):
            series_log(TruncatedSeries.symbol(6, "g_1"))

    def test_differentiate(self):
        s = _series({(("g_2", 2), ("g_1", 1)): Fraction(3)})
        ds = s.differentiate("g_2")
        assert ds.coefficient((("g_1", 1), ("g_2", 1))) == 6

    def test_substitute_dictionary(self):
        s = _series({(("g_3", 1),): Fraction(5)})
        t2 = TruncatedSeries.symbol(8, "t_2")
        result = series_substitute(s, {"g_3": t2 * Fraction(1, 2)})
        assert result.coefficient((("t_2", 1),)) == Fraction(5, 2)

    def test_substitute_soundness_guard(self):
        # Replacing a weight-3 symbol by a weight-2 series cannot preserve
        # the truncation and must be rejected.
        s = _series({(("g_3", 1),): Fraction(1)})
        light = TruncatedSeries.symbol(8, "g_2")
        with pytest.raises(ValueError):
            series_substitute(s, {"g_3": light})

    def test_truncate_lowers_bound(self):
        s = _series({(("g_1", 2),): Fraction(1), (("g_2", 3),): Fraction(1)})
        cut = s.truncate(4)
        assert cut.truncation == 4
        assert cut.coefficient((("g_2", 3),)) == 0
        assert cut.coefficient((("g_1", 2),)) == 1

    def test_polynomial_coefficients(self):
        n = GenusPolynomial.variable("N")
        s = _series({(("g_2", 1),): n * n * Fraction(1, 2)})
        doubled = s + s
        assert doubled.coefficient((("g_2", 1),)) == n * n

    def test_min_weight(self):
        s = _series({(("g_2", 1),): Fraction(1), (("g_1", 4),): Fraction(1)})
        assert s.min_weight() == 2


class TestRendering:
    def test_series_text_ordering(self):
        n = GenusPolynomial.variable("N")
        s = _series(
            {
                (("g_4", 1),): n.shifted(2) * Fraction(1, 2) + n * Fraction(1, 4),
                (("g_1", 1), ("g_3", 1)): n * n,
            }
        )
        # Equal weight ties break on the symbol key, lowest index first.
        assert series_text(s) == "N^2*g_3*g_1 + (1/2*N^3 + 1/4*N)*g_4"

    def test_series_text_signs(self):
        s = _series({(("t_1", 1),): Fraction(-1, 2), (("t_0", 2),): Fraction(1)})
        assert series_text(s) == "t_0^2 - 1/2*t_1"

    def test_series_json_round_trip(self):
        n = GenusPolynomial.variable("N")
        s = _series({(("g_2", 1),): n * Fraction(1, 2), (("t_0", 2),): Fraction(2)})
        assert series_from_json(series_json(s)) == s

    def test_series_zero(self):
        assert series_text(TruncatedSeries.zero(4)) == "0"
