from fractions import Fraction

import pytest

from matmodel.correlators import (
    CorrelatorEngine,
    fat_correlator,
    fat_from_thin,
    fat_selection,
    thin_correlator,
    thin_genus,
    thin_selection,
)
from matmodel.exactmath import GenusPolynomial, partitions_up_to
from matmodel.wick import connected_moment

H = Fraction(1, 2)


def n_poly(terms):
    return GenusPolynomial("N", {e: Fraction(c) for e, c in terms.items()})


def t_poly(terms):
    return GenusPolynomial("t", {e: Fraction(c) for e, c in terms.items()})


# Connected correlators <prod_j p_{a_j}/a_j>^c_{g,N} in degrees 2, 4, 6.
THIN_TABLE = {
    ((2,), 1): {2: H},
    ((1, 1), 0): {1: 1},
    ((4,), 2): {3: H, 1: Fraction(1, 4)},
    ((3, 1), 1): {2: 1},
    ((2, 2), 1): {2: H},
    ((2, 1, 1), 0): {1: 1},
    ((6,), 3): {4: Fraction(5, 6), 2: Fraction(5, 3)},
    ((5, 1), 2): {3: 2, 1: 1},
    ((4, 2), 2): {3: 1, 1: H},
    ((4, 1, 1), 1): {2: 3},
    ((3, 3), 2): {3: Fraction(4, 3), 1: Fraction(1, 3)},
    ((3, 2, 1), 1): {2: 2},
    ((3, 1, 1, 1), 0): {1: 2},
    ((2, 2, 2), 1): {2: 1},
    ((2, 2, 1, 1), 0): {1: 2},
}

VANISHING_FAMILIES = [(1, 1, 1, 1), (2, 1, 1, 1, 1), (1, 1, 1, 1, 1, 1)]

# Degree-8 worked recursions.
WORKED_EXAMPLES = {
    ((5, 3), 3): {4: 3, 2: 4},
    ((4, 4), 3): {4: Fraction(9, 4), 2: Fraction(15, 4)},
    ((4, 3, 3), 3): {4: 12, 2: 13},
    ((3, 3, 3, 3), 3): {4: 64, 2: 56},
}

# Fat correlators <...>^c_g(t) in degrees 2-6 plus the degree-8 pair.
FAT_TABLE = {
    ((2,), 0): {2: H},
    ((1, 1), 0): {1: 1},
    ((4,), 0): {3: H},
    ((4,), 1): {1: Fraction(1, 4)},
    ((3, 1), 0): {2: 1},
    ((2, 2), 0): {2: H},
    ((2, 1, 1), 0): {1: 1},
    ((6,), 0): {4: Fraction(5, 6)},
    ((6,), 1): {2: Fraction(5, 3)},
    ((5, 1), 0): {3: 2},
    ((5, 1), 1): {1: 1},
    ((4, 2), 0): {3: 1},
    ((4, 2), 1): {1: H},
    ((4, 1, 1), 0): {2: 3},
    ((3, 3), 0): {3: Fraction(4, 3)},
    ((3, 3), 1): {1: Fraction(1, 3)},
    ((3, 2, 1), 0): {2: 2},
    ((3, 1, 1, 1), 0): {1: 2},
    ((2, 2, 2), 0): {2: 1},
    ((2, 2, 1, 1), 0): {1: 2},
    ((5, 3), 0): {4: 3},
    ((5, 3), 1): {2: 4},
}


class TestSelectionRules:
    def test_thin_genus(self):
        assert thin_genus((5, 3)) == 3
        assert thin_genus((1, 1)) == 0
        assert thin_genus((3, 3)) == 2
        assert thin_genus((3, 2)) is None  # odd degree
        assert thin_genus((1, 1, 1, 1)) is None  # negative genus

    def test_thin_selection(self):
        assert thin_selection((4,), 2)
        assert not thin_selection((4,), 1)

    def test_fat_selection_powers(self):
        assert fat_selection((4,), 0) == 3
        assert fat_selection((4,), 1) == 1
        assert fat_selection((4,), 2) is None
        assert fat_selection((5, 3), 1) == 2


class TestThinTables:
    @pytest.mark.parametrize("parts,genus", sorted(THIN_TABLE))
    def test_printed_value(self, engine, parts, genus):
        assert engine.thin(parts, genus) == n_poly(THIN_TABLE[(parts, genus)])

    @pytest.mark.parametrize("parts", VANISHING_FAMILIES)
    def test_vanishing_families(self, engine, parts):
        for genus in range(6):
            assert engine.thin(parts, genus).is_zero

    @pytest.mark.parametrize("parts,genus", sorted(WORKED_EXAMPLES))
    def test_worked_examples(self, engine, parts, genus):
        assert engine.thin(parts, genus) == n_poly(WORKED_EXAMPLES[(parts, genus)])

    def test_harer_zagier_deep_row(self, engine):
        # <p_8/8>_4 = (14N^5 + 70N^3 + 21N)/8.
        expected = n_poly(
            {5: Fraction(14, 8), 3: Fraction(70, 8), 1: Fraction(21, 8)}
        )
        assert engine.thin((8,), 4) == expected


class TestFatTables:
    @pytest.mark.parametrize("parts,genus", sorted(FAT_TABLE))
    def test_printed_value_both_routes(self, engine, parts, genus):
        expected = t_poly(FAT_TABLE[(parts, genus)])
        assert engine.fat(parts, genus) == expected
        assert engine.fat_from_thin(parts, genus) == expected

    def test_no_other_layers_in_low_degree(self, engine):
        listed = {parts for parts, _ in FAT_TABLE}
        for parts in partitions_up_to(6, even_only=True):
            admissible = {
                gt for (p, gt) in FAT_TABLE if p == parts
            }
            for genus_tilde in range(4):
                value = engine.fat(parts, genus_tilde)
                if genus_tilde in admissible:
                    assert not value.is_zero
                else:
                    assert value.is_zero
            assert parts in listed or all(
                engine.fat(parts, gt).is_zero for gt in range(4)
            )

    def test_fat_vanishes_beyond_top_layer(self, engine):
        assert engine.fat((5, 3), 2).is_zero
        assert engine.fat((5, 3), 3).is_zero


class TestOracleAgreement:
    def test_sweep_degree_10(self, engine):
        for parts in partitions_up_to(10, even_only=True):
            genus = thin_genus(parts)
            if genus is None:
                expected = GenusPolynomial.zero("N")
            else:
                expected = engine.thin(parts, genus)
                for a in parts:
                    expected = expected * a
            assert connected_moment(parts) == expected, parts

    def test_degree_12_spot_check(self, engine):
        scale = Fraction(1, 60)
        assert connected_moment((5, 4, 3)) * scale == engine.thin((5, 4, 3), 4)


class TestFatThinConsistency:
    def test_all_layers_degree_10(self, engine):
        for parts in partitions_up_to(10, even_only=True):
            top = (sum(parts) - 2 * len(parts) + 4) // 4 + 1
            for genus_tilde in range(top + 1):
                assert engine.fat(parts, genus_tilde) == engine.fat_from_thin(
                    parts, genus_tilde
                ), (parts, genus_tilde)


class TestEngineBehavior:
    def test_part_order_invariance(self, engine):
        assert engine.thin((3, 4, 3), 3) == engine.thin((4, 3, 3), 3)
        assert engine.thin([3, 3, 4], 3) == engine.thin((4, 3, 3), 3)

    def test_failed_selection_returns_zero(self, engine):
        assert engine.thin((3, 5), 2).is_zero
        assert engine.fat((3, 5), 5).is_zero

    def test_empty_partition_rejected(self, engine):
        with pytest.raises(ValueError):
            engine.thin((), 0)
        with pytest.raises(ValueError):
            engine.fat((), 0)

    def test_memoization_hits(self):
        local = CorrelatorEngine()
        local.thin((4, 3, 3), 3)
        computed = local.stats["computed"]
        local.thin((4, 3, 3), 3)
        assert local.stats["hits"] > 0
        assert local.stats["computed"] == computed

    def test_module_level_wrappers(self):
        assert thin_correlator((5, 3), 3) == n_poly({4: 3, 2: 4})
        assert fat_correlator((4,), 1) == t_poly({1: Fraction(1, 4)})
        assert fat_from_thin((4,), 1) == t_poly({1: Fraction(1, 4)})


class TestDiskCache:
    def test_round_trip(self, tmp_path):
        first = CorrelatorEngine(cache_dir=tmp_path)
        value = first.thin((4, 3, 3), 3)
        first.save_cache()
        assert (tmp_path / "correlators.jsonl").exists()

        second = CorrelatorEngine(cache_dir=tmp_path)
        assert second.stats["loaded"] > 0
        assert second.thin((4, 3, 3), 3) == value
        assert second.stats["computed"] == 0

    def test_save_is_deterministic(self, tmp_path):
        engine = CorrelatorEngine(cache_dir=tmp_path)
        engine.thin((5, 3), 3)
        engine.save_cache()
        blob = (tmp_path / "correlators.jsonl").read_bytes()
        engine.save_cache()
        assert (tmp_path / "correlators.jsonl").read_bytes() == blob

    def test_save_requires_directory(self):
        with pytest.raises(ValueError):
            CorrelatorEngine().save_cache()
