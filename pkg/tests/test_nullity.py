import random
from fractions import Fraction

import pytest

from minorcones.nullity import (D5Row, NullityType, Partition, catalog_n4,
                                d5_constraint_set, dual_nullity_type,
                                enumerate_partitions, exact_rank,
                                format_matrix, h_equivalent, h_normal_form,
                                matrix, nullity_type, parse_matrix,
                                partition_nullity, permute_columns, rank_type,
                                realize_partition, subset_matrix,
                                superset_matrix)
from minorcones.subsets import mask_of


class TestMatrixIO:
    def test_parse_integers_and_rationals(self):
        m = parse_matrix("1 0 1/2\n-2 3 0\n")
        assert m == matrix([[1, 0, Fraction(1, 2)], [-2, 3, 0]])

    def test_parse_bad_token_reports_location(self):
        with pytest.raises(ValueError, match="line 2, entry 3"):
            parse_matrix("1 2 3\n4 5 x\n")

    def test_parse_ragged_rejected(self):
        with pytest.raises(ValueError, match="line 2"):
            parse_matrix("1 2\n1 2 3\n")

    def test_round_trip(self):
        m = matrix([[1, Fraction(-3, 7)], [0, 2]])
        assert parse_matrix(format_matrix(m)) == m


class TestExactRank:
    def test_identity(self):
        assert exact_rank(matrix([[1, 0], [0, 1]])) == 2

    def test_rank_one(self):
        assert exact_rank(matrix([[1, 2, 3], [2, 4, 6]])) == 1

    def test_rational_entries(self):
        m = matrix([[Fraction(1, 3), Fraction(2, 3)],
                    [Fraction(1, 2), Fraction(1)]])
        assert exact_rank(m) == 1

    def test_huge_entries_stay_exact(self):
        # A float computation would call this singular.
        big = 10 ** 30
        m = matrix([[big, big], [big, big + 1]])
        assert exact_rank(m) == 2


class TestNullityType:
    def test_identity_columns(self):
        nt = nullity_type(matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
        assert all(nt[t] == 0 for t in range(8))

    def test_all_ones_row(self):
        nt = nullity_type(matrix([[1, 1, 1]]))
        assert [nt[t] for t in range(8)] == [0, 0, 0, 1, 0, 1, 1, 2]

    def test_nullity_plus_rank_is_cardinality(self):
        m = matrix([[1, 0, 1, 1], [0, 1, 1, 1]])
        nt, rt = nullity_type(m), rank_type(m)
        for t in range(16):
            assert nt[t] + rt[t] == t.bit_count()

    def test_invalid_rank_function_rejected(self):
        # nul({1,2}) = 2 with nul({1}) = 0 breaks unit rank increase.
        with pytest.raises(ValueError):
            NullityType(2, (0, 0, 0, 2))

    def test_m7_rank_is_min_card_2(self):
        rt = rank_type(matrix([[1, 1, 1, 1], [0, 1, 2, 3]]))
        for t in range(16):
            assert rt[t] == min(t.bit_count(), 2)


class TestStandardMatrices:
    def test_superset_matrix_nullity_is_indicator(self):
        s = mask_of([1, 2, 4])
        nt = nullity_type(superset_matrix(s, 4))
        for t in range(16):
            assert nt[t] == (1 if t & s == s else 0)

    def test_superset_matrix_rejects_small_sets(self):
        with pytest.raises(ValueError):
            superset_matrix(mask_of([1, 2]), 4)

    def test_subset_matrix_rank_is_indicator(self):
        s = mask_of([2])
        rt = rank_type(subset_matrix(s, 4))
        for t in range(16):
            assert rt[t] == (0 if t & ~s == 0 else 1)

    def test_subset_matrix_rejects_large_sets(self):
        with pytest.raises(ValueError):
            subset_matrix(mask_of([1, 2, 3]), 4)

    def test_permute_columns_acts_on_type(self):
        m = matrix([[1, 0, 1, 1], [0, 1, 1, 1]])
        perm = (2, 3, 4, 1)
        nt = nullity_type(m)
        ntp = nullity_type(permute_columns(m, perm))
        for t in range(16):
            image = 0
            for i in range(1, 5):
                if t >> (i - 1) & 1:
                    image |= 1 << (perm[i - 1] - 1)
            assert ntp[image] == nt[t]


class TestCatalog:
    def test_exactly_23_types(self):
        assert len(catalog_n4()) == 23

    def test_types_distinct(self):
        entries = {nt.entries for _, nt in catalog_n4()}
        assert len(entries) == 23

    def test_family_counts(self):
        # M6 has one parallel pair of columns (6 placements); M7 has four
        # pairwise independent columns (fully symmetric, 1 type).
        counts = {}
        for label, _ in catalog_n4():
            counts[label.split("@")[0]] = counts.get(label.split("@")[0], 0) + 1
        assert counts == {"M^{}": 1, "M^{1}": 4, "M^{1,2}": 6,
                          "M_{1,2,3}": 4, "M_{1,2,3,4}": 1, "M6": 6, "M7": 1}


class TestPartitions:
    def test_bell_number_with_loops(self):
        # sum over loop sets: B(0)+5*B(1)+10*B(2)+10*B(3)+5*B(4)+B(5)
        assert len(enumerate_partitions(5)) == 1 + 5 + 20 + 50 + 75 + 52

    def test_partition_nullity_matches_realization(self):
        for p in enumerate_partitions(4):
            assert partition_nullity(p) == nullity_type(realize_partition(p))

    def test_overlapping_blocks_rejected(self):
        with pytest.raises(ValueError):
            Partition(3, (0b011, 0b110))

    def test_non_covering_rejected(self):
        with pytest.raises(ValueError):
            Partition(3, (0b001,))


class TestDuality:
    def test_dual_is_involution(self):
        for _, nt in catalog_n4():
            assert dual_nullity_type(dual_nullity_type(nt)) == nt

    def test_dual_of_free_matroid_is_all_loops(self):
        free = nullity_type(matrix([[1, 0], [0, 1]]))
        dual = dual_nullity_type(free)
        assert [dual[t] for t in range(4)] == [0, 1, 1, 2]

    def test_dual_total_rank(self):
        # r*(N) = |N| - r(N): the dual of a rank-3 type on 4 columns has
        # total rank 1.
        s = mask_of([1, 2, 3])
        nt = nullity_type(superset_matrix(s, 4))
        assert dual_nullity_type(nt).rank_type()[15] == 4 - nt.rank_type()[15]


class TestHEquivalence:
    def test_reflexive(self):
        v = [Fraction(t.bit_count()) for t in range(16)]
        assert h_equivalent(v, v, 4)

    def test_shift_by_ones_vector(self):
        v = [Fraction(0)] * 16
        w = [Fraction(1)] * 16
        assert h_equivalent(v, w, 4)

    def test_shift_by_indicator(self):
        v = [Fraction(0)] * 16
        w = [Fraction(1) if t & 1 else Fraction(0) for t in range(16)]
        assert h_equivalent(v, w, 4)

    def test_nullity_vs_negated_rank(self):
        # nul(T) = |T| - rho(T) and the cardinality vector is a sum of
        # indicators, so every nullity vector is h-equivalent to -rho.
        for _, nt in catalog_n4():
            neg_rank = [-Fraction(r) for r in nt.rank_type().entries]
            assert h_equivalent(nt.entries, neg_rank, 4)

    def test_inequivalent_pair(self):
        m6 = nullity_type(matrix([[1, 0, 1, 1], [0, 1, 1, 1]]))
        m7 = nullity_type(matrix([[1, 1, 1, 1], [0, 1, 2, 3]]))
        assert not h_equivalent(m6.entries, m7.entries, 4)

    def test_normal_form_idempotent(self):
        v = [Fraction(t * t % 7) for t in range(16)]
        nf = h_normal_form(v, 4)
        assert h_normal_form(nf, 4) == nf


class TestD5ConstraintSet:
    def test_row_count_and_flags(self):
        rows = d5_constraint_set()
        assert len(rows) == 185
        loop_free_primal = [r for r in rows
                            if not r.is_dual and r.partition.loops == 0
                            and not r.direct_sum_redundant]
        assert len(loop_free_primal) == 37

    def test_redundant_rows_are_two_block_loop_free(self):
        for r in d5_constraint_set():
            if r.direct_sum_redundant:
                assert r.partition.loops == 0
                assert len(r.partition.blocks) == 2

    def test_rows_pairwise_h_inequivalent(self):
        rows = d5_constraint_set()
        forms = {tuple(h_normal_form(r.nullity.entries, 5)) for r in rows}
        assert len(forms) == len(rows)


class TestDirectSumAdditivity:
    def test_block_diagonal_nullity_adds(self):
        rng = random.Random(11)
        for _ in range(20):
            a = matrix([[rng.randint(-2, 2) for _ in range(2)]
                        for _ in range(2)])
            b = matrix([[rng.randint(-2, 2) for _ in range(2)]
                        for _ in range(2)])
            embed = matrix(
                [list(row) + [0, 0] for row in a] +
                [[0, 0] + list(row) for row in b])
            nt, na, nb = nullity_type(embed), nullity_type(a), nullity_type(b)
            for t in range(16):
                assert nt[t] == na[t & 0b11] + nb[t >> 2]
