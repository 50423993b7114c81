import numpy as np
import pytest
from fractions import Fraction
from hypothesis import given, settings
from hypothesis import strategies as st

from minorcones.ratios import (FormalLog, NotPositiveDefiniteError,
                               RatioSyntaxError, apply_complement,
                               apply_permutation, delete_index,
                               evaluate_log_ratio, formal_log, format_ratio,
                               from_entries, is_homogeneous,
                               is_koteljanskii_ray, koteljanskii_log, log_of,
                               parse_ratio)
from minorcones.subsets import mask_of


class TestParseRatio:
    def test_hadamard(self):
        spec = parse_ratio("{1,2}{} / {1}{2}", 2)
        assert spec.numerator == ((0b11, Fraction(1)), (0, Fraction(1)))
        assert spec.denominator == ((0b01, Fraction(1)), (0b10, Fraction(1)))

    def test_r1(self):
        spec = parse_ratio("{1,2,4}{1,3,4}{2,3}{1}{4} / "
                           "{1,2}{1,3}{1,4}{2,4}{3,4}", 4)
        assert [m for m, _ in spec.numerator] == [
            mask_of([1, 2, 4]), mask_of([1, 3, 4]), mask_of([2, 3]),
            mask_of([1]), mask_of([4])]
        assert len(spec.denominator) == 5

    def test_fractional_exponents(self):
        spec = parse_ratio("{1,2}^3/2 / {1}^3/2{2}^3/2")
        for _, exp in spec.numerator + spec.denominator:
            assert exp == Fraction(3, 2)

    def test_integer_exponent_then_separator(self):
        spec = parse_ratio("{1,2}^2 / {1}^2{2}^2")
        assert spec.numerator[0][1] == 2

    def test_syntax_error_has_position(self):
        with pytest.raises(RatioSyntaxError) as err:
            parse_ratio("{1,2 / {1}{2}")
        assert err.value.position >= 0

    def test_zero_exponent_rejected(self):
        with pytest.raises(RatioSyntaxError):
            parse_ratio("{1}^0 / {1}")

    def test_index_beyond_ground_size(self):
        with pytest.raises(ValueError):
            parse_ratio("{1,5} / {1}{5}", n=3)

    def test_round_trip(self):
        for text in ("{1,2}{} / {1}{2}", "{1,2}^3/2 / {1}^3/2{2}^3/2",
                     "{1,2,4}{1,3,4}{2,3}{1}{4} / {1,2}{1,3}{1,4}{2,4}{3,4}"):
            spec = parse_ratio(text)
            assert parse_ratio(format_ratio(spec), spec.ground_size) == spec


class TestFormalLog:
    def test_hadamard_entries(self):
        v = log_of("{1,2}{} / {1}{2}", 2)
        assert v[0b11] == 1 and v[0b01] == -1 and v[0b10] == -1 and v[0] == 1

    def test_r1_entries(self):
        v = log_of("{1,2,4}{1,3,4}{2,3}{1}{4} / "
                   "{1,2}{1,3}{1,4}{2,4}{3,4}", 4)
        assert v[0] == 0
        assert v[mask_of([1, 2, 4])] == 1
        assert v[mask_of([3, 4])] == -1

    def test_trivial_cancellation(self):
        assert log_of("{1} / {1}", 1).is_zero()

    def test_sum_zero_invariant(self):
        v = log_of("{1,2,3}^5{2} / {1}^2{3}^1/3", 3)
        assert sum(v.exponents) == 0


class TestHomogeneity:
    def test_hadamard_homogeneous(self):
        assert is_homogeneous(log_of("{1,2}{} / {1}{2}", 2))

    def test_empty_set_convention_irrelevant(self):
        assert is_homogeneous(log_of("{1,2} / {1}{2}", 2))
        assert not is_homogeneous(log_of("{1,2} / {1}", 2))

    def test_r2_homogeneous(self):
        from minorcones.constants import R2
        assert is_homogeneous(R2())


perms_of_4 = st.permutations(list(range(1, 5)))


def random_log(draw_entries):
    return from_entries(4, {m: Fraction(e) for m, e in draw_entries.items()})


small_logs = st.dictionaries(
    st.integers(min_value=1, max_value=15),
    st.integers(min_value=-3, max_value=3), max_size=8).map(random_log)


class TestGroupActions:
    def test_identity_permutation(self):
        v = log_of("{1,2}{} / {1}{2}", 4)
        assert apply_permutation(v, (1, 2, 3, 4)) == v

    def test_r1_swap_23_invariant(self):
        from minorcones.constants import R1
        assert apply_permutation(R1(), (1, 3, 2, 4)) == R1()

    def test_hadamard_swap_12_invariant(self):
        v = log_of("{1,2}{} / {1}{2}", 2)
        assert apply_permutation(v, (2, 1)) == v

    @settings(max_examples=50, deadline=None)
    @given(small_logs, perms_of_4, perms_of_4)
    def test_permutation_composition(self, v, sigma, tau):
        once = apply_permutation(apply_permutation(v, sigma), tau)
        composed = tuple(tau[sigma[i] - 1] for i in range(4))
        assert once == apply_permutation(v, composed)

    @settings(max_examples=50, deadline=None)
    @given(small_logs)
    def test_complement_involution(self, v):
        assert apply_complement(apply_complement(v)) == v

    def test_hadamard_self_complementary_n2(self):
        v = log_of("{1,2}{} / {1}{2}", 2)
        assert apply_complement(v) == v

    @settings(max_examples=30, deadline=None)
    @given(small_logs, perms_of_4)
    def test_homogeneity_invariant_under_actions(self, v, sigma):
        h = is_homogeneous(v)
        assert is_homogeneous(apply_permutation(v, sigma)) == h
        assert is_homogeneous(apply_complement(v)) == h


class TestKoteljanskii:
    def test_disjoint_singletons(self):
        assert koteljanskii_log(mask_of([1]), mask_of([2]), 2) == \
            log_of("{1,2}{} / {1}{2}", 2)

    def test_overlapping_pairs(self):
        assert koteljanskii_log(mask_of([1, 2]), mask_of([1, 3]), 3) == \
            log_of("{1,2,3}{1} / {1,2}{1,3}", 3)

    def test_nested_sets_give_zero(self):
        assert koteljanskii_log(0b11, 0b11, 2).is_zero()
        assert koteljanskii_log(0b01, 0b11, 2).is_zero()

    def test_ray_predicate(self):
        assert is_koteljanskii_ray(log_of("{1,2,3}{1} / {1,2}{1,3}", 3))
        assert is_koteljanskii_ray(log_of("{1,2}{} / {1}{2}", 2))
        from minorcones.constants import R1
        assert not is_koteljanskii_ray(R1())

    def test_scaled_multiple_still_a_ray(self):
        assert is_koteljanskii_ray(log_of("{1,2}^3/2 / {1}^3/2{2}^3/2", 2))


class TestDeleteIndex:
    def test_delete_from_zero(self):
        assert delete_index(from_entries(3, {}), 2).is_zero()

    def test_delete_merges_pairs(self):
        v = log_of("{1,2,3}{1} / {1,2}{1,3}", 3)
        assert delete_index(v, 3).is_zero()

    def test_relabeling(self):
        v = log_of("{1,3} / {1}{3}", 3)
        w = delete_index(v, 2)
        assert w == log_of("{1,2} / {1}{2}", 2)

    def test_koteljanskii_closed_under_deletion(self):
        for s, t in ((0b0011, 0b0101), (0b0110, 0b1010), (0b0111, 0b1101)):
            v = koteljanskii_log(s, t, 4)
            for i in range(1, 5):
                w = delete_index(v, i)
                assert w.is_zero() or is_koteljanskii_ray(w)


class TestEvaluate:
    def test_homogeneous_on_diagonal_is_zero(self):
        v = log_of("{1,2}{} / {1}{2}", 2)
        a = np.diag([3.0, 7.0])
        assert abs(evaluate_log_ratio(v, a)) < 1e-12

    def test_hadamard_value(self):
        v = log_of("{1,2}{} / {1}{2}", 2)
        a = np.array([[2.0, 1.0], [1.0, 2.0]])
        assert evaluate_log_ratio(v, a) == pytest.approx(np.log(3 / 4))

    def test_r1_on_identity(self):
        from minorcones.constants import R1
        assert evaluate_log_ratio(R1(), np.eye(4)) == pytest.approx(0.0)

    def test_non_pd_reports_subset(self):
        v = log_of("{1,2}{} / {1}{2}", 2)
        with pytest.raises(NotPositiveDefiniteError):
            evaluate_log_ratio(v, np.array([[1.0, 2.0], [2.0, 1.0]]))

    def test_diagonal_scaling_invariance(self):
        rng = np.random.default_rng(5)
        from minorcones.constants import R1
        for _ in range(10):
            g = rng.standard_normal((4, 4))
            a = g @ g.T + 1e-3 * np.eye(4)
            d = np.diag(rng.uniform(0.5, 2.0, size=4))
            base = evaluate_log_ratio(R1(), a)
            scaled = evaluate_log_ratio(R1(), d @ a @ d)
            assert abs(base - scaled) <= 1e-9 * max(1.0, abs(base))

    def test_jacobi_identity_single_set(self):
        rng = np.random.default_rng(6)
        n = 4
        for _ in range(10):
            g = rng.standard_normal((n, n))
            a = g @ g.T + 1e-3 * np.eye(n)
            for s in (0b0011, 0b0101, 0b1110):
                v = from_entries(n, {s: 1})
                full = (1 << n) - 1
                w = from_entries(n, {full ^ s: 1, full: -1})
                lhs = evaluate_log_ratio(v, a)
                rhs = evaluate_log_ratio(w, np.linalg.inv(a))
                assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))
