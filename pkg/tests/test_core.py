"""Data model and ratio objective tests."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ssratio import (
    IntegerInstance,
    RatioValue,
    SolutionPair,
    TwoSetInstance,
    check_feasible_semi_restricted,
    check_feasible_two_set,
    max_ratio,
    parse_rational,
    ratio,
)


class TestParseRational:
    def test_forms(self):
        assert parse_rational("3/4") == Fraction(3, 4)
        assert parse_rational("2.5") == Fraction(5, 2)
        assert parse_rational(7) == Fraction(7)
        assert parse_rational(0.1) == Fraction(1, 10)
        assert parse_rational(Fraction(9, 7)) == Fraction(9, 7)

    @pytest.mark.parametrize("bad", ["", "x", "1/0", None, [1], True])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)


class TestRatioValue:
    def test_total_order(self):
        zero = RatioValue.zero()
        one = RatioValue.finite(1)
        two = RatioValue.finite(2)
        inf = RatioValue.infinite()
        assert zero < one < two < inf
        assert not inf < inf and not zero < zero
        assert sorted([inf, two, zero, one]) == [zero, one, two, inf]

    def test_str_and_fraction(self):
        assert str(RatioValue.zero()) == "0"
        assert str(RatioValue.finite(Fraction(6, 5))) == "6/5"
        assert str(RatioValue.infinite()) == "inf"
        assert RatioValue.finite("4/2").as_fraction() == 2
        with pytest.raises(ValueError):
            RatioValue.infinite().as_fraction()

    def test_validation(self):
        with pytest.raises(ValueError):
            RatioValue.finite(0)
        with pytest.raises(ValueError):
            RatioValue.finite(-1)


class TestRatio:
    def test_empty_first(self):
        assert ratio(set(), {2}, [3, 5]) == RatioValue.zero()

    def test_empty_second(self):
        assert ratio({1}, set(), [3, 5]) == RatioValue.infinite()

    def test_both_empty(self):
        assert ratio(set(), set(), [3, 5]) == RatioValue.infinite()

    def test_plain(self):
        assert ratio({1}, {2}, [6, 3]) == RatioValue.finite(2)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            ratio({3}, {1}, [6, 3])


class TestMaxRatio:
    def test_equal_sums(self):
        assert max_ratio([{1}, {2}], [3, 3]) == RatioValue.finite(1)

    def test_takes_larger_direction(self):
        assert max_ratio([{1}, {2}], [6, 3]) == RatioValue.finite(2)

    def test_two_empty_sets(self):
        assert max_ratio([set(), set()], [1]) == RatioValue.infinite()

    def test_needs_two_sets(self):
        with pytest.raises(ValueError):
            max_ratio([{1}], [1])

    def test_three_sets(self):
        assert max_ratio([{1}, {2}, {3}], [2, 4, 8]) == RatioValue.finite(4)


class TestFeasibility:
    def test_two_set_basic(self):
        ok = SolutionPair.from_sets([1, 1, 1, 1], {1}, {4})
        assert check_feasible_two_set(ok, 2)

    def test_two_set_pair_conflict(self):
        bad = SolutionPair.from_sets([1, 1, 1, 1], {1}, {3})
        assert not check_feasible_two_set(bad, 2)

    def test_two_set_empty(self):
        assert not check_feasible_two_set(SolutionPair.empty(), 2)

    def test_two_set_accepts_swapped_sides(self):
        ok = SolutionPair.from_sets([1, 1, 1, 1], {4}, {1})
        assert check_feasible_two_set(ok, 2)

    def test_two_set_malformed_is_false(self):
        bad = SolutionPair.from_sets([1] * 8, {1, 7}, {2})
        assert not check_feasible_two_set(bad, 2)

    def test_semi_restricted_values(self):
        inst = TwoSetInstance.from_pairs([(5, 4), (3, 6)])
        sol = SolutionPair.from_sets(inst.weights, {1}, {4})
        assert check_feasible_semi_restricted(sol, inst, 1)
        assert not check_feasible_semi_restricted(sol, inst, 4)

    def test_semi_restricted_equal_weight_substitute(self):
        inst = TwoSetInstance.from_pairs([(2, 100), (2, 1)])
        sol = SolutionPair.from_sets(inst.weights, {2}, {3})
        assert check_feasible_semi_restricted(sol, inst, 1)


class TestInstances:
    def test_two_set_layout(self):
        inst = TwoSetInstance.from_pairs([(5, 4), (3, 6)])
        assert inst.n == 2
        assert inst.weights == (5, 3, 4, 6)
        assert inst.pair(2) == (3, 6)
        assert inst.base(4) == 2 and inst.mate(1) == 3
        assert inst.side(1) == 1 and inst.side(3) == 2

    def test_two_set_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            TwoSetInstance.from_pairs([(0, 1)])
        with pytest.raises(ValueError):
            TwoSetInstance.from_pairs([])

    def test_from_weights_needs_even_length(self):
        with pytest.raises(ValueError):
            TwoSetInstance.from_weights([1, 2, 3])

    def test_integer_instance_validation(self):
        with pytest.raises(ValueError):
            IntegerInstance(1, (1, 0), 1)
        with pytest.raises(ValueError):
            IntegerInstance(1, (1, 1), 3)
        inst = IntegerInstance.from_pairs([(2, 3)], 2)
        assert inst.pivot_weight() == 3

    def test_solution_pair_validation(self):
        with pytest.raises(ValueError):
            SolutionPair(frozenset({1}), frozenset({1}))
        with pytest.raises(ValueError):
            SolutionPair(frozenset({1}), frozenset())
        pair = SolutionPair.from_sets([2, 3], {1}, {2})
        assert (pair.sum1, pair.sum2) == (2, 3)
        assert pair.value() == RatioValue.finite(Fraction(3, 2))
        assert SolutionPair.empty().value() == RatioValue.infinite()


# --- property tests ---------------------------------------------------------

weights_strategy = st.lists(
    st.fractions(min_value=Fraction(1, 6), max_value=30, max_denominator=6),
    min_size=2,
    max_size=6,
)


@st.composite
def weights_and_sets(draw, k=2, allow_empty=True):
    w = draw(weights_strategy)
    indices = st.sets(st.integers(1, len(w)), min_size=0 if allow_empty else 1, max_size=len(w))
    return w, [draw(indices) for _ in range(k)]


@given(weights_and_sets(k=3))
def test_max_ratio_permutation_invariant(data):
    w, sets = data
    rotated = sets[1:] + sets[:1]
    assert max_ratio(sets, w) == max_ratio(rotated, w)
    assert max_ratio(list(reversed(sets)), w) == max_ratio(sets, w)


@given(weights_and_sets(k=3, allow_empty=False))
def test_max_ratio_at_least_one_for_nonempty(data):
    w, sets = data
    assert RatioValue.finite(1) <= max_ratio(sets, w)


@given(weights_and_sets(k=2, allow_empty=False))
def test_ratio_reciprocal_product(data):
    w, (s1, s2) = data
    forward = ratio(s1, s2, w).as_fraction()
    backward = ratio(s2, s1, w).as_fraction()
    assert forward * backward == 1


@given(
    weights_and_sets(k=2),
    st.fractions(min_value=Fraction(1, 5), max_value=9, max_denominator=5),
)
def test_scaling_leaves_ratios_unchanged(data, c):
    w, (s1, s2) = data
    scaled = [c * v for v in w]
    assert ratio(s1, s2, w) == ratio(s1, s2, scaled)
    assert max_ratio([s1, s2], w) == max_ratio([s1, s2], scaled)
