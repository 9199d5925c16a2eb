"""Tests for anhomomorphic.trials."""

import itertools
import math

import pytest

from anhomomorphic.algebra import Partition
from anhomomorphic.cournot import Outcome, predict
from anhomomorphic.errors import AnhomomorphicError, CapExceededError, InterferenceError
from anhomomorphic.measure import interference, mu_event
from anhomomorphic.trials import (
    OccupationEvent,
    OccupationUnion,
    ProductEvent,
    RepeatedTrial,
    binomial_tail_measure,
    coin_model,
    detailed_pattern_question,
    heads_count_event,
    multinomial,
    occupation_event_measure,
    occupation_union_measure,
    occupation_vectors,
    pattern_distribution_event,
    product_event_measure,
    slot_cells,
    slot_label,
    toss_question,
    uniform_distribution_event,
)


@pytest.fixture(scope="module")
def cells(double_slit):
    return slot_cells(double_slit.space)


@pytest.fixture(scope="module")
def ten(double_slit):
    return RepeatedTrial(double_slit, 10)


class TestCounting:
    def test_multinomial(self):
        assert multinomial((2, 2, 2, 2, 2)) == 113400
        assert multinomial((3, 3, 3, 1, 0)) == 16800
        assert multinomial((4,)) == 1
        assert multinomial(()) == 1

    def test_occupation_vectors(self):
        vectors = list(occupation_vectors(3, 2))
        assert len(vectors) == math.comb(4, 2)
        assert len(set(vectors)) == len(vectors)
        assert all(sum(v) == 2 and len(v) == 3 for v in vectors)

    def test_arrangements_add_up_to_all_sequences(self):
        assert sum(multinomial(v) for v in occupation_vectors(4, 5)) == 4**5


class TestDoubleSlitModel:
    def test_labels(self, double_slit):
        assert double_slit.space.labels[:3] == ("(s1,0)", "(s1,+2)", "(s1,-2)")
        assert slot_label(2, -1) == "(s2,-1)"

    def test_slot_measures(self, double_slit, cells):
        values = [mu_event(double_slit, c) for c in cells.blocks]
        assert values == pytest.approx([0.3, 0.3, 0.3, 0.05, 0.05])

    def test_same_slot_interference(self, double_slit, cells):
        bright = cells.blocks[0]
        s1, s2 = (double_slit.space.singleton(i) for i in bright.members)
        assert interference(double_slit, s1, s2) == pytest.approx(0.1)


class TestOccupationMeasure:
    def test_uniform_distribution(self, ten, cells):
        uniform = uniform_distribution_event(cells, 10)
        m = occupation_event_measure(ten, uniform)
        assert m.arrangements == 113400
        assert m.per_arrangement == pytest.approx(0.3**6 * 0.05**4)
        assert m.per_arrangement == pytest.approx(5e-9, rel=0.1)
        assert 4.5e-4 <= m.total <= 5.5e-4
        assert predict(ten, uniform, 1e-3).outcome is Outcome.PRECLUDED

    def test_pattern_distribution(self, ten, cells):
        pattern = pattern_distribution_event(cells)
        parts = occupation_union_measure(ten, pattern)
        assert [p.arrangements for p in parts] == [16800, 16800]
        assert parts[0].per_arrangement == pytest.approx(1e-6, rel=0.1)
        total = ten.measure(pattern)
        assert total == pytest.approx(33600 * 0.3**9 * 0.05)
        assert total > 1e-3
        assert predict(ten, pattern, 1e-3).outcome is Outcome.NOT_RULED_OUT

    def test_detailed_question_precluded(self, ten, cells):
        detailed = detailed_pattern_question(cells)
        assert len(detailed.factors) == 10
        assert ten.measure(detailed) == pytest.approx(0.3**9 * 0.05)
        assert predict(ten, detailed, 1e-3).precluded

    @pytest.mark.parametrize("particles", range(1, 13))
    def test_distributions_exhaust_the_measure(self, double_slit, cells, particles):
        trial = RepeatedTrial(double_slit, particles)
        total = sum(
            occupation_event_measure(trial, OccupationEvent(cells, counts)).total
            for counts in occupation_vectors(len(cells), particles)
        )
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_interfering_cells_rejected(self, ten, double_slit):
        labels = double_slit.space.labels
        slits = Partition.from_labels(double_slit.space, [labels[:5], labels[5:]])
        with pytest.raises(InterferenceError):
            occupation_event_measure(ten, OccupationEvent(slits, (5, 5)))

    def test_counts_must_sum_to_trials(self, ten, cells):
        with pytest.raises(AnhomomorphicError):
            occupation_event_measure(ten, OccupationEvent(cells, (1, 1, 1, 1, 1)))

    def test_counts_validated(self, cells):
        with pytest.raises(AnhomomorphicError):
            OccupationEvent(cells, (10,))
        with pytest.raises(AnhomomorphicError):
            OccupationEvent(cells, (11, -1, 0, 0, 0))

    def test_union_validation(self, cells):
        with pytest.raises(AnhomomorphicError):
            OccupationUnion(())
        member = OccupationEvent(cells, (2, 2, 2, 2, 2))
        with pytest.raises(AnhomomorphicError, match="distinct"):
            OccupationUnion((member, member))

    def test_uneven_uniform_rejected(self, cells):
        with pytest.raises(AnhomomorphicError):
            uniform_distribution_event(cells, 7)


class TestRepeatedTrial:
    def test_needs_a_trial(self, double_slit):
        with pytest.raises(AnhomomorphicError):
            RepeatedTrial(double_slit, 0)

    def test_product_event_factor_count(self, ten, double_slit):
        with pytest.raises(AnhomomorphicError):
            product_event_measure(ten, [double_slit.space.full])

    def test_factor_order_does_not_matter(self, double_slit, cells):
        trial = RepeatedTrial(double_slit, 4)
        space = double_slit.space
        factors = [
            cells.blocks[0],
            space.singleton(3),
            space.event(["(s1,0)", "(s2,+1)"]),
            space.full,
        ]
        expected = product_event_measure(trial, factors)
        assert expected == pytest.approx(math.prod(mu_event(double_slit, f) for f in factors))
        for order in itertools.permutations(factors):
            assert product_event_measure(trial, order) == pytest.approx(expected, abs=1e-15)

    def test_product_of_full_events(self, ten, double_slit):
        assert ten.measure(ProductEvent((double_slit.space.full,) * 10)) == pytest.approx(1.0)

    def test_unsupported_event(self, ten):
        with pytest.raises(AnhomomorphicError):
            ten.measure("pattern")


class TestCoin:
    def test_labels_heads_first(self, coin2):
        assert coin2.space.labels == ("hh", "ht", "th", "tt")

    def test_toss_question(self, coin2):
        assert toss_question(coin2.space, 0).as_labels() == [["hh", "ht"], ["th", "tt"]]
        assert toss_question(coin2.space, 1).as_labels() == [["hh", "th"], ["ht", "tt"]]

    def test_heads_at_most_six(self, coin10):
        event = heads_count_event(coin10.space, 0, 6)
        assert len(event) == 848
        assert mu_event(coin10, event) == pytest.approx(848 / 1024, abs=1e-12)
        assert binomial_tail_measure(10, 0.5, 0, 6) == pytest.approx(848 / 1024, abs=1e-12)

    def test_binomial_tail_total(self):
        assert binomial_tail_measure(7, 0.3) == pytest.approx(1.0)

    def test_biased_coin(self):
        d = coin_model(3, bias=0.2)
        assert mu_event(d, d.space.event(["hhh"])) == pytest.approx(0.008)

    def test_materialize_cap(self):
        with pytest.raises(CapExceededError):
            coin_model(11)

    def test_bias_range(self):
        with pytest.raises(AnhomomorphicError):
            coin_model(2, bias=1.0)
