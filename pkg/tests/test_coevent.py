"""Tests for anhomomorphic.coevent."""

import pytest

from anhomomorphic.algebra import Partition, enumerate_events, make_space
from anhomomorphic.coevent import (
    CoEvent,
    affirms,
    characteristic_coevent,
    classical_domain,
    denies,
    enumerate_appc,
    enumerate_ppc,
    evaluate,
    find_boolean_anomalies,
    is_homomorphism_on,
    maximal_null_sets,
    minimal_transversals,
)
from anhomomorphic.errors import AnhomomorphicError, CapExceededError, TotalPreclusionError
from anhomomorphic.measure import classical_diagonal
from anhomomorphic.trials import toss_question


def duals(coevents):
    return [c.dual.labels for c in coevents]


class TestCoEvent:
    def test_evaluate_dual_containment(self, three_slit):
        space = three_slit.space
        phi = CoEvent(space.event(["A", "C"]))
        assert evaluate(phi, space.full) == 1
        assert phi(space.event(["A", "C"])) == 1
        assert evaluate(phi, space.event(["A", "B"])) == 0
        assert evaluate(phi, space.empty) == 0

    def test_empty_dual_rejected(self, three_slit):
        with pytest.raises(AnhomomorphicError):
            CoEvent(three_slit.space.empty)

    def test_affirming_an_event_denies_its_complement(self, three_slit):
        space = three_slit.space
        phi = CoEvent(space.event(["A", "C"]))
        for event in enumerate_events(space):
            if affirms(phi, event):
                assert denies(phi, ~event)

    def test_characteristic_coevent_is_classical(self, three_slit):
        phi = characteristic_coevent(three_slit.space, 1)
        assert phi.is_classical
        assert phi.dual.labels == ["B"]
        assert not CoEvent(three_slit.space.event(["A", "C"])).is_classical


class TestNullSets:
    def test_three_slit_maximal_nulls(self, three_slit):
        family = maximal_null_sets(three_slit)
        assert [s.labels for s in family.maximal_null_sets] == [["A", "B"], ["B", "C"]]
        assert not family.omega_is_null

    def test_domination(self, three_slit):
        family = maximal_null_sets(three_slit)
        space = three_slit.space
        assert family.is_null_dominated(space.event(["A"]))
        assert family.is_null_dominated(space.event(["B"]))
        assert not family.is_null_dominated(space.event(["A", "C"]))

    def test_no_nulls_leaves_only_the_empty_event(self, classical3):
        family = maximal_null_sets(classical3)
        assert [s.labels for s in family.maximal_null_sets] == [[]]

    def test_approximate_threshold_is_strict(self, coin2):
        family = maximal_null_sets(coin2, epsilon=0.25)
        assert [s.labels for s in family.maximal_null_sets] == [[]]
        family = maximal_null_sets(coin2, epsilon=0.3)
        assert len(family.maximal_null_sets) == 4

    def test_negative_epsilon_rejected(self, three_slit):
        with pytest.raises(AnhomomorphicError):
            maximal_null_sets(three_slit, epsilon=-0.1)


class TestMinimalTransversals:
    def test_path_hypergraph(self):
        space = make_space(["A", "B", "C"])
        edges = [space.event(["A", "B"]), space.event(["B", "C"])]
        assert [t.labels for t in minimal_transversals(edges)] == [["B"], ["A", "C"]]

    def test_no_edges(self):
        space = make_space(["A"])
        assert [t.labels for t in minimal_transversals([], space)] == [[]]
        with pytest.raises(AnhomomorphicError):
            minimal_transversals([])

    def test_empty_edge_cannot_be_hit(self):
        space = make_space(["A"])
        with pytest.raises(AnhomomorphicError):
            minimal_transversals([space.empty])

    def test_redundant_edges_ignored(self):
        space = make_space(["A", "B", "C"])
        edges = [space.event(["A"]), space.event(["A", "B"]), space.event(["C"])]
        assert [t.labels for t in minimal_transversals(edges)] == [["A", "C"]]


class TestEnumeratePPC:
    def test_three_slit_single_dual(self, three_slit):
        assert duals(enumerate_ppc(three_slit)) == [["A", "C"]]

    def test_classical_recovery(self, classical3):
        assert duals(enumerate_ppc(classical3)) == [["x"], ["y"], ["z"]]

    def test_zero_weight_history_is_precluded(self):
        d = classical_diagonal(make_space(["x", "y", "z"]), [0.5, 0.0, 0.5])
        assert duals(enumerate_ppc(d)) == [["x"], ["z"]]

    def test_cap(self, three_slit):
        with pytest.raises(CapExceededError):
            enumerate_ppc(three_slit, cap=2)


class TestEnumerateAPPC:
    def test_two_tosses(self, coin2):
        found = duals(enumerate_appc(coin2, 0.3))
        assert len(found) == 6
        assert all(len(d) == 2 for d in found)

    def test_total_preclusion(self, coin2):
        with pytest.raises(TotalPreclusionError):
            enumerate_appc(coin2, 1.5)

    def test_epsilon_must_be_positive(self, coin2):
        with pytest.raises(AnhomomorphicError):
            enumerate_appc(coin2, 0.0)


class TestClassicalDomain:
    def test_three_slit(self, three_slit):
        domain = classical_domain(enumerate_ppc(three_slit))
        assert domain.partition.as_labels() == [["A", "C"], ["B"]]
        assert [e.labels for e in domain.events()] == [[], ["B"], ["A", "C"], ["A", "B", "C"]]

    def test_classical_model_gives_discrete_partition(self, classical3):
        domain = classical_domain(enumerate_ppc(classical3))
        assert domain.partition == Partition.discrete(classical3.space)

    def test_needs_coevents(self):
        with pytest.raises(AnhomomorphicError):
            classical_domain([])


class TestHomomorphism:
    @pytest.mark.parametrize("method", ["block", "exhaustive"])
    def test_dual_inside_a_block(self, three_slit, method):
        phi = enumerate_ppc(three_slit)[0]
        domain = classical_domain([phi])
        assert is_homomorphism_on(phi, domain.partition, method=method)

    @pytest.mark.parametrize("method", ["block", "exhaustive"])
    def test_split_dual_breaks_homomorphism(self, three_slit, method):
        phi = enumerate_ppc(three_slit)[0]
        assert not is_homomorphism_on(phi, Partition.discrete(three_slit.space), method=method)

    def test_anhomomorphism_witness(self, three_slit):
        space = three_slit.space
        phi = enumerate_ppc(three_slit)[0]
        ab, bc = space.event(["A", "B"]), space.event(["B", "C"])
        assert evaluate(phi, ab ^ bc) == 1
        assert (evaluate(phi, ab) + evaluate(phi, bc)) % 2 == 0

    def test_exhaustive_cap(self):
        space = make_space([f"h{i}" for i in range(9)])
        phi = CoEvent(space.singleton(0))
        with pytest.raises(CapExceededError):
            is_homomorphism_on(phi, Partition.discrete(space), method="exhaustive", cap=8)

    def test_unknown_method(self, three_slit):
        phi = CoEvent(three_slit.space.full)
        with pytest.raises(AnhomomorphicError):
            is_homomorphism_on(phi, Partition.trivial(three_slit.space), method="guess")


class TestBooleanAnomalies:
    def test_three_slit_denies_every_slit(self, three_slit):
        ppc = enumerate_ppc(three_slit)
        anomalies = find_boolean_anomalies(ppc, Partition.discrete(three_slit.space))
        assert duals(anomalies) == [["A", "C"]]

    def test_approximate_preclusion_on_second_toss(self, coin2):
        appc = enumerate_appc(coin2, 0.3)
        anomalies = duals(find_boolean_anomalies(appc, toss_question(coin2.space, 1)))
        assert len(anomalies) == 4
        for dual in anomalies:
            assert {label[1] for label in dual} == {"h", "t"}

    def test_exact_preclusion_on_coin_has_none(self, coin2):
        ppc = enumerate_ppc(coin2)
        assert find_boolean_anomalies(ppc, toss_question(coin2.space, 1)) == []
