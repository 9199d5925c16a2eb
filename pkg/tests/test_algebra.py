"""Tests for anhomomorphic.algebra."""

import pytest

from anhomomorphic.algebra import (
    Partition,
    complement,
    enumerate_events,
    event_sort_key,
    is_subset,
    make_space,
    refines,
    subalgebra_events,
    symmetric_difference,
)
from anhomomorphic.errors import (
    AnhomomorphicError,
    CapExceededError,
    SpaceMismatchError,
    UnknownEventError,
)


@pytest.fixture
def abc():
    return make_space(["A", "B", "C"])


class TestHistorySpace:
    def test_labels_keep_order(self):
        space = make_space(["C", "A", "B"])
        assert space.labels == ("C", "A", "B")
        assert space.index("A") == 1
        assert space.n == 3

    def test_duplicate_labels_rejected(self):
        with pytest.raises(AnhomomorphicError, match="duplicate"):
            make_space(["A", "A"])

    def test_empty_space_rejected(self):
        with pytest.raises(AnhomomorphicError):
            make_space([])

    def test_unknown_label(self, abc):
        with pytest.raises(UnknownEventError):
            abc.event(["D"])

    def test_empty_and_full(self, abc):
        assert abc.empty.is_empty
        assert abc.full.labels == ["A", "B", "C"]
        assert len(abc.full) == 3


class TestEventOperations:
    def test_intersection_union(self, abc):
        ab, bc = abc.event(["A", "B"]), abc.event(["B", "C"])
        assert (ab & bc).labels == ["B"]
        assert (ab | bc) == abc.full

    def test_symmetric_difference_is_addition(self, abc):
        ab, bc = abc.event(["A", "B"]), abc.event(["B", "C"])
        assert symmetric_difference(ab, bc).labels == ["A", "C"]
        assert (ab ^ ab).is_empty

    def test_complement(self, abc):
        assert complement(abc.event(["A"])).labels == ["B", "C"]
        assert (~abc.full).is_empty

    def test_subset(self, abc):
        assert is_subset(abc.event(["A"]), abc.event(["A", "C"]))
        assert not abc.event(["B"]) <= abc.event(["A", "C"])
        assert abc.empty <= abc.event(["B"])

    def test_membership_and_repr(self, abc):
        ac = abc.event(["C", "A"])
        assert 0 in ac and 2 in ac and 1 not in ac
        assert repr(ac) == "{A,C}"

    def test_space_mismatch(self, abc):
        other = make_space(["A", "B", "D"])
        with pytest.raises(SpaceMismatchError):
            abc.event(["A"]) & other.event(["A"])

    def test_equal_spaces_interoperate(self, abc):
        twin = make_space(["A", "B", "C"])
        assert (abc.event(["A"]) | twin.event(["B"])).labels == ["A", "B"]

    def test_mask_out_of_range(self, abc):
        from anhomomorphic.algebra import Event

        with pytest.raises(AnhomomorphicError):
            Event(abc, 1 << 3)


class TestEnumerateEvents:
    def test_canonical_order(self, abc):
        events = [e.labels for e in enumerate_events(abc)]
        assert events == [
            [],
            ["A"],
            ["B"],
            ["C"],
            ["A", "B"],
            ["A", "C"],
            ["B", "C"],
            ["A", "B", "C"],
        ]

    def test_sort_key_matches_enumeration(self, abc):
        events = list(enumerate_events(abc))
        assert sorted(events, key=event_sort_key) == events

    def test_cap_checked_before_iteration(self):
        space = make_space([f"h{i}" for i in range(21)])
        with pytest.raises(CapExceededError):
            enumerate_events(space, cap=20)


class TestPartition:
    def test_blocks_keep_caller_order(self, abc):
        p = Partition.from_labels(abc, [["B"], ["C", "A"]])
        assert p.as_labels() == [["B"], ["A", "C"]]
        assert p.canonical().as_labels() == [["A", "C"], ["B"]]

    def test_overlap_rejected(self, abc):
        with pytest.raises(AnhomomorphicError, match="overlap"):
            Partition.from_labels(abc, [["A", "B"], ["B", "C"]])

    def test_missing_history_rejected(self, abc):
        with pytest.raises(AnhomomorphicError, match="cover"):
            Partition.from_labels(abc, [["A"], ["B"]])

    def test_empty_block_rejected(self, abc):
        with pytest.raises(AnhomomorphicError):
            Partition(abc, (abc.empty, abc.full))

    def test_discrete_and_trivial(self, abc):
        assert len(Partition.discrete(abc)) == 3
        assert Partition.trivial(abc).as_labels() == [["A", "B", "C"]]

    def test_block_of(self, abc):
        p = Partition.from_labels(abc, [["A", "C"], ["B"]])
        assert p.block_of(2).labels == ["A", "C"]
        with pytest.raises(AnhomomorphicError):
            p.block_of(5)


class TestSubalgebra:
    def test_events_of_two_blocks(self, abc):
        p = Partition.from_labels(abc, [["A", "C"], ["B"]])
        events = [e.labels for e in subalgebra_events(p)]
        assert events == [[], ["B"], ["A", "C"], ["A", "B", "C"]]

    def test_discrete_generates_everything(self, abc):
        assert subalgebra_events(Partition.discrete(abc)) == list(enumerate_events(abc))

    def test_refines(self, abc):
        discrete, trivial = Partition.discrete(abc), Partition.trivial(abc)
        middle = Partition.from_labels(abc, [["A", "C"], ["B"]])
        assert refines(discrete, middle)
        assert refines(middle, trivial)
        assert not refines(trivial, middle)

    def test_every_partition_refines_itself(self, abc):
        middle = Partition.from_labels(abc, [["A", "C"], ["B"]])
        assert refines(middle, middle)
        assert refines(Partition.discrete(abc), Partition.discrete(abc))

    @pytest.mark.parametrize(
        "blocks",
        [
            [["A"], ["B"], ["C"], ["D"]],
            [["A", "D"], ["B"], ["C"]],
            [["A", "B"], ["C", "D"]],
            [["A", "B", "C", "D"]],
        ],
    )
    def test_closed_under_addition_and_intersection(self, blocks):
        space = make_space(["A", "B", "C", "D"])
        events = subalgebra_events(Partition.from_labels(space, blocks))
        masks = {e.mask for e in events}
        assert len(events) == 2 ** len(blocks)
        for e in events:
            for f in events:
                assert (e ^ f).mask in masks
                assert (e & f).mask in masks


class TestBooleanRingLaws:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_laws_hold_for_every_triple(self, n):
        space = make_space([f"h{i}" for i in range(n)])
        events = list(enumerate_events(space))
        assert len({e.mask for e in events}) == 2**n
        for e in events:
            assert e ^ space.empty == e
            assert (e ^ e).is_empty
            assert e & space.full == e
            for f in events:
                assert e ^ f == f ^ e
                assert e & f == f & e
                for g in events:
                    assert (e ^ f) ^ g == e ^ (f ^ g)
                    assert e & (f ^ g) == (e & f) ^ (e & g)
