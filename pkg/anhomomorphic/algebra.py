"""Finite history spaces, the Boolean event algebra, partitions and their subalgebras.

Events are bit masks over the ordered labels of a HistorySpace: bit i set means history i
belongs to the event. Intersection plays the role of multiplication and symmetric
difference the role of addition.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import combinations

from anhomomorphic.config import DEFAULT_CAP
from anhomomorphic.errors import (
    AnhomomorphicError,
    CapExceededError,
    SpaceMismatchError,
    UnknownEventError,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# History space and events
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HistorySpace:
    """Ordered, labelled set of fine-grained histories."""

    labels: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        if not labels:
            raise AnhomomorphicError("history space needs at least one label")
        if len(set(labels)) != len(labels):
            dupes = sorted({lbl for lbl in labels if labels.count(lbl) > 1})
            raise AnhomomorphicError(f"duplicate history labels: {dupes}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_index", {lbl: i for i, lbl in enumerate(labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def empty(self) -> Event:
        return Event(self, 0)

    @property
    def full(self) -> Event:
        return Event(self, self.full_mask)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownEventError(f"unknown history label {label!r}") from None

    def singleton(self, index: int) -> Event:
        return Event(self, 1 << index)

    def event(self, labels: Iterable[str]) -> Event:
        """Event made of the named histories."""
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return Event(self, mask)

    def from_indices(self, indices: Iterable[int]) -> Event:
        mask = 0
        for i in indices:
            mask |= 1 << i
        return Event(self, mask)


@dataclass(frozen=True)
class Event:
    """Subset of a history space, stored as a bit mask."""

    space: HistorySpace
    mask: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask > self.space.full_mask:
            raise AnhomomorphicError(
                f"mask {self.mask:#x} has members outside a space of {self.space.n} histories"
            )

    @property
    def members(self) -> tuple[int, ...]:
        out = []
        mask = self.mask
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return tuple(out)

    @property
    def labels(self) -> list[str]:
        return [self.space.labels[i] for i in self.members]

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, index: object) -> bool:
        return isinstance(index, int) and 0 <= index < self.space.n and bool(self.mask >> index & 1)

    def __and__(self, other: Event) -> Event:
        return intersect(self, other)

    def __or__(self, other: Event) -> Event:
        return union(self, other)

    def __xor__(self, other: Event) -> Event:
        return symmetric_difference(self, other)

    def __invert__(self) -> Event:
        return complement(self)

    def __le__(self, other: Event) -> bool:
        return is_subset(self, other)

    def __repr__(self) -> str:
        return "{" + ",".join(self.labels) + "}"


def make_space(labels: Sequence[str]) -> HistorySpace:
    """Build a history space; label order is preserved."""
    return HistorySpace(tuple(labels))


def event_sort_key(event: Event) -> tuple[int, tuple[int, ...]]:
    """Canonical order: by size, then lexicographically by member indices."""
    return len(event), event.members


def mask_sort_key(mask: int, n: int) -> tuple[int, tuple[int, ...]]:
    return mask.bit_count(), tuple(i for i in range(n) if mask >> i & 1)


def check_cap(what: str, n: int, cap: int) -> None:
    if n > cap:
        raise CapExceededError(what, n, cap)


# ---------------------------------------------------------------------------
# Set operations
# ---------------------------------------------------------------------------


def _same_space(a: Event, b: Event) -> HistorySpace:
    if a.space is not b.space and a.space != b.space:
        raise SpaceMismatchError(f"events {a!r} and {b!r} live on different history spaces")
    return a.space


def intersect(e: Event, f: Event) -> Event:
    return Event(_same_space(e, f), e.mask & f.mask)


def union(e: Event, f: Event) -> Event:
    return Event(_same_space(e, f), e.mask | f.mask)


def symmetric_difference(e: Event, f: Event) -> Event:
    return Event(_same_space(e, f), e.mask ^ f.mask)


def complement(e: Event) -> Event:
    return Event(e.space, e.space.full_mask & ~e.mask)


def is_subset(e: Event, f: Event) -> bool:
    _same_space(e, f)
    return e.mask & ~f.mask == 0


def enumerate_events(space: HistorySpace, cap: int = DEFAULT_CAP) -> Iterator[Event]:
    """Yield all 2^n events in canonical order (size, then lexicographic)."""
    check_cap("enumerate_events", space.n, cap)
    return _iter_events(space)


def _iter_events(space: HistorySpace) -> Iterator[Event]:
    for size in range(space.n + 1):
        for members in combinations(range(space.n), size):
            yield space.from_indices(members)


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """Disjoint, exhaustive, nonempty blocks; blocks keep the order they were given in."""

    space: HistorySpace
    blocks: tuple[Event, ...]

    def __post_init__(self) -> None:
        blocks = tuple(self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen = 0
        for block in blocks:
            if block.space is not self.space and block.space != self.space:
                raise SpaceMismatchError("partition block lives on a different history space")
            if block.is_empty:
                raise AnhomomorphicError("partition blocks must be nonempty")
            if seen & block.mask:
                raise AnhomomorphicError(f"partition blocks overlap at {block!r}")
            seen |= block.mask
        if seen != self.space.full_mask:
            missing = Event(self.space, self.space.full_mask & ~seen)
            raise AnhomomorphicError(f"partition does not cover the space, missing {missing!r}")

    @classmethod
    def discrete(cls, space: HistorySpace) -> Partition:
        return cls(space, tuple(space.singleton(i) for i in range(space.n)))

    @classmethod
    def trivial(cls, space: HistorySpace) -> Partition:
        return cls(space, (space.full,))

    @classmethod
    def from_labels(cls, space: HistorySpace, blocks: Iterable[Iterable[str]]) -> Partition:
        return cls(space, tuple(space.event(b) for b in blocks))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.blocks)

    def block_of(self, index: int) -> Event:
        for block in self.blocks:
            if block.mask >> index & 1:
                return block
        raise AnhomomorphicError(f"history index {index} is outside the space")

    def canonical(self) -> Partition:
        """Same partition with blocks ordered by their smallest member."""
        return Partition(self.space, tuple(sorted(self.blocks, key=lambda b: b.members[0])))

    def as_labels(self) -> list[list[str]]:
        return [b.labels for b in self.blocks]


def subalgebra_events(p: Partition, cap: int = DEFAULT_CAP) -> list[Event]:
    """All 2^k unions of blocks, in canonical order."""
    k = len(p.blocks)
    check_cap("subalgebra_events", k, cap)
    masks = [b.mask for b in p.blocks]
    events = []
    for choice in range(1 << k):
        mask = 0
        for j in range(k):
            if choice >> j & 1:
                mask |= masks[j]
        events.append(Event(p.space, mask))
    return sorted(events, key=event_sort_key)


def refines(p: Partition, q: Partition) -> bool:
    """True iff every block of p lies inside some block of q."""
    if p.space is not q.space and p.space != q.space:
        raise SpaceMismatchError("partitions live on different history spaces")
    return all(any(b.mask & ~c.mask == 0 for c in q.blocks) for b in p.blocks)
