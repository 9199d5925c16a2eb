"""Repeated-trial product measures, computed without materializing the product space.

For N independent repetitions the product functional is
D_N((h_1..h_N), (h'_1..h'_N)) = prod_k D(h_k, h'_k). Product events factorize, and when the
cells of a partition do not interfere with each other, an occupation event ("c_j trials land
in cell j") is a disjoint union of arrangements whose measures simply add up.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import product
from typing import Any

import numpy as np

from anhomomorphic.algebra import Event, HistorySpace, Partition, make_space
from anhomomorphic.config import DEFAULT_MATERIALIZE_CAP, DEFAULT_TOLERANCE
from anhomomorphic.errors import (
    AnhomomorphicError,
    CapExceededError,
    InterferenceError,
    SpaceMismatchError,
)
from anhomomorphic.measure import DecoherenceFunctional, classical_diagonal, mu_event

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Repeated trials and their events
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductEvent:
    """One base event per trial."""

    factors: tuple[Event, ...]


@dataclass(frozen=True)
class OccupationEvent:
    """Exactly counts[j] trials land in cell j."""

    cells: Partition
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if len(counts) != len(self.cells):
            raise AnhomomorphicError(
                f"{len(counts)} counts for a partition of {len(self.cells)} cells"
            )
        if any(c < 0 for c in counts):
            raise AnhomomorphicError(f"occupation counts must be nonnegative, got {counts}")

    @property
    def trials(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class OccupationUnion:
    """Union of occupation events over the same cells with distinct count vectors."""

    members: tuple[OccupationEvent, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise AnhomomorphicError("an occupation union needs at least one member")
        cells = self.members[0].cells
        if any(m.cells != cells for m in self.members):
            raise AnhomomorphicError("occupation union members must share their cells")
        if len({m.counts for m in self.members}) != len(self.members):
            raise AnhomomorphicError("occupation union members must have distinct counts")


@dataclass(frozen=True)
class OccupationMeasure:
    arrangements: int
    per_arrangement: float
    total: float


@dataclass(frozen=True, eq=False)
class RepeatedTrial:
    """N independent repetitions of a base system."""

    base: DecoherenceFunctional
    trials: int

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise AnhomomorphicError(f"a repeated trial needs N >= 1, got {self.trials}")

    def measure(self, event: Any) -> float:
        if isinstance(event, ProductEvent):
            return product_event_measure(self, event.factors)
        if isinstance(event, OccupationEvent):
            return occupation_event_measure(self, event).total
        if isinstance(event, OccupationUnion):
            return sum(m.total for m in occupation_union_measure(self, event))
        raise AnhomomorphicError(f"cannot measure {type(event).__name__} on a repeated trial")


def multinomial(counts: Sequence[int]) -> int:
    """N! / prod(c_j!) as a product of binomials."""
    remaining = sum(counts)
    total = 1
    for c in counts:
        total *= math.comb(remaining, c)
        remaining -= c
    return total


def occupation_vectors(cells: int, total: int) -> Iterator[tuple[int, ...]]:
    """Every tuple of `cells` nonnegative counts summing to `total`."""
    if cells == 1:
        yield (total,)
        return
    for value in range(total + 1):
        for rest in occupation_vectors(cells - 1, total - value):
            yield (value,) + rest


def product_event_measure(t: RepeatedTrial, factors: Sequence[Event]) -> float:
    """prod_k mu(A_k), exact for product events under the product functional."""
    if len(factors) != t.trials:
        raise AnhomomorphicError(f"{len(factors)} factors for a {t.trials}-trial product")
    return math.prod(mu_event(t.base, a) for a in factors)


def _check_interference_free(t: RepeatedTrial, cells: Partition, tolerance: float) -> None:
    m = t.base.matrix
    blocks = [b.members for b in cells.blocks]
    for i, ci in enumerate(blocks):
        for j, cj in enumerate(blocks):
            if i == j:
                continue
            worst = float(np.abs(m[np.ix_(ci, cj)]).max())
            if worst > tolerance:
                raise InterferenceError(
                    f"cells {cells.blocks[i]!r} and {cells.blocks[j]!r} interfere "
                    f"(|D| = {worst:.3g}); arrangement measures would not add up"
                )


def occupation_event_measure(
    t: RepeatedTrial,
    o: OccupationEvent,
    tolerance: float = DEFAULT_TOLERANCE,
) -> OccupationMeasure:
    """multinomial(N; counts) * prod_j mu(cell_j)^count_j for interference-free cells."""
    if o.cells.space is not t.base.space and o.cells.space != t.base.space:
        raise SpaceMismatchError("occupation cells do not partition the base space")
    if o.trials != t.trials:
        raise AnhomomorphicError(f"counts sum to {o.trials}, the trial has N={t.trials}")
    _check_interference_free(t, o.cells, tolerance)

    arrangements = multinomial(o.counts)
    per = math.prod(
        mu_event(t.base, cell, tolerance) ** c for cell, c in zip(o.cells.blocks, o.counts)
    )
    logger.debug("occupation %s: %d arrangements x %.6g", o.counts, arrangements, per)
    return OccupationMeasure(arrangements, per, arrangements * per)


def occupation_union_measure(
    t: RepeatedTrial,
    u: OccupationUnion,
    tolerance: float = DEFAULT_TOLERANCE,
) -> tuple[OccupationMeasure, ...]:
    """Per-member measures; the union's measure is their sum."""
    return tuple(occupation_event_measure(t, m, tolerance) for m in u.members)


# ---------------------------------------------------------------------------
# Coin
# ---------------------------------------------------------------------------


def coin_model(
    tosses: int,
    bias: float = 0.5,
    cap: int = DEFAULT_MATERIALIZE_CAP,
) -> DecoherenceFunctional:
    """Diagonal functional over the 2^N toss sequences ('h'/'t' strings, heads first)."""
    if not 0.0 < bias < 1.0:
        raise AnhomomorphicError(f"coin bias must lie in (0, 1), got {bias}")
    if tosses < 1:
        raise AnhomomorphicError(f"need at least one toss, got {tosses}")
    if 2**tosses > cap:
        raise CapExceededError("coin_model histories", 2**tosses, cap)
    labels = ["".join(seq) for seq in product("ht", repeat=tosses)]
    weights = [bias ** s.count("h") * (1.0 - bias) ** s.count("t") for s in labels]
    return classical_diagonal(make_space(labels), weights)


def toss_question(space: HistorySpace, toss: int) -> Partition:
    """Two-cell question "heads or tails at this toss" (0-based)."""
    heads = [lbl for lbl in space.labels if lbl[toss] == "h"]
    tails = [lbl for lbl in space.labels if lbl[toss] == "t"]
    return Partition.from_labels(space, [heads, tails])


def heads_count_event(space: HistorySpace, low: int, high: int) -> Event:
    return space.event(lbl for lbl in space.labels if low <= lbl.count("h") <= high)


def sequence_event(space: HistorySpace, sequence: str) -> Event:
    return space.event([sequence])


def binomial_tail_measure(
    tosses: int,
    bias: float,
    low: int = 0,
    high: int | None = None,
) -> float:
    """Measure of "between low and high heads (inclusive)" without enumerating sequences."""
    high = tosses if high is None else high
    low, high = max(low, 0), min(high, tosses)
    return sum(
        math.comb(tosses, k) * bias**k * (1.0 - bias) ** (tosses - k)
        for k in range(low, high + 1)
    )


# ---------------------------------------------------------------------------
# Double slit with a five-slot screen
# ---------------------------------------------------------------------------

SLOTS: tuple[int, ...] = (0, 2, -2, 1, -1)
BRIGHT_SLOTS = frozenset({0, 2, -2})
SINGLE_PATH_MEASURE = 0.1
BRIGHT_SLOT_MEASURE = 0.3
DARK_SLOT_MEASURE = 0.05


def slot_label(slit: int, slot: int) -> str:
    return f"(s{slit},{slot:+d})" if slot else f"(s{slit},0)"


def double_slit_model() -> DecoherenceFunctional:
    """Two slits, five slots; paths through different slots never interfere.

    Each path has measure 0.1. Same-slot off-diagonal terms x solve 0.2 + 2x = 0.3 on bright
    slots (x = 0.05) and 0.2 + 2x = 0.05 on dark ones (x = -0.075).
    """
    labels = [slot_label(slit, slot) for slit in (1, 2) for slot in SLOTS]
    k = len(SLOTS)
    mat = np.eye(2 * k) * SINGLE_PATH_MEASURE
    for i, slot in enumerate(SLOTS):
        target = BRIGHT_SLOT_MEASURE if slot in BRIGHT_SLOTS else DARK_SLOT_MEASURE
        off = (target - 2 * SINGLE_PATH_MEASURE) / 2.0
        mat[i, i + k] = mat[i + k, i] = off
    return DecoherenceFunctional(make_space(labels), mat)


def slot_cells(space: HistorySpace) -> Partition:
    """One cell per slot (both slits), in slot order 0, +2, -2, +1, -1."""
    return Partition.from_labels(
        space, [[slot_label(1, slot), slot_label(2, slot)] for slot in SLOTS]
    )


def uniform_distribution_event(cells: Partition, particles: int = 10) -> OccupationEvent:
    if particles % len(cells):
        raise AnhomomorphicError(
            f"{particles} particles cannot spread evenly over {len(cells)} slots"
        )
    return OccupationEvent(cells, (particles // len(cells),) * len(cells))


def pattern_distribution_event(cells: Partition) -> OccupationUnion:
    """Three particles on each bright slot and one on either dark slot (ten particles)."""
    return OccupationUnion(
        (OccupationEvent(cells, (3, 3, 3, 1, 0)), OccupationEvent(cells, (3, 3, 3, 0, 1)))
    )


def detailed_pattern_question(cells: Partition) -> ProductEvent:
    """One specific particle-by-particle arrangement of the pattern."""
    by_slot = dict(zip(SLOTS, cells.blocks))
    order = [0, 0, 0, 2, 2, 2, -2, -2, -2, 1]
    return ProductEvent(tuple(by_slot[s] for s in order))
