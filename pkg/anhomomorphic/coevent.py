"""Multiplicative co-events, preclusion and the finest classical domain.

A multiplicative co-event is fixed by its dual A: phi_A(B) = 1 iff A is a subset of B. It
is preclusive when it denies every null event, i.e. when A lies inside no null event, and
primitive when A is inclusion-minimal among preclusive duals. Primitive duals are therefore
the minimal transversals of the complements of the maximal null events.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import networkx as nx
import numpy as np

from anhomomorphic.algebra import (
    Event,
    HistorySpace,
    Partition,
    check_cap,
    event_sort_key,
    mask_sort_key,
    subalgebra_events,
)
from anhomomorphic.config import (
    DEFAULT_CAP,
    DEFAULT_EXHAUSTIVE_HOMOMORPHISM_CAP,
    DEFAULT_TOLERANCE,
)
from anhomomorphic.errors import AnhomomorphicError, SpaceMismatchError, TotalPreclusionError
from anhomomorphic.measure import DecoherenceFunctional, measure_values

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Co-events
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoEvent:
    """Multiplicative co-event, identified with its (nonempty) dual."""

    dual: Event

    def __post_init__(self) -> None:
        if self.dual.is_empty:
            raise AnhomomorphicError("a co-event dual must be nonempty")

    @property
    def space(self) -> HistorySpace:
        return self.dual.space

    @property
    def is_classical(self) -> bool:
        """Singleton duals are the characteristic maps of single histories."""
        return len(self.dual) == 1

    def __call__(self, event: Event) -> int:
        return evaluate(self, event)

    def __repr__(self) -> str:
        return f"CoEvent({self.dual!r})"


def _check_space(space: HistorySpace, other: HistorySpace) -> None:
    if space is not other and space != other:
        raise SpaceMismatchError("co-event and event live on different history spaces")


def evaluate(c: CoEvent, event: Event) -> int:
    """phi(B): 1 iff the dual is contained in B."""
    _check_space(c.space, event.space)
    return int(c.dual.mask & ~event.mask == 0)


def affirms(c: CoEvent, event: Event) -> bool:
    return evaluate(c, event) == 1


def denies(c: CoEvent, event: Event) -> bool:
    return evaluate(c, event) == 0


def characteristic_coevent(space: HistorySpace, index: int) -> CoEvent:
    return CoEvent(space.singleton(index))


# ---------------------------------------------------------------------------
# Null families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NullFamily:
    """Inclusion-maximal null events at one threshold."""

    space: HistorySpace
    epsilon: float
    maximal_null_sets: tuple[Event, ...]

    def is_null_dominated(self, event: Event) -> bool:
        """True iff the event lies inside some maximal null set."""
        return any(event.mask & ~s.mask == 0 for s in self.maximal_null_sets)

    @property
    def omega_is_null(self) -> bool:
        return any(s.mask == self.space.full_mask for s in self.maximal_null_sets)


def null_indicator(values: np.ndarray, epsilon: float, tolerance: float) -> np.ndarray:
    """Exact nulls use |mu| <= tolerance; approximate nulls use mu < epsilon."""
    if epsilon < 0:
        raise AnhomomorphicError(f"epsilon must be nonnegative, got {epsilon}")
    if epsilon == 0:
        return np.abs(values) <= tolerance
    return values < epsilon


def _superset_closure(flags: np.ndarray, n: int) -> np.ndarray:
    """closure[m] is True iff some superset of m (m included) is flagged."""
    closure = flags.copy()
    for k in range(n):
        view = closure.reshape(-1, 2, 1 << k)
        view[:, 0, :] |= view[:, 1, :]
    return closure


def maximal_null_masks(values: np.ndarray, n: int, epsilon: float, tolerance: float) -> list[int]:
    null = null_indicator(values, epsilon, tolerance)
    closure = _superset_closure(null, n)
    has_null_strict_superset = np.zeros_like(null)
    for k in range(n):
        strict = has_null_strict_superset.reshape(-1, 2, 1 << k)
        strict[:, 0, :] |= closure.reshape(-1, 2, 1 << k)[:, 1, :]
    maximal = np.flatnonzero(null & ~has_null_strict_superset)
    return sorted((int(m) for m in maximal), key=lambda m: mask_sort_key(m, n))


def maximal_null_sets(
    d: DecoherenceFunctional,
    epsilon: float = 0.0,
    tolerance: float = DEFAULT_TOLERANCE,
    cap: int = DEFAULT_CAP,
) -> NullFamily:
    """Scan all 2^n events and keep the inclusion-maximal null ones.

    epsilon = 0 selects exact nulls (|mu| <= tolerance); epsilon > 0 selects mu < epsilon.
    The empty event is the sole member when nothing else qualifies.
    """
    values = measure_values(d, tolerance=tolerance, cap=cap)
    masks = maximal_null_masks(values, d.n, epsilon, tolerance)
    logger.debug("Null scan (epsilon=%g): %d maximal null sets", epsilon, len(masks))
    return NullFamily(d.space, epsilon, tuple(Event(d.space, m) for m in masks))


# ---------------------------------------------------------------------------
# Minimal transversals
# ---------------------------------------------------------------------------


def _minimize(masks: Iterable[int]) -> list[int]:
    """Drop every mask that contains another one."""
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda x: (x.bit_count(), x)):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def minimal_transversal_masks(edges: Sequence[int]) -> list[int]:
    """Berge-style update: extend, edge by edge, the transversals that miss the new edge."""
    if any(e == 0 for e in edges):
        raise AnhomomorphicError("the empty edge cannot be hit")
    transversals = [0]
    for edge in _minimize(edges):
        hit = [t for t in transversals if t & edge]
        grown = [t | b for t in transversals if not t & edge for b in _bits(edge)]
        transversals = _minimize(hit + grown)
    return transversals


def minimal_transversals(
    edges: Sequence[Event],
    space: HistorySpace | None = None,
) -> list[Event]:
    """All inclusion-minimal sets hitting every edge, in canonical order.

    An empty edge list has the single transversal {}; `space` is then required.
    """
    if space is None:
        if not edges:
            raise AnhomomorphicError("minimal_transversals needs a space when there are no edges")
        space = edges[0].space
    for e in edges:
        _check_space(space, e.space)
    masks = minimal_transversal_masks([e.mask for e in edges])
    return sorted((Event(space, m) for m in masks), key=event_sort_key)


# ---------------------------------------------------------------------------
# Primitive preclusive co-events
# ---------------------------------------------------------------------------


def _primitive_coevents(
    d: DecoherenceFunctional,
    epsilon: float,
    tolerance: float,
    cap: int,
) -> list[CoEvent]:
    family = maximal_null_sets(d, epsilon, tolerance=tolerance, cap=cap)
    if family.omega_is_null:
        raise TotalPreclusionError(
            f"Omega is null at epsilon={epsilon:g}; no preclusive co-event exists"
        )
    edges = [d.space.full_mask & ~s.mask for s in family.maximal_null_sets]
    duals = minimal_transversal_masks(edges)
    coevents = [CoEvent(Event(d.space, m)) for m in duals]
    coevents.sort(key=lambda c: event_sort_key(c.dual))
    logger.info(
        "%d primitive co-events from %d maximal null sets (epsilon=%g)",
        len(coevents),
        len(family.maximal_null_sets),
        epsilon,
    )
    return coevents


def enumerate_ppc(
    d: DecoherenceFunctional,
    tolerance: float = DEFAULT_TOLERANCE,
    cap: int = DEFAULT_CAP,
) -> list[CoEvent]:
    """Primitive co-events under exact preclusion (mu = 0 within tolerance)."""
    return _primitive_coevents(d, 0.0, tolerance, cap)


def enumerate_appc(
    d: DecoherenceFunctional,
    epsilon: float,
    tolerance: float = DEFAULT_TOLERANCE,
    cap: int = DEFAULT_CAP,
) -> list[CoEvent]:
    """Primitive co-events when every event with mu < epsilon counts as precluded."""
    if epsilon <= 0:
        raise AnhomomorphicError(f"approximate preclusion needs epsilon > 0, got {epsilon}")
    return _primitive_coevents(d, epsilon, tolerance, cap)


# ---------------------------------------------------------------------------
# Classical domain
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalDomain:
    partition: Partition

    @property
    def blocks(self) -> tuple[Event, ...]:
        return self.partition.blocks

    def events(self, cap: int = DEFAULT_CAP) -> list[Event]:
        return subalgebra_events(self.partition, cap=cap)


def classical_domain(coevents: Sequence[CoEvent]) -> ClassicalDomain:
    """Finest partition on whose subalgebra every given co-event is a homomorphism.

    Blocks are the connected components of the hypergraph whose hyperedges are the duals;
    histories in no dual stay singleton blocks.
    """
    if not coevents:
        raise AnhomomorphicError("classical_domain needs at least one co-event")
    space = coevents[0].space
    graph = nx.Graph()
    graph.add_nodes_from(range(space.n))
    for c in coevents:
        _check_space(space, c.space)
        nx.add_path(graph, c.dual.members)
    components = sorted(nx.connected_components(graph), key=min)
    partition = Partition(space, tuple(space.from_indices(comp) for comp in components))
    logger.debug("Classical domain: %d blocks over %d histories", len(partition), space.n)
    return ClassicalDomain(partition)


def is_homomorphism_on(
    c: CoEvent,
    p: Partition,
    method: str = "block",
    cap: int = DEFAULT_EXHAUSTIVE_HOMOMORPHISM_CAP,
) -> bool:
    """Whether phi restricted to the subalgebra generated by p is a Boolean homomorphism.

    method="block" uses the equivalent test "the dual lies inside one block";
    method="exhaustive" checks additivity mod 2 and multiplicativity on every pair of
    subalgebra events (2^k blocks, k <= cap).
    """
    _check_space(c.space, p.space)
    if method == "block":
        return any(c.dual.mask & ~b.mask == 0 for b in p.blocks)
    if method != "exhaustive":
        raise AnhomomorphicError(f"unknown homomorphism test {method!r}")

    check_cap("is_homomorphism_on", len(p.blocks), cap)
    masks = [e.mask for e in subalgebra_events(p, cap=cap)]
    dual = c.dual.mask
    phi = {m: int(dual & ~m == 0) for m in masks}
    for x in masks:
        for y in masks:
            if phi[x ^ y] != (phi[x] + phi[y]) % 2:
                return False
            if phi[x & y] != phi[x] * phi[y]:
                return False
    return True


def find_boolean_anomalies(coevents: Sequence[CoEvent], question: Partition) -> list[CoEvent]:
    """Co-events that answer NO to every cell of an exhaustive question."""
    anomalous = []
    for c in coevents:
        _check_space(c.space, question.space)
        if not any(evaluate(c, cell) for cell in question.blocks):
            anomalous.append(c)
    logger.debug("%d of %d co-events are Boolean anomalies", len(anomalous), len(coevents))
    return anomalous
