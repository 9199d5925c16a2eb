"""Weak-Cournot predictions and the strong-Cournot contradiction.

Weak Cournot: an event singled out in advance whose measure is at most epsilon is
predicted not to happen; if it happens anyway the model is falsified. `predict` is
stateless, so choosing the question before looking at the outcome is the caller's
responsibility.

Strong Cournot (no small event ever happens, pre-selected or not) fails as soon as a
family of small events covers Omega; `strong_cournot_cover` exhibits such covers.
"""

from __future__ import annotations

import enum
import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any, Protocol, runtime_checkable

from anhomomorphic.algebra import Event
from anhomomorphic.config import DEFAULT_TOLERANCE
from anhomomorphic.errors import AnhomomorphicError, SpaceMismatchError

logger = logging.getLogger(__name__)


@runtime_checkable
class MeasureSource(Protocol):
    def measure(self, event: Any) -> float: ...


class Outcome(enum.Enum):
    PRECLUDED = "Precluded"
    NOT_RULED_OUT = "NotRuledOut"


@dataclass(frozen=True)
class Verdict:
    """Weak-Cournot prediction for one pre-selected question."""

    event: Any
    measure: float
    epsilon: float
    outcome: Outcome

    @property
    def precluded(self) -> bool:
        return self.outcome is Outcome.PRECLUDED


@dataclass(frozen=True)
class NullCover:
    """Small pieces found among the candidates, and whether they exhaust Omega."""

    epsilon: float
    pieces: tuple[Event, ...]
    covered: bool


def _evaluate(source: MeasureSource | Callable[[Any], float], event: Any) -> float:
    if isinstance(source, MeasureSource):
        return float(source.measure(event))
    if callable(source):
        return float(source(event))
    raise AnhomomorphicError(f"{type(source).__name__} cannot evaluate measures")


def predict(
    source: MeasureSource | Callable[[Any], float],
    event: Any,
    epsilon: float,
) -> Verdict:
    """Precluded iff mu(event) <= epsilon.

    The event must have been chosen before the outcome was known; nothing here can check
    that.
    """
    if epsilon <= 0:
        raise AnhomomorphicError(f"prediction threshold must be positive, got {epsilon}")
    value = _evaluate(source, event)
    outcome = Outcome.PRECLUDED if value <= epsilon else Outcome.NOT_RULED_OUT
    logger.info("predict: mu=%.6g epsilon=%g -> %s", value, epsilon, outcome.value)
    return Verdict(event, value, epsilon, outcome)


def strong_cournot_cover(
    source: MeasureSource | Callable[[Any], float],
    epsilon: float,
    candidate_pieces: Sequence[Event],
    tolerance: float = DEFAULT_TOLERANCE,
) -> NullCover:
    """Keep the candidate pieces below threshold and test whether their union is Omega.

    epsilon = 0 keeps exact nulls (|mu| <= tolerance); otherwise mu < epsilon.
    """
    if epsilon < 0:
        raise AnhomomorphicError(f"epsilon must be nonnegative, got {epsilon}")
    if not candidate_pieces:
        return NullCover(epsilon, (), False)

    space = candidate_pieces[0].space
    pieces = []
    union = 0
    for piece in candidate_pieces:
        if piece.space is not space and piece.space != space:
            raise SpaceMismatchError("cover pieces live on different history spaces")
        value = _evaluate(source, piece)
        small = abs(value) <= tolerance if epsilon == 0 else value < epsilon
        if small:
            pieces.append(piece)
            union |= piece.mask
    covered = union == space.full_mask
    logger.info(
        "strong Cournot: %d of %d pieces below epsilon=%g, covered=%s",
        len(pieces),
        len(candidate_pieces),
        epsilon,
        covered,
    )
    return NullCover(epsilon, tuple(pieces), covered)
