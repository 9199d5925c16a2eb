"""Decoherence functionals, the quantum measure and its axioms.

A DecoherenceFunctional stores D(h_i, h_j) on history pairs; everything on events follows by
bi-additive extension, D(A, B) = sum over h in A, h' in B of D(h, h'), and the quantum
measure is mu(A) = D(A, A). Unlike a probability measure, mu is not additive on disjoint
events; what survives is the three-set sum rule checked here.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from anhomomorphic.algebra import Event, HistorySpace, check_cap
from anhomomorphic.config import DEFAULT_CAP, DEFAULT_SUM_RULE_CAP, DEFAULT_TOLERANCE
from anhomomorphic.errors import (
    AnhomomorphicError,
    DimensionMismatchError,
    HermiticityError,
    ModelValidationError,
    NormalizationError,
    SpaceMismatchError,
    SumRuleViolationError,
)

logger = logging.getLogger(__name__)

_CHUNK = 1 << 16


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DecoherenceFunctional:
    """Complex n x n matrix D(h_i, h_j) over a history space. Read-only after construction."""

    space: HistorySpace
    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=complex)
        n = self.space.n
        if mat.shape != (n, n):
            raise DimensionMismatchError(
                f"decoherence matrix has shape {mat.shape}, expected ({n}, {n})"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def n(self) -> int:
        return self.space.n

    def functional(self, a: Event, b: Event) -> complex:
        """D(A, B), the bi-additive extension to events."""
        _check_space(self.space, a)
        _check_space(self.space, b)
        if a.is_empty or b.is_empty:
            return 0j
        return complex(self.matrix[np.ix_(a.members, b.members)].sum())

    def mu(self, event: Event, tolerance: float = DEFAULT_TOLERANCE) -> float:
        return mu_event(self, event, tolerance)

    def measure(self, event: Event) -> float:
        return mu_event(self, event)


@dataclass(frozen=True, eq=False)
class MeasureTable:
    """Quantum measure of every event, indexed by event bit mask."""

    space: HistorySpace
    values: np.ndarray
    tolerance: float = field(default=DEFAULT_TOLERANCE)

    def __post_init__(self) -> None:
        vals = np.array(self.values, dtype=float)
        if vals.shape != (1 << self.space.n,):
            raise DimensionMismatchError(
                f"measure table has {vals.size} entries, expected {1 << self.space.n}"
            )
        tol = self.tolerance
        if abs(vals[0]) > tol:
            raise NormalizationError(f"mu(empty) = {vals[0]!r}, expected 0")
        if abs(vals[-1] - 1.0) > tol:
            raise NormalizationError(f"mu(Omega) = {vals[-1]!r}, expected 1")
        worst = int(np.argmin(vals))
        if vals[worst] < -tol:
            raise ModelValidationError(
                f"negative measure {vals[worst]!r} on {Event(self.space, worst)!r}"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __getitem__(self, event: Event) -> float:
        _check_space(self.space, event)
        return float(self.values[event.mask])

    @classmethod
    def from_decoherence(
        cls,
        d: DecoherenceFunctional,
        tolerance: float = DEFAULT_TOLERANCE,
        cap: int = DEFAULT_CAP,
    ) -> MeasureTable:
        return cls(d.space, measure_values(d, tolerance=tolerance, cap=cap), tolerance)

    @classmethod
    def from_mapping(
        cls,
        space: HistorySpace,
        values: Mapping[Event, float],
        tolerance: float = DEFAULT_TOLERANCE,
        cap: int = DEFAULT_CAP,
    ) -> MeasureTable:
        """Build a table from an explicit {event: value} map covering all 2^n events."""
        check_cap("measure table", space.n, cap)
        table = np.full(1 << space.n, np.nan)
        for event, value in values.items():
            _check_space(space, event)
            table[event.mask] = value
        if np.isnan(table).any():
            missing = Event(space, int(np.flatnonzero(np.isnan(table))[0]))
            raise AnhomomorphicError(f"measure table has no value for {missing!r}")
        return cls(space, table, tolerance)

    def with_value(self, event: Event, value: float) -> MeasureTable:
        """Copy of the table with one entry replaced."""
        _check_space(self.space, event)
        vals = self.values.copy()
        vals[event.mask] = value
        return MeasureTable(self.space, vals, self.tolerance)


@dataclass(frozen=True)
class Check:
    """One validation check; a skipped check never passes."""

    name: str
    passed: bool
    violation: float
    partial: bool = False
    skipped: bool = False


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def __contains__(self, name: object) -> bool:
        return any(c.name == name for c in self.checks)

    def merged(self, other: ValidationReport) -> ValidationReport:
        return ValidationReport(self.checks + other.checks)


def _check_space(space: HistorySpace, event: Event) -> None:
    if event.space is not space and event.space != space:
        raise SpaceMismatchError(f"event {event!r} does not live on this history space")


# ---------------------------------------------------------------------------
# Measure evaluation
# ---------------------------------------------------------------------------


def _indicators(masks: np.ndarray, n: int) -> np.ndarray:
    return ((masks[:, None] >> np.arange(n)) & 1).astype(float)


def _quadratic_forms(matrix: np.ndarray, masks: np.ndarray) -> np.ndarray:
    """x^T M x for the indicator vector x of every mask (complex)."""
    out = np.empty(masks.size, dtype=complex)
    n = matrix.shape[0]
    for start in range(0, masks.size, _CHUNK):
        x = _indicators(masks[start : start + _CHUNK], n)
        out[start : start + _CHUNK] = ((x @ matrix) * x).sum(axis=1)
    return out


def measure_values(
    d: DecoherenceFunctional,
    tolerance: float = DEFAULT_TOLERANCE,
    cap: int = DEFAULT_CAP,
) -> np.ndarray:
    """mu of all 2^n events as a float array indexed by bit mask."""
    check_cap("measure scan", d.n, cap)
    raw = _quadratic_forms(d.matrix, np.arange(1 << d.n, dtype=np.int64))
    residue = float(np.abs(raw.imag).max())
    if residue > tolerance:
        worst = int(np.argmax(np.abs(raw.imag)))
        raise HermiticityError(
            f"imaginary residue {residue:.3g} on {Event(d.space, worst)!r} exceeds tolerance"
        )
    logger.debug("Measure scan over %d events", raw.size)
    return raw.real.copy()


def mu_event(d: DecoherenceFunctional, event: Event, tolerance: float = DEFAULT_TOLERANCE) -> float:
    """mu(A) = D(A, A); an imaginary residue above tolerance means D is not Hermitian."""
    value = d.functional(event, event)
    if abs(value.imag) > tolerance:
        raise HermiticityError(f"mu({event!r}) has imaginary part {value.imag:.3g}")
    return float(value.real)


def interference(d: DecoherenceFunctional, a: Event, b: Event) -> float:
    """mu(A u B) - mu(A) - mu(B) = 2 Re D(A, B) for disjoint A, B."""
    if a.mask & b.mask:
        raise AnhomomorphicError(f"interference needs disjoint events, got {a!r} and {b!r}")
    return 2.0 * d.functional(a, b).real


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def from_amplitudes(
    space: HistorySpace,
    amplitudes: Sequence[complex] | np.ndarray,
    tolerance: float = DEFAULT_TOLERANCE,
) -> DecoherenceFunctional:
    """Rank-one functional D(i, j) = a_i conj(a_j), so that mu(A) = |sum_{h in A} a_h|^2."""
    a = np.asarray(amplitudes, dtype=complex)
    if a.shape != (space.n,):
        raise DimensionMismatchError(f"{a.size} amplitudes for {space.n} histories")
    total = abs(a.sum()) ** 2
    if abs(total - 1.0) > tolerance:
        raise NormalizationError(f"|sum of amplitudes|^2 = {total:.6g}, expected 1")
    return DecoherenceFunctional(space, np.outer(a, a.conj()))


def classical_diagonal(
    space: HistorySpace,
    weights: Sequence[float] | np.ndarray,
    tolerance: float = DEFAULT_TOLERANCE,
) -> DecoherenceFunctional:
    """Diagonal functional of a classical probability measure."""
    w = np.asarray(weights, dtype=float)
    if w.shape != (space.n,):
        raise DimensionMismatchError(f"{w.size} weights for {space.n} histories")
    if (w < -tolerance).any():
        raise ModelValidationError("classical weights must be nonnegative")
    if abs(w.sum() - 1.0) > tolerance:
        raise NormalizationError(f"classical weights sum to {w.sum():.6g}, expected 1")
    return DecoherenceFunctional(space, np.diag(w).astype(complex))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_decoherence(
    d: DecoherenceFunctional,
    tolerance: float = DEFAULT_TOLERANCE,
    cap: int = DEFAULT_CAP,
    sum_rule: bool = False,
    sum_rule_cap: int = DEFAULT_SUM_RULE_CAP,
) -> ValidationReport:
    """Check hermiticity, normalization and weak positivity (and optionally the sum rule).

    Weak positivity is scanned over all 2^n events when n <= cap; otherwise only the
    singletons and Omega are checked and the check is flagged partial.
    """
    m = d.matrix
    if m.shape != (d.n, d.n):
        raise DimensionMismatchError(f"matrix shape {m.shape} does not match {d.n} histories")

    herm = float(np.abs(m - m.conj().T).max())
    norm = float(abs(m.sum() - 1.0))

    partial = d.n > cap
    if partial:
        # 2^n scans stop at the cap
        lowest = float(min(m.diagonal().real.min(), m.sum().real))
    else:
        lowest = float(_quadratic_forms(m, np.arange(1 << d.n, dtype=np.int64)).real.min())
    positivity = max(0.0, -lowest)

    checks = [
        Check("hermiticity", herm <= tolerance, herm),
        Check("normalization", norm <= tolerance, norm),
        Check("weak_positivity", lowest >= -tolerance, positivity, partial=partial),
    ]
    if sum_rule and d.n > sum_rule_cap:
        logger.warning("Sum rule skipped: %d histories exceeds cap %d", d.n, sum_rule_cap)
    elif sum_rule:
        checks.append(_guarded_sum_rule(d, herm, tolerance, sum_rule_cap))

    report = ValidationReport(tuple(checks))
    for c in report.failures:
        logger.info("Validation failed: %s (violation %.3g)", c.name, c.violation)
    return report


def _guarded_sum_rule(
    d: DecoherenceFunctional, herm: float, tolerance: float, cap: int
) -> Check:
    """Sum rule check, or a failed skipped one when mu is not real."""
    if herm <= tolerance:
        try:
            return check_sum_rule(d, tolerance=tolerance, cap=cap)["sum_rule"]
        except HermiticityError as exc:
            logger.warning("Sum rule skipped: %s", exc)
    else:
        logger.warning("Sum rule skipped: functional is not Hermitian")
    # carries the hermiticity violation that blocked the scan
    return Check("sum_rule", False, herm, skipped=True)


def _sum_rule_violation(values: np.ndarray, n: int) -> float:
    """Largest |mu(AuBuC) - mu(AuB) - mu(AuC) - mu(BuC) + mu(A) + mu(B) + mu(C)|.

    Each history is assigned to A, B, C or none, so the scan covers all 4^n triples of
    pairwise disjoint events.
    """
    worst = 0.0
    # chunk over the assignment of the top histories to bound memory
    low = min(n, 8)
    idx = np.arange(4**low, dtype=np.int64)
    base_a = np.zeros(idx.size, dtype=np.int64)
    base_b = np.zeros(idx.size, dtype=np.int64)
    base_c = np.zeros(idx.size, dtype=np.int64)
    for k in range(low):
        digit = (idx >> (2 * k)) & 3
        base_a |= np.where(digit == 1, 1 << k, 0)
        base_b |= np.where(digit == 2, 1 << k, 0)
        base_c |= np.where(digit == 3, 1 << k, 0)

    for high in range(4 ** (n - low)):
        a, b, c = base_a.copy(), base_b.copy(), base_c.copy()
        for k in range(n - low):
            digit = (high >> (2 * k)) & 3
            if digit:
                target = (a, b, c)[digit - 1]
                target |= 1 << (low + k)
        v = (
            values[a | b | c]
            - values[a | b]
            - values[a | c]
            - values[b | c]
            + values[a]
            + values[b]
            + values[c]
        )
        worst = max(worst, float(np.abs(v).max()))
    return worst


def check_sum_rule(
    d: DecoherenceFunctional,
    tolerance: float = DEFAULT_TOLERANCE,
    cap: int = DEFAULT_SUM_RULE_CAP,
) -> ValidationReport:
    """Three-set sum rule on every triple of pairwise disjoint events."""
    check_cap("check_sum_rule", d.n, cap)
    values = measure_values(d, tolerance=tolerance, cap=d.n)
    violation = _sum_rule_violation(values, d.n)
    logger.debug("Sum rule violation %.3g over %d histories", violation, d.n)
    return ValidationReport((Check("sum_rule", violation <= tolerance, violation),))


def check_sum_rule_table(
    m: MeasureTable,
    tolerance: float | None = None,
    cap: int = DEFAULT_SUM_RULE_CAP,
) -> ValidationReport:
    """Sum rule on an explicit measure table."""
    check_cap("check_sum_rule_table", m.space.n, cap)
    tol = m.tolerance if tolerance is None else tolerance
    violation = _sum_rule_violation(m.values, m.space.n)
    return ValidationReport((Check("sum_rule", violation <= tol, violation),))


def measure_to_decoherence(
    m: MeasureTable,
    tolerance: float | None = None,
) -> DecoherenceFunctional:
    """Real symmetric functional reproducing a sum-rule-satisfying measure table.

    D(i, i) = mu({h_i}) and D(i, j) = (mu({h_i, h_j}) - mu({h_i}) - mu({h_j})) / 2. The result
    is re-evaluated on every event; any mismatch means no bi-additive realization exists.
    """
    tol = m.tolerance if tolerance is None else tolerance
    n = m.space.n
    single = np.array([m.values[1 << i] for i in range(n)])
    mat = np.diag(single)
    for i in range(n):
        for j in range(i + 1, n):
            off = (m.values[(1 << i) | (1 << j)] - single[i] - single[j]) / 2.0
            mat[i, j] = mat[j, i] = off
    d = DecoherenceFunctional(m.space, mat)

    rebuilt = measure_values(d, tolerance=tol, cap=n)
    deviation = np.abs(rebuilt - m.values)
    worst = int(np.argmax(deviation))
    if deviation[worst] > tol:
        raise SumRuleViolationError(
            f"no decoherence functional reproduces the table: mu({Event(m.space, worst)!r}) "
            f"= {m.values[worst]:.6g} but the pairwise realization gives {rebuilt[worst]:.6g}"
        )
    return d

