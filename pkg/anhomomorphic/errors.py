"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class AnhomomorphicError(ValueError):
    """Base class for every error raised by the package."""


class SpaceMismatchError(AnhomomorphicError):
    """Two events or partitions live on different history spaces."""


class CapExceededError(AnhomomorphicError):
    """An exhaustive scan was requested on a space larger than the configured cap."""

    def __init__(self, what: str, size: int, cap: int) -> None:
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class DimensionMismatchError(AnhomomorphicError):
    """A matrix or vector does not match the history count."""


class ModelValidationError(AnhomomorphicError):
    """A decoherence functional or measure table breaks one of its axioms."""


class HermiticityError(ModelValidationError):
    pass


class NormalizationError(ModelValidationError):
    pass


class SumRuleViolationError(ModelValidationError):
    pass


class InterferenceError(ModelValidationError):
    """Occupation cells interfere, so arrangement measures are not additive."""


class TotalPreclusionError(AnhomomorphicError):
    """Omega itself is null: no preclusive co-event exists."""


class UnknownEventError(AnhomomorphicError):
    pass


class ExperimentParseError(AnhomomorphicError):
    """Malformed experiment file; carries the offending field and source position."""

    def __init__(
        self,
        message: str,
        field: str | None = None,
        line: int | None = None,
        column: int | None = None,
    ) -> None:
        where = []
        if line is not None:
            where.append(f"line {line}" + (f", column {column}" if column is not None else ""))
        if field is not None:
            where.append(f"field '{field}'")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)
        self.field = field
        self.line = line
        self.column = column
