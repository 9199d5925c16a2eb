"""Experiment files (JSON) and machine-readable reports.

Experiment file schema::

    {
      "name": "three-slit",
      "histories": ["A", "B", "C"],
      "amplitudes":  {"re": [1, -1, 1], "im": [0, 0, 0]},        # either this ...
      "decoherence": {"re": [[...], ...], "im": [[...], ...]},    # ... or this
      "events": {"AC": ["A", "C"]},
      "options": {"epsilon": 0.001, "tolerance": 1e-9, "cap": 20}
    }

`im` may be omitted (all zeros); it is always written back out.
"""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from anhomomorphic.algebra import Event, HistorySpace, make_space
from anhomomorphic.config import DEFAULT_CAP, DEFAULT_EPSILON, DEFAULT_TOLERANCE
from anhomomorphic.errors import ExperimentParseError, UnknownEventError
from anhomomorphic.measure import DecoherenceFunctional, from_amplitudes

logger = logging.getLogger(__name__)

_TOP_LEVEL = {"name", "histories", "amplitudes", "decoherence", "events", "options"}
_OPTIONS = {"epsilon", "tolerance", "cap"}


# ---------------------------------------------------------------------------
# Experiment model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AmplitudeSource:
    re: tuple[float, ...]
    im: tuple[float, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"amplitudes": {"re": list(self.re), "im": list(self.im)}}


@dataclass(frozen=True)
class MatrixSource:
    re: tuple[tuple[float, ...], ...]
    im: tuple[tuple[float, ...], ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "decoherence": {"re": [list(r) for r in self.re], "im": [list(r) for r in self.im]}
        }


@dataclass(frozen=True)
class ExperimentOptions:
    epsilon: float = DEFAULT_EPSILON
    tolerance: float = DEFAULT_TOLERANCE
    cap: int = DEFAULT_CAP


@dataclass(frozen=True)
class ExperimentFile:
    name: str
    histories: tuple[str, ...]
    source: AmplitudeSource | MatrixSource
    events: dict[str, tuple[str, ...]] = field(default_factory=dict)
    options: ExperimentOptions = field(default_factory=ExperimentOptions)

    @property
    def space(self) -> HistorySpace:
        return make_space(self.histories)

    def decoherence(self, tolerance: float | None = None) -> DecoherenceFunctional:
        """Build the model; amplitude sources are checked for normalization."""
        tol = self.options.tolerance if tolerance is None else tolerance
        if isinstance(self.source, AmplitudeSource):
            amps = np.array(self.source.re) + 1j * np.array(self.source.im)
            return from_amplitudes(self.space, amps, tolerance=tol)
        mat = np.array(self.source.re) + 1j * np.array(self.source.im)
        return DecoherenceFunctional(self.space, mat)

    def event(self, name: str, space: HistorySpace | None = None) -> Event:
        if name not in self.events:
            known = ", ".join(sorted(self.events)) or "none"
            raise UnknownEventError(f"event {name!r} is not defined (known: {known})")
        return (space or self.space).event(self.events[name])

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"name": self.name, "histories": list(self.histories)}
        doc.update(self.source.to_dict())
        doc["events"] = {k: list(v) for k, v in self.events.items()}
        doc["options"] = {
            "epsilon": self.options.epsilon,
            "tolerance": self.options.tolerance,
            "cap": self.options.cap,
        }
        return doc


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class _Parser:
    """Field-by-field validation with line context taken from the raw text."""

    def __init__(self, text: str) -> None:
        self.text = text

    def line_of(self, key: str) -> int | None:
        needle = f'"{key}"'
        for lineno, line in enumerate(self.text.splitlines(), start=1):
            if needle in line:
                return lineno
        return None

    def fail(self, message: str, path: str) -> ExperimentParseError:
        key = path.split(".")[-1].split("[")[0]
        return ExperimentParseError(message, field=path, line=self.line_of(key))

    def number(self, value: Any, path: str) -> float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise self.fail(f"expected a number, got {type(value).__name__}", path)
        return float(value)

    def vector(self, value: Any, length: int, path: str) -> tuple[float, ...]:
        if not isinstance(value, list):
            raise self.fail("expected a list of numbers", path)
        if len(value) != length:
            raise self.fail(f"expected {length} entries, got {len(value)}", path)
        return tuple(self.number(v, f"{path}[{i}]") for i, v in enumerate(value))

    def matrix(self, value: Any, n: int, path: str) -> tuple[tuple[float, ...], ...]:
        if not isinstance(value, list) or len(value) != n:
            got = len(value) if isinstance(value, list) else type(value).__name__
            raise self.fail(f"expected a square {n}x{n} matrix, got {got} rows", path)
        return tuple(self.vector(row, n, f"{path}[{i}]") for i, row in enumerate(value))

    def source(self, doc: dict[str, Any], n: int) -> AmplitudeSource | MatrixSource:
        present = [k for k in ("amplitudes", "decoherence") if k in doc]
        if len(present) != 1:
            raise self.fail(
                "exactly one of 'amplitudes' or 'decoherence' must be given",
                present[-1] if present else "amplitudes",
            )
        key = present[0]
        body = doc[key]
        if not isinstance(body, dict) or "re" not in body:
            raise self.fail("expected an object with 're' (and optional 'im')", key)
        unknown = set(body) - {"re", "im"}
        if unknown:
            raise self.fail(f"unknown keys {sorted(unknown)}", key)
        if key == "amplitudes":
            re = self.vector(body["re"], n, "amplitudes.re")
            im = self.vector(body.get("im", [0.0] * n), n, "amplitudes.im")
            return AmplitudeSource(re, im)
        re_m = self.matrix(body["re"], n, "decoherence.re")
        im_m = self.matrix(body.get("im", [[0.0] * n] * n), n, "decoherence.im")
        return MatrixSource(re_m, im_m)

    def options(self, value: Any) -> ExperimentOptions:
        if value is None:
            return ExperimentOptions()
        if not isinstance(value, dict):
            raise self.fail("expected an object", "options")
        unknown = set(value) - _OPTIONS
        if unknown:
            raise self.fail(f"unknown options {sorted(unknown)}", "options")
        epsilon = self.number(value.get("epsilon", DEFAULT_EPSILON), "options.epsilon")
        tolerance = self.number(value.get("tolerance", DEFAULT_TOLERANCE), "options.tolerance")
        cap = value.get("cap", DEFAULT_CAP)
        if epsilon < 0:
            raise self.fail("epsilon must be nonnegative", "options.epsilon")
        if tolerance <= 0:
            raise self.fail("tolerance must be positive", "options.tolerance")
        if isinstance(cap, bool) or not isinstance(cap, int) or cap < 1:
            raise self.fail("cap must be a positive integer", "options.cap")
        return ExperimentOptions(epsilon, tolerance, cap)

    def parse(self, doc: Any) -> ExperimentFile:
        if not isinstance(doc, dict):
            raise ExperimentParseError("experiment file must contain a JSON object")
        unknown = set(doc) - _TOP_LEVEL
        if unknown:
            raise self.fail(f"unknown top-level keys {sorted(unknown)}", sorted(unknown)[0])

        name = doc.get("name")
        if not isinstance(name, str) or not name:
            raise self.fail("expected a nonempty string", "name")

        histories = doc.get("histories")
        if not isinstance(histories, list) or not histories:
            raise self.fail("expected a nonempty list of labels", "histories")
        if not all(isinstance(h, str) and h for h in histories):
            raise self.fail("history labels must be nonempty strings", "histories")
        if len(set(histories)) != len(histories):
            raise self.fail("history labels must be distinct", "histories")

        source = self.source(doc, len(histories))

        events_doc = doc.get("events", {})
        if not isinstance(events_doc, dict):
            raise self.fail("expected an object mapping names to label lists", "events")
        declared = set(histories)
        events: dict[str, tuple[str, ...]] = {}
        for ev_name, members in events_doc.items():
            path = f"events.{ev_name}"
            if not isinstance(members, list) or not all(isinstance(m, str) for m in members):
                raise self.fail("expected a list of history labels", path)
            undeclared = [m for m in members if m not in declared]
            if undeclared:
                raise self.fail(f"unknown history labels {undeclared}", path)
            events[ev_name] = tuple(members)

        return ExperimentFile(
            name=name,
            histories=tuple(histories),
            source=source,
            events=events,
            options=self.options(doc.get("options")),
        )


def loads_experiment(text: str) -> ExperimentFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ExperimentParseError(
            f"malformed JSON: {exc.msg}", line=exc.lineno, column=exc.colno
        ) from exc
    return _Parser(text).parse(doc)


def parse_experiment(path: str | Path) -> ExperimentFile:
    """Read and validate an experiment file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ExperimentParseError(f"cannot read {path}: {exc.strerror}") from exc
    experiment = loads_experiment(text)
    logger.info("Loaded experiment %r (%d histories)", experiment.name, len(experiment.histories))
    return experiment


def dump_experiment(experiment: ExperimentFile) -> str:
    return json.dumps(experiment.to_dict(), indent=2) + "\n"


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def _plain(value: Any) -> Any:
    """Convert numpy scalars, tuples and enums to JSON-ready builtins."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, enum.Enum):
        return value.value
    return value


@dataclass
class Report:
    command: str
    model: str | None
    results: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "model": self.model,
            "results": _plain(self.results),
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"command: {self.command}", f"model: {self.model}", "results:"]
        lines.extend(_text_lines(self.to_dict()["results"], indent=1))
        lines.append("warnings:" if self.warnings else "warnings: none")
        lines.extend(f"  - {w}" for w in self.warnings)
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_text()


def _scalar(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, list) and all(isinstance(v, str) for v in value):
        return "{" + ",".join(value) + "}"
    return str(value)


def _text_lines(value: Any, indent: int) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, dict) or (
                isinstance(item, list) and item and not all(isinstance(v, str) for v in item)
            ):
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                first, *rest = _text_lines(item, indent + 1) or [""]
                lines.append(f"{pad}- {first.strip()}")
                lines.extend(rest)
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(value)}")
    return lines
