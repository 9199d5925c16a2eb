"""Logging setup and small helpers shared by the CLI and the demos."""

from __future__ import annotations

import datetime
import logging
import os
from collections.abc import Iterable

from anhomomorphic.algebra import Event

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Logging setup
# ---------------------------------------------------------------------------


def setup_logging(name: str, log_dir: str | None = None, verbose: bool = False) -> str | None:
    """Log to stderr, and to a timestamped file when log_dir is given. Returns the file path.

    stdout is left to the report.
    """
    fmt = logging.Formatter("%(levelname)s %(name)s: %(message)s")
    root = logging.getLogger()
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)
    root.handlers.clear()

    sh = logging.StreamHandler()
    sh.setFormatter(fmt)
    root.addHandler(sh)

    if log_dir is None:
        return None

    os.makedirs(log_dir, exist_ok=True)
    timestamp = datetime.datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
    log_path = os.path.join(log_dir, f"{name}_{timestamp}.log")
    fh = logging.FileHandler(log_path)
    fh.setFormatter(fmt)
    root.addHandler(fh)
    logger.info("Log file: %s", log_path)
    return log_path


# ---------------------------------------------------------------------------
# Report helpers
# ---------------------------------------------------------------------------


def label_lists(events: Iterable[Event]) -> list[list[str]]:
    """Events as label lists, the form reports use."""
    return [e.labels for e in events]
