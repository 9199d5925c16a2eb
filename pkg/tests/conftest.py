"""Shared pytest fixtures for the anhomomorphic test suite."""

from pathlib import Path

import pytest

from anhomomorphic.algebra import make_space
from anhomomorphic.config import AnalysisConfig
from anhomomorphic.demos import three_slit_model
from anhomomorphic.measure import DecoherenceFunctional, classical_diagonal
from anhomomorphic.trials import coin_model, double_slit_model

EXPERIMENTS = Path(__file__).resolve().parent.parent / "experiments"


@pytest.fixture
def cfg() -> AnalysisConfig:
    """Fresh config per test; CLI handlers mutate it."""
    return AnalysisConfig()


@pytest.fixture(scope="session")
def experiments_dir() -> Path:
    return EXPERIMENTS


@pytest.fixture(scope="session")
def three_slit() -> DecoherenceFunctional:
    return three_slit_model()


@pytest.fixture(scope="session")
def double_slit() -> DecoherenceFunctional:
    return double_slit_model()


@pytest.fixture(scope="session")
def coin2() -> DecoherenceFunctional:
    return coin_model(2)


@pytest.fixture(scope="session")
def coin10() -> DecoherenceFunctional:
    return coin_model(10)


@pytest.fixture(scope="session")
def classical3() -> DecoherenceFunctional:
    """Strictly positive diagonal model on three histories."""
    return classical_diagonal(make_space(["x", "y", "z"]), [0.2, 0.3, 0.5])
