"""Configuration for tolerances, enumeration caps and demo parameters."""

import os

DEFAULT_TOLERANCE: float = 1e-9
DEFAULT_CAP: int = 20
DEFAULT_SUM_RULE_CAP: int = 10
DEFAULT_MATERIALIZE_CAP: int = 1024
DEFAULT_EXHAUSTIVE_HOMOMORPHISM_CAP: int = 8
DEFAULT_EPSILON: float = 1e-3


class AnalysisConfig:
    """Numerical tolerance, exhaustive-scan caps and the worked-example parameters."""

    def __init__(self) -> None:
        self.tolerance: float = float(os.environ.get("ANHOM_TOLERANCE", DEFAULT_TOLERANCE))
        self.cap: int = int(os.environ.get("ANHOM_CAP", DEFAULT_CAP))
        self.sum_rule_cap: int = DEFAULT_SUM_RULE_CAP
        self.materialize_cap: int = DEFAULT_MATERIALIZE_CAP
        self.exhaustive_homomorphism_cap: int = DEFAULT_EXHAUSTIVE_HOMOMORPHISM_CAP

        self.epsilon: float = DEFAULT_EPSILON
        self.coin_tosses: int = 10
        self.coin_bias: float = 0.5
        self.heads_fraction: float = 0.6

        self.appc_coin_tosses: int = 2
        self.appc_epsilon: float = 0.3

        self.double_slit_particles: int = 10

    def heads_limit(self, tosses: int | None = None) -> int:
        """Largest heads count inside the "heads at most 60%" question."""
        n = self.coin_tosses if tosses is None else tosses
        return int(self.heads_fraction * n)

    def homomorphism_method(self, blocks: int) -> str:
        """Exhaustive pair check on small partitions, the block test beyond the cap."""
        return "exhaustive" if blocks <= self.exhaustive_homomorphism_cap else "block"
