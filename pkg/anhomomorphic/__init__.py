"""Anhomomorphic logic over finite history spaces.

Quantum measures, primitive preclusive co-events, classical domains and Cournot-style
predictions, with the three-slit, double-slit and coin examples built in.
"""

from anhomomorphic.algebra import Event, HistorySpace, Partition, make_space
from anhomomorphic.coevent import (
    ClassicalDomain,
    CoEvent,
    NullFamily,
    classical_domain,
    enumerate_appc,
    enumerate_ppc,
    evaluate,
    find_boolean_anomalies,
    is_homomorphism_on,
    maximal_null_sets,
    minimal_transversals,
)
from anhomomorphic.config import AnalysisConfig
from anhomomorphic.cournot import Outcome, Verdict, predict, strong_cournot_cover
from anhomomorphic.errors import AnhomomorphicError
from anhomomorphic.experiment import ExperimentFile, Report, parse_experiment
from anhomomorphic.measure import (
    DecoherenceFunctional,
    MeasureTable,
    ValidationReport,
    check_sum_rule,
    from_amplitudes,
    measure_to_decoherence,
    mu_event,
    validate_decoherence,
)
from anhomomorphic.trials import (
    OccupationEvent,
    ProductEvent,
    RepeatedTrial,
    occupation_event_measure,
    product_event_measure,
)

__all__ = [
    "AnalysisConfig",
    "AnhomomorphicError",
    "ClassicalDomain",
    "CoEvent",
    "DecoherenceFunctional",
    "Event",
    "ExperimentFile",
    "HistorySpace",
    "MeasureTable",
    "NullFamily",
    "OccupationEvent",
    "Outcome",
    "Partition",
    "ProductEvent",
    "RepeatedTrial",
    "Report",
    "ValidationReport",
    "Verdict",
    "check_sum_rule",
    "classical_domain",
    "enumerate_appc",
    "enumerate_ppc",
    "evaluate",
    "find_boolean_anomalies",
    "from_amplitudes",
    "is_homomorphism_on",
    "make_space",
    "maximal_null_sets",
    "measure_to_decoherence",
    "minimal_transversals",
    "mu_event",
    "occupation_event_measure",
    "parse_experiment",
    "predict",
    "product_event_measure",
    "strong_cournot_cover",
    "validate_decoherence",
]
