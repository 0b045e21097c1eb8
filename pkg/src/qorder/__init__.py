"""Order effects in multidimensional relevance judgment from query logs."""

__version__ = "0.1.0"

from .exceptions import ConfigurationError, ContractError, DomainError, LogFormatError, QOrderError
from .hilbert import (
    BasisChange,
    BasisRepresentation,
    OrderEffect,
    StateVector,
    born_probability,
    change_of_basis,
    order_effect,
    sequential_projection,
    state_from_probability,
)
from .profiles import (
    DIMENSIONS,
    DimensionalProfile,
    DimensionScores,
    MatchingCriteria,
    QueryMinMaxScaler,
    build_profile,
    matches,
    minmax_normalize,
    relative_difference,
)
from .logs import (
    AnalysisReport,
    ClickEvent,
    Document,
    IrrationalQueryDetector,
    QueryRecord,
    ReportRow,
    analyze,
    find_irq,
    find_sft,
    find_sftsc,
    is_sat_click,
)
from .explain import Explanation, OrderEffectExplainer, explain, explain_auto, preferred_dimension
from .synth import SynthConfig, generate
from .io import read_log, write_log

__all__ = [
    "AnalysisReport", "BasisChange", "BasisRepresentation", "ClickEvent",
    "ConfigurationError", "ContractError", "DIMENSIONS", "DimensionScores",
    "DimensionalProfile", "Document", "DomainError", "Explanation",
    "IrrationalQueryDetector", "LogFormatError", "MatchingCriteria",
    "OrderEffect", "OrderEffectExplainer", "QOrderError", "QueryMinMaxScaler",
    "QueryRecord", "ReportRow", "StateVector", "SynthConfig", "analyze",
    "born_probability", "build_profile", "change_of_basis", "explain",
    "explain_auto", "find_irq", "find_sft", "find_sftsc", "generate",
    "is_sat_click", "matches", "minmax_normalize", "order_effect",
    "preferred_dimension", "read_log", "relative_difference",
    "sequential_projection", "state_from_probability", "write_log",
]
