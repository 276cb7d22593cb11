"""Python interface to the pnts library.

Rationals are returned as fractions.Fraction; models are built from the JSON
model format.
"""

from ._pnts import (
    DimensionError,
    LogicError,
    Model,
    ModelError,
    ParseError,
    PntsError,
    ResourceError,
    behavioral_metric,
    bisimilarity,
    check_axioms,
    compose,
    congruence_check,
    distinguishing_experiment,
    estimate_upper_expectation,
    evaluate,
    format_formula,
    is_ue_bisimulation,
    load_model,
    metric_estimate,
    parse_model,
    semantic_kernel,
    simulate,
    synthesize,
    upper_expectation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
