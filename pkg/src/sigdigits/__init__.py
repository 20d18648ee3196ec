"""Significant-digit laws, exact digit probabilities and Laplace-transform error analysis."""

from .errors import DomainError, NumericalError, UnsupportedError
from .digitlaw import (
    DigitBlock,
    LawPrediction,
    Source,
    benford_prob,
    first_digit_table,
    hill_joint_prob,
    ith_digit_table,
)
from .dists import Distribution, Kernel, catalog, get_distribution, parse_dist_spec, verify_pair
from .oracle import OracleResult, exact_block_prob, exact_table, indicator_g
from .laplace import (
    ErrorReport,
    Extremum,
    SeriesEval,
    delta,
    delta_tilde,
    g_transform,
    kernel_weighted_error,
    scan_delta_extrema,
    total_error,
)
from .empirics import (
    ConformityReport,
    DigitHistogram,
    Thresholds,
    conformity,
    extract_digits,
    histogram,
    read_column,
    transform_data,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "NumericalError",
    "UnsupportedError",
    "DigitBlock",
    "LawPrediction",
    "Source",
    "benford_prob",
    "first_digit_table",
    "hill_joint_prob",
    "ith_digit_table",
    "Distribution",
    "Kernel",
    "catalog",
    "get_distribution",
    "parse_dist_spec",
    "verify_pair",
    "OracleResult",
    "exact_block_prob",
    "exact_table",
    "indicator_g",
    "ErrorReport",
    "Extremum",
    "SeriesEval",
    "delta",
    "delta_tilde",
    "g_transform",
    "kernel_weighted_error",
    "scan_delta_extrema",
    "total_error",
    "ConformityReport",
    "DigitHistogram",
    "Thresholds",
    "conformity",
    "extract_digits",
    "histogram",
    "read_column",
    "transform_data",
]
