"""Indefinite sums weighted by periodic sequences.

Converts S(n) = sum_{k<n} g(k) f(k), with g q-periodic, into the
progression sums T_p(n) = sum_{k<n} f(qk+p) and back, and checks the
conversions numerically against brute force.
"""

from .catalog import CatalogEntry, all_entries, get_entry
from .errors import (
    DomainError,
    EvaluationError,
    InconsistencyError,
    LexError,
    NotPeriodicError,
    ParameterError,
    ParseError,
    PeriodicSumError,
    UnknownFunctionError,
    UnsupportedFamilyError,
)
from .genfun import TruncatedSeries
from .periodic import IndicatorMethod, PeriodicWeight, basis_decompose, indicator, weight_eval
from .special import harmonic, log_gamma
from .sums import (
    SequenceFamily,
    VerificationReport,
    brute_S,
    brute_S_p,
    brute_T,
    fact1_index,
    s_p_from_anti,
    t_from_s_p,
    weighted_sum_from_anti,
)

__version__ = "0.1.0"
