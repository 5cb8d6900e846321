"""Exact error statistics for block-based approximate adders.

Given an n-bit adder split into k-bit blocks whose carry-ins are speculated
from the l bits below each block, compute the error rate, the full error
distribution and its moments exactly, and check them against bit-true
simulation.
"""

from .distribution import (
    ErrorDistribution,
    ErrorPattern,
    PatternCapExceeded,
    count_patterns,
    e_coefficient,
    enumerate_distribution,
    iter_patterns,
    stream_distribution,
)
from .dyadic import Dyadic
from .error_rate import PrefixCorrectProbs, error_rate, prefix_correct_probs
from .metrics import (
    LeadingOneHistogram,
    MetricsReport,
    analytic_metrics,
    histogram_from_distribution,
    leading_one_histogram,
    metrics_from_distribution,
)
from .model import AdderConfig, ConfigError, Mode, SignalProbs, signal_probs, validate_config
from .oracle import (
    BehavioralResult,
    EmpiricalDistribution,
    OracleCapExceeded,
    approx_add,
    exhaustive_distribution,
    monte_carlo_distribution,
)

__version__ = "0.1.0"
