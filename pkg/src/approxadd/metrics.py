"""ER / MED / MSE and the leading-one histogram."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .distribution import ErrorDistribution, gap_coefficients, one_marginals, sum_probs
from .error_rate import prefix_correct_probs
from .model import AdderConfig, Mode, Prob, one, signal_probs, to_dyadic, zero

__all__ = [
    "MetricsReport",
    "LeadingOneHistogram",
    "metrics_from_distribution",
    "analytic_metrics",
    "bit_one_probability",
    "leading_one_histogram",
    "histogram_from_distribution",
]


@dataclass(frozen=True)
class MetricsReport:
    config: AdderConfig
    mode: Mode
    er: Prob
    med: Fraction
    mse: Fraction

    @property
    def med_float(self) -> float:
        return float(self.med)

    @property
    def mse_float(self) -> float:
        return float(self.mse)


def _weighted_sum(pairs) -> Fraction:
    """Exact ``sum(w * p)`` for integer weights and dyadic/float probabilities."""
    terms = []
    top = 0
    for w, p in pairs:
        dp = to_dyadic(p)
        terms.append((w * dp.num, dp.exp))
        top = max(top, dp.exp)
    total = sum(num << (top - e) for num, e in terms)
    return Fraction(total, 1 << top)


def metrics_from_distribution(dist: ErrorDistribution) -> MetricsReport:
    """ER as the non-zero mass (equal to ``1 - P(0)``), MED and MSE summed exactly.

    Float-mode probabilities are converted exactly to dyadics before
    weighting, so large magnitudes never lose bits; rounding happens once, in
    ``float(report.med)``.
    """
    med = _weighted_sum((p.magnitude, p.probability) for p in dist)
    mse = _weighted_sum((p.magnitude * p.magnitude, p.probability) for p in dist)
    return MetricsReport(dist.config, dist.mode, dist.nonzero_mass(), med, mse)


def _gap_conditionals(coef: list, t: int, m: int, mode: Mode) -> list:
    # h[g] = P(1 at block j+g | 1 at block j), any intermediate 1s allowed
    h = [zero(mode)] * m
    for g in range(t + 1, m):
        acc = coef[g]
        for g1 in range(t + 1, g - t):
            acc = acc + coef[g1] * h[g - g1]
        h[g] = acc
    return h


def analytic_metrics(config: AdderConfig, mode: Mode = Mode.FLOAT) -> MetricsReport:
    """ER, MED and MSE in O(m^2) from bit marginals and pairwise bit probabilities.

    ``MED = sum_i 2^(ik) P(bit_i)`` and
    ``MSE = sum_i 4^(ik) P(bit_i) + 2 sum_{j<i} 2^((i+j)k) P(bit_j) h(i-j)``.
    No enumeration, so any pattern count is fine.
    """
    probs = signal_probs(config, mode)
    d = prefix_correct_probs(config, probs)
    coef = gap_coefficients(config, probs, d)
    m, t, k = config.m, config.t, config.k
    marg = one_marginals(config, mode)
    h = _gap_conditionals(coef, t, m, mode)
    med_terms = [(1 << (i * k), marg[i]) for i in range(t + 1, m)]
    mse_terms = [(1 << (2 * i * k), marg[i]) for i in range(t + 1, m)]
    for i in range(t + 1, m):
        for j in range(t + 1, i - t):
            mse_terms.append((2 << ((i + j) * k), marg[j] * h[i - j]))
    return MetricsReport(config, mode, d.miss[-1], _weighted_sum(med_terms), _weighted_sum(mse_terms))


@dataclass(frozen=True)
class LeadingOneHistogram:
    """``entries[r] = (i, P(leading 1 of the error at bit i*k))`` for i in [t+1, m-1]."""

    config: AdderConfig
    mode: Mode
    entries: tuple

    def total(self) -> Prob:
        return sum_probs((p for _, p in self.entries), self.mode)

    def as_dict(self) -> dict:
        return dict(self.entries)


def bit_one_probability(config: AdderConfig, i: int, mode: Mode = Mode.FLOAT) -> Prob:
    """Probability that bit ``i*k`` of the error distance is 1."""
    t = config.t
    if not t + 1 <= i <= config.m - 1:
        return zero(mode)
    probs = signal_probs(config, mode)
    p_t = one(mode)
    for _ in range(t):
        p_t = p_t * probs.p
    if config.k_prime == 0:
        return p_t * probs.g
    a = p_t * probs.pl * probs.gr
    if i == t + 1:
        return a
    return a + p_t * probs.p * probs.gl


def leading_one_histogram(config: AdderConfig, mode: Mode = Mode.FLOAT) -> LeadingOneHistogram:
    d = prefix_correct_probs(config, mode=mode)
    m = config.m
    entries = tuple(
        (i, d[m - i - 1] * bit_one_probability(config, i, mode)) for i in range(config.t + 1, m)
    )
    return LeadingOneHistogram(config, mode, entries)


def histogram_from_distribution(dist: ErrorDistribution) -> LeadingOneHistogram:
    """Bin the enumerated patterns by the block of their leading 1."""
    cfg = dist.config
    bins: dict = {i: [] for i in range(cfg.t + 1, cfg.m)}
    for p in dist:
        if p.ones:
            bins[p.ones[0]].append(p.probability)
    return LeadingOneHistogram(cfg, dist.mode, tuple((i, sum_probs(v, dist.mode)) for i, v in bins.items()))
