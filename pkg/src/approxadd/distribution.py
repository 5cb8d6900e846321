"""Exact error distribution: every error pattern with its probability.

An error pattern is the binary form of the error distance. Its 1s sit at bit
positions ``i*k`` for block indices ``t+1 <= i <= m-1`` with consecutive
indices more than ``t`` apart. Reading the pattern from its lowest 1 upward,
the probability factors into one transition coefficient per 1 (which depends
only on the gap to the previous 1, or to block 0 for the lowest) times
``d[m-1-top]`` for "no further 1 above the top one".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .dyadic import Dyadic
from .error_rate import PrefixCorrectProbs, prefix_correct_probs
from .model import AdderConfig, Mode, Prob, SignalProbs, one, signal_probs, zero

__all__ = [
    "ErrorPattern",
    "ErrorDistribution",
    "PatternCapExceeded",
    "IndexContractError",
    "StreamSummary",
    "DEFAULT_MAX_PATTERNS",
    "count_patterns",
    "pattern_count_sequence",
    "gap_coefficients",
    "e_coefficient",
    "iter_patterns",
    "stream_distribution",
    "enumerate_distribution",
    "one_marginals",
    "leading_block_mass",
    "pattern_probability",
    "sum_probs",
]

DEFAULT_MAX_PATTERNS = 1 << 26


class PatternCapExceeded(RuntimeError):
    pass


class IndexContractError(ValueError):
    """Block indices passed to a coefficient lookup violate its contract."""


@dataclass(frozen=True)
class ErrorPattern:
    ones: tuple  # descending block indices
    magnitude: int
    probability: Prob

    @property
    def leading_block(self) -> Optional[int]:
        return self.ones[0] if self.ones else None


def sum_probs(values, mode: Mode) -> Prob:
    if mode is Mode.FLOAT:
        return math.fsum(values)
    total = Dyadic(0)
    for v in values:
        total = total + v
    return total


@dataclass(frozen=True)
class ErrorDistribution:
    config: AdderConfig
    mode: Mode
    patterns: tuple  # sorted by magnitude, zero pattern first

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    @property
    def zero_probability(self) -> Prob:
        p = self.patterns[0]
        return p.probability if p.magnitude == 0 else zero(self.mode)

    def total_mass(self) -> Prob:
        return sum_probs((p.probability for p in self.patterns), self.mode)

    def nonzero_mass(self) -> Prob:
        return sum_probs((p.probability for p in self.patterns if p.magnitude), self.mode)

    def as_mapping(self) -> dict:
        return {p.magnitude: p.probability for p in self.patterns}


# ------------------------------------------------------------------ counting


def pattern_count_sequence(t: int, upto: int) -> list[int]:
    """``[x_1, ..., x_upto]``; ``x_i = 1`` for ``i <= t+1``, else ``x_{i-t-1} + x_{i-1}``."""
    x = [0]  # x[0] unused
    for i in range(1, upto + 1):
        x.append(1 if i <= t + 1 else x[i - t - 1] + x[i - 1])
    return x[1:]


def count_patterns(config: AdderConfig) -> int:
    """Number of distinct error patterns, the zero pattern included."""
    return pattern_count_sequence(config.t, config.m)[-1]


# ----------------------------------------------------------- coefficients


def gap_coefficients(config: AdderConfig, probs: SignalProbs, d: PrefixCorrectProbs) -> list:
    """``coef[g]``: probability that, given a 1 at block j (or j = 0 for none yet),
    the next 1 up is at block ``j + g``. Entries below ``t+1`` are zero."""
    m, t = config.m, config.t
    mode = probs.mode
    p_t = one(mode)
    for _ in range(t):
        p_t = p_t * probs.p
    coef = [zero(mode)] * m
    if config.k_prime == 0:
        base = p_t * probs.g
        for g in range(t + 1, m):
            coef[g] = base * d[g - t - 1]
    else:
        right = p_t * probs.pl * probs.gr  # top t blocks propagate, split block: PL and GR
        left = p_t * probs.p * probs.gl  # t+1 blocks propagate, then GL
        for g in range(t + 1, m):
            c = right * d[g - t - 1]
            if g >= t + 2:
                c = c + left * d[g - t - 2]
            coef[g] = c
    return coef


def e_coefficient(
    config: AdderConfig, probs: SignalProbs, d: PrefixCorrectProbs, i: int, j: int
) -> Prob:
    """Transition probability from a 1 at block ``j`` to the next 1 at block ``i``.

    ``j = 0`` means block ``i`` holds the lowest 1 of the pattern.
    """
    t, m = config.t, config.m
    if not t + 1 <= i <= m - 1:
        raise IndexContractError(f"i={i} outside [{t + 1}, {m - 1}]")
    if j != 0 and not t + 1 <= j:
        raise IndexContractError(f"j={j} cannot hold a 1 (must be 0 or >= {t + 1})")
    if i - j <= t:
        raise IndexContractError(f"gap i-j={i - j} must exceed t={t}")
    return gap_coefficients(config, probs, d)[i - j]


def pattern_probability(config: AdderConfig, ones, mode: Mode = Mode.FLOAT) -> Prob:
    """Probability of the pattern with 1s at the given blocks (any order)."""
    probs = signal_probs(config, mode)
    d = prefix_correct_probs(config, probs)
    coef = gap_coefficients(config, probs, d)
    idx = sorted(ones)
    prev = 0
    prob = one(mode)
    for i in idx:
        if not config.t + 1 <= i <= config.m - 1 or i - prev <= config.t:
            return zero(mode)
        prob = prob * coef[i - prev]
        prev = i
    return prob * d[config.m - 1 - prev]


def one_marginals(config: AdderConfig, mode: Mode = Mode.FLOAT) -> list:
    """``marg[i]``: total weight of pattern prefixes whose current top 1 is block ``i``.

    Summed over every way to fill the blocks below, this is the probability
    that bit ``i*k`` of the error is 1. Computed in O(m^2) without enumerating.
    """
    probs = signal_probs(config, mode)
    d = prefix_correct_probs(config, probs)
    coef = gap_coefficients(config, probs, d)
    m, t = config.m, config.t
    marg = [zero(mode)] * m
    for i in range(t + 1, m):
        acc = coef[i]
        for j in range(t + 1, i - t):
            acc = acc + marg[j] * coef[i - j]
        marg[i] = acc
    return marg


def leading_block_mass(config: AdderConfig, mode: Mode = Mode.FLOAT) -> dict:
    """Total pattern probability grouped by leading block, without enumerating.

    Equals summing the product-form probability of every pattern whose top 1
    is block ``i``; used where the pattern count is too large to list.
    """
    d = prefix_correct_probs(config, mode=mode)
    marg = one_marginals(config, mode)
    return {i: marg[i] * d[config.m - 1 - i] for i in range(config.t + 1, config.m)}


# -------------------------------------------------------------- enumeration


def iter_patterns(config: AdderConfig, mode: Mode = Mode.FLOAT) -> Iterator[ErrorPattern]:
    """Yield every pattern depth-first, placing a 1 before skipping a block.

    Explicit stack; each node costs O(1) besides building the ``ones`` tuple.
    """
    probs = signal_probs(config, mode)
    d = prefix_correct_probs(config, probs)
    coef = gap_coefficients(config, probs, d)
    m, k, step = config.m, config.k, config.t + 1
    # frame: (i, j, ones, magnitude, prob)
    stack = [(config.t + 1, 0, (), 0, one(mode))]
    pop, push = stack.pop, stack.append
    while stack:
        i, j, ones, mag, prob = pop()
        if i >= m:
            yield ErrorPattern(ones, mag, prob * d[m - 1 - j])
            continue
        push((i + 1, j, ones, mag, prob))
        push((i + step, i, (i,) + ones, mag + (1 << (i * k)), prob * coef[i - j]))


@dataclass(frozen=True)
class StreamSummary:
    count: int
    mass: Prob
    aborted: bool


def stream_distribution(
    config: AdderConfig,
    visitor: Callable[[ErrorPattern], Optional[bool]],
    mode: Mode = Mode.FLOAT,
) -> StreamSummary:
    """Feed patterns to ``visitor`` one at a time; memory stays O(m).

    A visitor returning ``False`` stops the walk; the summary then has
    ``aborted=True`` and covers only the patterns delivered so far.
    """
    count = 0
    mass: list = []
    exact_mass = Dyadic(0)
    for pat in iter_patterns(config, mode):
        count += 1
        if mode is Mode.EXACT:
            exact_mass = exact_mass + pat.probability
        else:
            mass.append(pat.probability)
            if len(mass) >= 4096:
                mass = [math.fsum(mass)]
        if visitor(pat) is False:
            return StreamSummary(count, exact_mass if mode is Mode.EXACT else math.fsum(mass), True)
    return StreamSummary(count, exact_mass if mode is Mode.EXACT else math.fsum(mass), False)


def enumerate_distribution(
    config: AdderConfig, mode: Mode = Mode.FLOAT, max_patterns: int = DEFAULT_MAX_PATTERNS
) -> ErrorDistribution:
    n_pat = count_patterns(config)
    if n_pat > max_patterns:
        raise PatternCapExceeded(
            f"{n_pat} error patterns exceed the cap of {max_patterns}; use stream_distribution"
        )
    pats = sorted(iter_patterns(config, mode), key=lambda p: p.magnitude)
    return ErrorDistribution(config, mode, tuple(pats))
