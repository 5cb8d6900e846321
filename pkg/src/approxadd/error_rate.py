"""Probability that every speculated carry up to block i is correct, and the error rate."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import AdderConfig, Mode, Prob, SignalProbs, one, signal_probs, zero

__all__ = ["PrefixCorrectProbs", "prefix_correct_probs", "error_rate"]


@dataclass(frozen=True)
class PrefixCorrectProbs:
    """``d[i]``: all speculated carry-ins of blocks 0..i correct.

    ``miss[i]`` is ``1 - d[i]`` evaluated by its own positive-term recursion, so
    small error rates keep full relative precision in float mode. In exact mode
    the two are checked to agree exactly.
    """

    config: AdderConfig
    mode: Mode
    d: tuple
    miss: tuple

    def __len__(self) -> int:
        return len(self.d)

    def __getitem__(self, i: int) -> Prob:
        return self.d[i]


def _powers(x: Prob, count: int, mode: Mode) -> list:
    out = [one(mode)]
    for _ in range(count - 1):
        out.append(out[-1] * x)
    return out


def prefix_correct_probs(
    config: AdderConfig, probs: Optional[SignalProbs] = None, mode: Mode = Mode.FLOAT
) -> PrefixCorrectProbs:
    if probs is None:
        probs = signal_probs(config, mode)
    mode = probs.mode
    m, t = config.m, config.t
    split = config.k_prime > 0
    pp = _powers(probs.p, m + 1, mode)  # pp[j] = P^j

    d: list = [one(mode)] * (t + 1)
    miss: list = [zero(mode)] * (t + 1)
    # tail[i] = sum_{j=t+1}^{i} P^(j-1) G   (or from t+2 when split)
    first_tail = t + 2 if split else t + 1
    tail = zero(mode)
    for i in range(t + 1, m):
        if i >= first_tail:
            tail = tail + pp[i - 1] * probs.g
        di = pp[i]
        qi = tail
        for j in range(1, t + 1):
            w = pp[j - 1] * probs.g
            di = di + w * d[i - j]
            qi = qi + w * miss[i - j]
        for j in range(1, i + 1):
            w = pp[j - 1] * probs.k
            di = di + w * d[i - j]
            qi = qi + w * miss[i - j]
        if split:
            w = pp[t] * probs.gl
            di = di + w * d[i - t - 1]
            qi = qi + w * miss[i - t - 1] + pp[t] * probs.pl * probs.gr
        d.append(di)
        miss.append(qi)
    if mode is Mode.EXACT:
        for di, qi in zip(d, miss):
            if di + qi != 1:
                raise AssertionError(f"complement recursion disagrees: {di} + {qi} != 1")
    return PrefixCorrectProbs(config, mode, tuple(d), tuple(miss))


def error_rate(config: AdderConfig, mode: Mode = Mode.FLOAT) -> Prob:
    """``1 - d[m-1]``."""
    return prefix_correct_probs(config, mode=mode).miss[-1]
