"""Adder configuration, group-signal probabilities and numeric modes."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Union

from .dyadic import Dyadic

__all__ = [
    "AdderConfig",
    "ConfigError",
    "BlockSizeError",
    "NonPositiveParameterError",
    "GeneratorLengthError",
    "Mode",
    "Prob",
    "SignalProbs",
    "validate_config",
    "signal_probs",
    "pow2",
    "one",
    "zero",
    "to_float",
    "to_dyadic",
]

Prob = Union[float, Dyadic]


class Mode(str, enum.Enum):
    FLOAT = "float"
    EXACT = "exact"

    @classmethod
    def of(cls, exact: bool) -> "Mode":
        return cls.EXACT if exact else cls.FLOAT


class ConfigError(ValueError):
    """Base class for rejected (n, k, l) triples."""


class NonPositiveParameterError(ConfigError):
    pass


class BlockSizeError(ConfigError):
    """k does not divide n, or fewer than two blocks."""


class GeneratorLengthError(ConfigError):
    """l outside [1, n - k]."""


@dataclass(frozen=True)
class AdderConfig:
    n: int
    k: int
    l: int
    m: int = field(init=False)
    t: int = field(init=False)
    k_prime: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", self.n // self.k)
        object.__setattr__(self, "t", self.l // self.k)
        object.__setattr__(self, "k_prime", self.l - (self.l // self.k) * self.k)

    @property
    def aligned(self) -> bool:
        """True when l is a multiple of k."""
        return self.k_prime == 0

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "l": self.l, "m": self.m, "t": self.t, "k_prime": self.k_prime}


def validate_config(n: int, k: int, l: int) -> AdderConfig:
    """Check an (n, k, l) triple and return the derived configuration.

    Named families: ACA is k=1, ETA-II/SCSA k=l, ETA-IV k=2l, CSAA l=2k.
    """
    for name, v in (("n", n), ("k", k), ("l", l)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise NonPositiveParameterError(f"{name} must be an integer, got {v!r}")
        if v <= 0:
            raise NonPositiveParameterError(f"{name} must be positive, got {v}")
    if n % k:
        raise BlockSizeError(f"block size k={k} does not divide n={n}")
    if n // k < 2:
        raise BlockSizeError(f"need at least two blocks, got m={n // k}")
    if not 1 <= l <= n - k:
        raise GeneratorLengthError(f"carry-generator length l={l} outside [1, n-k] = [1, {n - k}]")
    return AdderConfig(n, k, l)


def pow2(e: int, mode: Mode) -> Prob:
    return Dyadic.pow2(e) if mode is Mode.EXACT else 2.0**e


def one(mode: Mode) -> Prob:
    return Dyadic(1) if mode is Mode.EXACT else 1.0


def zero(mode: Mode) -> Prob:
    return Dyadic(0) if mode is Mode.EXACT else 0.0


def to_float(p: Prob) -> float:
    return float(p)


def to_dyadic(p: Prob) -> Dyadic:
    return p if isinstance(p, Dyadic) else Dyadic.from_float(p)


def _pgk(width: int, mode: Mode) -> tuple[Prob, Prob]:
    # P(propagate) = 2^-w ; P(generate) = P(kill) = 1/2 - 2^-(w+1)
    p = pow2(-width, mode)
    g = pow2(-1, mode) - pow2(-(width + 1), mode)
    return p, g


@dataclass(frozen=True)
class SignalProbs:
    """Probabilities of the block (and split-block) propagate/generate/kill signals.

    The left group is the top ``k_prime`` bits of a block, the right group the
    remaining ``k - k_prime``. Left/right fields are ``None`` when l is a
    multiple of k.
    """

    mode: Mode
    p: Prob
    g: Prob
    k: Prob
    pl: Optional[Prob] = None
    gl: Optional[Prob] = None
    kl: Optional[Prob] = None
    pr: Optional[Prob] = None
    gr: Optional[Prob] = None
    kr: Optional[Prob] = None


def signal_probs(config: AdderConfig, mode: Mode = Mode.FLOAT) -> SignalProbs:
    p, g = _pgk(config.k, mode)
    if config.k_prime == 0:
        return SignalProbs(mode, p, g, g)
    pl, gl = _pgk(config.k_prime, mode)
    pr, gr = _pgk(config.k - config.k_prime, mode)
    return SignalProbs(mode, p, g, g, pl, gl, gl, pr, gr, gr)
