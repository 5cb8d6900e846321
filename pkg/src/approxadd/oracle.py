"""Ground truth: a bit-true model of the adder, exhaustive and sampled error histograms."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import _kernels
from .model import AdderConfig

__all__ = [
    "BehavioralResult",
    "EmpiricalDistribution",
    "OracleCapExceeded",
    "approx_add",
    "speculated_carries",
    "exhaustive_distribution",
    "monte_carlo_distribution",
    "DEFAULT_MAX_ORACLE_N",
    "MC_CHUNK",
]

DEFAULT_MAX_ORACLE_N = 14
# Monte Carlo draws are generated in fixed chunks; chunk c uses
# PCG64(SeedSequence(seed, spawn_key=(c,))). Changing this changes the stream.
MC_CHUNK = 1 << 16


class OracleCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class BehavioralResult:
    approx_sum: int
    exact_sum: int

    @property
    def signed_error(self) -> int:
        return self.approx_sum - self.exact_sum


def _carry_out(a: int, b: int, lo: int, hi: int) -> int:
    """Carry out of adding bits [lo, hi) of a and b with carry-in 0."""
    w = hi - lo
    mask = (1 << w) - 1
    return (((a >> lo) & mask) + ((b >> lo) & mask)) >> w


def speculated_carries(config: AdderConfig, a: int, b: int) -> list[int]:
    k, l = config.k, config.l
    return [_carry_out(a, b, max(0, i * k - l), i * k) for i in range(config.m)]


def approx_add(config: AdderConfig, a: int, b: int) -> BehavioralResult:
    """Add two n-bit operands the way the block-based approximate adder does."""
    n, k = config.n, config.k
    if not (0 <= a < 1 << n and 0 <= b < 1 << n):
        raise ValueError(f"operands must lie in [0, 2^{n})")
    kmask = (1 << k) - 1
    total = 0
    carry_out = 0
    for i, c in enumerate(speculated_carries(config, a, b)):
        blk = ((a >> (i * k)) & kmask) + ((b >> (i * k)) & kmask) + c
        total |= (blk & kmask) << (i * k)
        carry_out = blk >> k
    return BehavioralResult(total | (carry_out << n), a + b)


@dataclass
class EmpiricalDistribution:
    """Counts of error distance over a set of input pairs."""

    config: AdderConfig
    counts: dict
    total: int
    source: str
    seed: Optional[int] = None
    sign_violations: int = 0
    backend: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        self.counts = dict(sorted(self.counts.items()))
        if sum(self.counts.values()) != self.total:
            raise ValueError("counts do not sum to the sample total")

    def probability(self, magnitude: int) -> Fraction:
        return Fraction(self.counts.get(magnitude, 0), self.total)

    def error_rate(self) -> Fraction:
        return Fraction(self.total - self.counts.get(0, 0), self.total)

    def med(self) -> Fraction:
        return Fraction(sum(e * c for e, c in self.counts.items()), self.total)

    def mse(self) -> Fraction:
        return Fraction(sum(e * e * c for e, c in self.counts.items()), self.total)


def exhaustive_distribution(
    config: AdderConfig, max_n: int = DEFAULT_MAX_ORACLE_N, backend: Optional[str] = None
) -> EmpiricalDistribution:
    """Error-distance histogram over all ``4**n`` input pairs."""
    if config.n > max_n:
        raise OracleCapExceeded(
            f"exhaustive oracle at n={config.n} needs 4^{config.n} = {4 ** config.n:.3e} "
            f"adder evaluations; cap is n <= {max_n}"
        )
    lay = _kernels.make_layout(config.n, config.k, config.l)
    hist, violations = _kernels.exhaustive_counts(lay, backend)
    nz = np.flatnonzero(hist)
    counts = {int(e): int(hist[e]) for e in nz}
    return EmpiricalDistribution(
        config, counts, 4**config.n, "exhaustive", None, violations, backend or _kernels.BACKEND
    )


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def _draw(rng: np.random.Generator, size: int, n: int) -> np.ndarray:
    raw = rng.bit_generator.random_raw(size).astype(np.uint64, copy=False)
    if n < 64:
        raw &= np.uint64((1 << n) - 1)
    return raw


def _mc_chunk_lanes(config, lay, seed, chunk, size, backend):
    rng = _chunk_rng(seed, chunk)
    a = _draw(rng, size, config.n)
    b = _draw(rng, size, config.n)
    hi, lo = _kernels.diff_batch(lay, a, b, backend)
    counts: Counter = Counter()
    plain = hi == 0
    zeros = plain & (lo == 0)
    counts[0] = int(zeros.sum())
    vals, cnt = np.unique(lo[plain & ~zeros], return_counts=True)
    for v, c in zip(vals.tolist(), cnt.tolist()):
        counts[int(v)] += int(c)
    odd = np.flatnonzero(~plain)
    violations = 0
    for idx in odd.tolist():
        diff = int(hi[idx]) * (1 << 64) + int(lo[idx])
        violations += diff < 0
        counts[abs(diff)] += 1
    return counts, violations


def _mc_chunk_bigint(config, seed, chunk, size):
    # n > 64: draw each operand from ceil(n/64) words and use the scalar model
    rng = _chunk_rng(seed, chunk)
    words = -(-config.n // 64)
    mask = (1 << config.n) - 1

    def operand_batch():
        raw = rng.bit_generator.random_raw(size * words).reshape(size, words)
        out = []
        for row in raw.tolist():
            v = 0
            for w in row:
                v = (v << 64) | w
            out.append(v & mask)
        return out

    a_s, b_s = operand_batch(), operand_batch()
    counts: Counter = Counter()
    violations = 0
    for a, b in zip(a_s, b_s):
        err = approx_add(config, a, b).signed_error
        violations += err > 0
        counts[abs(err)] += 1
    return counts, violations


def monte_carlo_distribution(
    config: AdderConfig,
    samples: int,
    seed: int = 0,
    backend: Optional[str] = None,
    workers: int = 1,
) -> EmpiricalDistribution:
    """Error-distance histogram over ``samples`` uniform input pairs.

    The result depends only on ``(config, samples, seed)``: work is cut into
    chunks of :data:`MC_CHUNK` lanes with per-chunk sub-seeds, and counts are
    merged by addition, so ``workers`` never changes the output.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if seed < 0:
        raise ValueError("seed must be non-negative")
    n_chunks = -(-samples // MC_CHUNK)
    sizes = [min(MC_CHUNK, samples - c * MC_CHUNK) for c in range(n_chunks)]
    if config.n <= _kernels.MAX_LANE_BITS:
        lay = _kernels.make_layout(config.n, config.k, config.l)

        def job(c):
            return _mc_chunk_lanes(config, lay, seed, c, sizes[c], backend)
    else:

        def job(c):
            return _mc_chunk_bigint(config, seed, c, sizes[c])

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(job, range(n_chunks)))
    else:
        parts = [job(c) for c in range(n_chunks)]
    total: Counter = Counter()
    violations = 0
    for counts, v in parts:
        total.update(counts)
        violations += v
    counts = {e: c for e, c in total.items() if c}
    return EmpiricalDistribution(
        config, counts, samples, "monte_carlo", seed, violations, backend or _kernels.BACKEND
    )
