"""Bit-true block-based approximate adder kernels over uint64 lanes.

Two interchangeable backends compute the same thing:

* ``numba``: per-lane loops compiled with ``@njit``.
* ``numpy``: whole-array expressions, looping over blocks only.

Set ``APPROXADD_NO_NUMBA=1`` to force the numpy path (also used when numba
cannot be imported). Both are differentially tested against the scalar
big-int model in :mod:`approxadd.oracle`.

Every kernel reports the exact difference ``exact_sum - approx_sum`` as a
two-word value ``hi * 2**64 + lo`` with ``hi`` signed and ``lo`` unsigned.
Below n = 64 both (n+1)-bit sums fit in one word and ``hi`` is only the
borrow; at n = 64 the carry-outs land in ``hi``.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["BACKEND", "HAVE_NUMBA", "Layout", "make_layout", "diff_batch", "exhaustive_counts"]

_FORCE_NUMPY = os.environ.get("APPROXADD_NO_NUMBA", "").strip() not in ("", "0")

try:
    if _FORCE_NUMPY:
        raise ImportError("numba disabled by APPROXADD_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"

MAX_LANE_BITS = 64


class Layout:
    """Per-block shift/mask tables for one (n, k, l)."""

    __slots__ = ("n", "k", "l", "m", "shift", "win_lo", "win_mask", "win_w", "kmask", "full")

    def __init__(self, n: int, k: int, l: int) -> None:
        if n > MAX_LANE_BITS:
            raise ValueError(f"uint64 kernels support n <= {MAX_LANE_BITS}, got {n}")
        m = n // k
        self.n, self.k, self.l, self.m = n, k, l, m
        lo = [max(0, i * k - l) for i in range(m)]
        w = [i * k - lo[i] for i in range(m)]
        self.shift = np.array([i * k for i in range(m)], dtype=np.uint64)
        self.win_lo = np.array(lo, dtype=np.uint64)
        self.win_w = np.array(w, dtype=np.uint64)
        self.win_mask = np.array([(1 << x) - 1 for x in w], dtype=np.uint64)
        self.kmask = np.uint64((1 << k) - 1)
        self.full = n == 64


def make_layout(n: int, k: int, l: int) -> Layout:
    return Layout(n, k, l)


# ---------------------------------------------------------------- numpy path


def _diff_batch_numpy(lay: Layout, a: np.ndarray, b: np.ndarray):
    a = a.astype(np.uint64, copy=False)
    b = b.astype(np.uint64, copy=False)
    k = np.uint64(lay.k)
    approx = np.zeros_like(a)
    top = np.zeros_like(a)
    for i in range(lay.m):
        lo, mask, w, s = lay.win_lo[i], lay.win_mask[i], lay.win_w[i], lay.shift[i]
        c = (((a >> lo) & mask) + ((b >> lo) & mask)) >> w
        blk = ((a >> s) & lay.kmask) + ((b >> s) & lay.kmask) + c
        approx |= (blk & lay.kmask) << s
        if i == lay.m - 1:
            top = blk >> k
    exact = a + b
    if lay.full:
        co = (exact < a).astype(np.int8) - top.astype(np.int8)
    else:
        # (n+1)-bit sums fit in one word
        approx |= top << np.uint64(lay.n)
        co = np.zeros(a.shape, dtype=np.int8)
    borrow = (exact < approx).astype(np.int8)
    return co - borrow, exact - approx


def _exhaustive_numpy(lay: Layout, counts: np.ndarray) -> int:
    size = 1 << lay.n
    bs = np.arange(size, dtype=np.uint64)
    violations = 0
    for a in range(size):
        hi, lo = _diff_batch_numpy(lay, np.full(size, a, dtype=np.uint64), bs)
        neg = hi < 0
        if neg.any():
            violations += int(neg.sum())
            lo = np.where(neg, (~lo) + np.uint64(1), lo)
        counts += np.bincount(lo.astype(np.int64), minlength=counts.size)[: counts.size]
    return violations


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True, inline="always")
    def _diff_one(a, b, m, n, k, shift, win_lo, win_mask, win_w, kmask, full):
        approx = np.uint64(0)
        top = np.uint64(0)
        for i in range(m):
            x = (a >> win_lo[i]) & win_mask[i]
            y = (b >> win_lo[i]) & win_mask[i]
            c = (x + y) >> win_w[i]
            s = shift[i]
            blk = ((a >> s) & kmask) + ((b >> s) & kmask) + c
            approx |= (blk & kmask) << s
            top = blk >> k
        exact = a + b
        if full:
            co = (1 if exact < a else 0) - np.int64(top)
        else:
            approx |= top << n
            co = 0
        borrow = 1 if exact < approx else 0
        return co - borrow, exact - approx

    @njit(cache=True, nogil=True)
    def _diff_batch_numba(a, b, m, n, k, shift, win_lo, win_mask, win_w, kmask, full):
        size = a.shape[0]
        hi = np.empty(size, dtype=np.int8)
        lo = np.empty(size, dtype=np.uint64)
        for idx in range(size):
            h, w = _diff_one(a[idx], b[idx], m, n, k, shift, win_lo, win_mask, win_w, kmask, full)
            hi[idx] = h
            lo[idx] = w
        return hi, lo

    @njit(cache=True)
    def _exhaustive_numba(m, n, k, shift, win_lo, win_mask, win_w, kmask, full, counts):
        size = np.uint64(1) << n
        one = np.uint64(1)
        violations = 0
        a = np.uint64(0)
        while a < size:
            b = np.uint64(0)
            while b < size:
                h, w = _diff_one(a, b, m, n, k, shift, win_lo, win_mask, win_w, kmask, full)
                if h < 0:
                    violations += 1
                    w = (~w) + one
                counts[w] += 1
                b += one
            a += one
        return violations


def diff_batch(lay: Layout, a: np.ndarray, b: np.ndarray, backend: str | None = None):
    """``exact - approx`` for each lane as ``(hi: int8[], lo: uint64[])``."""
    backend = backend or BACKEND
    a = np.ascontiguousarray(a, dtype=np.uint64)
    b = np.ascontiguousarray(b, dtype=np.uint64)
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but unavailable")
        return _diff_batch_numba(
            a, b, lay.m, np.uint64(lay.n), np.uint64(lay.k), lay.shift, lay.win_lo,
            lay.win_mask, lay.win_w, lay.kmask, lay.full,
        )
    return _diff_batch_numpy(lay, a, b)


def exhaustive_counts(lay: Layout, backend: str | None = None) -> tuple[np.ndarray, int]:
    """Histogram of ``|exact - approx|`` over all 4**n input pairs.

    Returns ``(counts, violations)`` where ``counts[e]`` is the number of pairs
    with error distance ``e`` and ``violations`` the number of pairs whose
    approximate sum exceeds the exact one.
    """
    backend = backend or BACKEND
    if lay.n > 30:
        raise ValueError("exhaustive histogram is indexed by magnitude; n must be small")
    counts = np.zeros((1 << (lay.n + 1)) + 1, dtype=np.int64)
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but unavailable")
        v = _exhaustive_numba(
            lay.m, np.uint64(lay.n), np.uint64(lay.k), lay.shift, lay.win_lo, lay.win_mask,
            lay.win_w, lay.kmask, lay.full, counts,
        )
    else:
        v = _exhaustive_numpy(lay, counts)
    return counts, int(v)
