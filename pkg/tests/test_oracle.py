import importlib.util
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from approxadd import (
    Mode,
    OracleCapExceeded,
    approx_add,
    error_rate,
    exhaustive_distribution,
    monte_carlo_distribution,
    validate_config,
)
from approxadd import _kernels
from approxadd.oracle import MC_CHUNK, speculated_carries

BACKENDS = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])


def ripple_model(n, k, l, a, b):
    """Bit-serial reference written independently of the package model."""
    bit = lambda x, i: (x >> i) & 1  # noqa: E731
    out = 0
    last = 0
    for blk in range(n // k):
        lo = blk * k
        c = 0
        for i in range(max(0, lo - l), lo):
            c = (bit(a, i) & bit(b, i)) | (c & (bit(a, i) ^ bit(b, i)))
        for i in range(lo, lo + k):
            s = bit(a, i) ^ bit(b, i) ^ c
            c = (bit(a, i) & bit(b, i)) | (c & (bit(a, i) ^ bit(b, i)))
            out |= s << i
        last = c
    return out | (last << n)


def test_worked_example():
    c = validate_config(8, 2, 2)
    r = approx_add(c, 7, 9)
    assert (r.approx_sum, r.exact_sum, r.signed_error) == (0, 16, -16)
    assert ripple_model(8, 2, 2, 7, 9) == 0
    assert speculated_carries(c, 7, 9) == [0, 1, 0, 0]


def test_scalar_matches_ripple():
    rng = np.random.default_rng(1)
    for n, k, l in [(8, 2, 3), (12, 3, 2), (16, 4, 6), (10, 1, 4)]:
        c = validate_config(n, k, l)
        for a, b in rng.integers(0, 1 << n, size=(300, 2)):
            assert approx_add(c, int(a), int(b)).approx_sum == ripple_model(n, k, l, int(a), int(b))


def test_operand_range_checked():
    c = validate_config(8, 2, 2)
    with pytest.raises(ValueError):
        approx_add(c, 256, 0)
    with pytest.raises(ValueError):
        approx_add(c, -1, 0)


@pytest.mark.parametrize("backend", BACKENDS)
def test_kernel_matches_scalar_exhaustively(backend):
    for n, k, l in [(8, 2, 2), (8, 1, 3), (6, 3, 1), (8, 4, 3)]:
        c = validate_config(n, k, l)
        lay = _kernels.make_layout(n, k, l)
        a, b = np.meshgrid(np.arange(1 << n, dtype=np.uint64), np.arange(1 << n, dtype=np.uint64))
        a, b = a.ravel(), b.ravel()
        hi, lo = _kernels.diff_batch(lay, a, b, backend)
        got = [(int(h) << 64) + int(x) for h, x in zip(hi, lo)]
        want = [-approx_add(c, int(x), int(y)).signed_error for x, y in zip(a, b)]
        assert got == want


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("nkl", [(64, 4, 2), (64, 4, 10), (63, 7, 9), (64, 1, 5)])
def test_kernel_matches_scalar_random_wide(backend, nkl):
    c = validate_config(*nkl)
    lay = _kernels.make_layout(*nkl)
    rng = np.random.default_rng(7)
    top = (1 << c.n) - 1
    a = rng.integers(0, top, size=4000, dtype=np.uint64, endpoint=True)
    b = rng.integers(0, top, size=4000, dtype=np.uint64, endpoint=True)
    mask = np.uint64(top)
    # force long carry chains in part of the batch
    b[:1000] = ~a[:1000] & mask
    hi, lo = _kernels.diff_batch(lay, a, b, backend)
    for x, y, h, v in zip(a, b, hi, lo):
        assert (int(h) << 64) + int(v) == -approx_add(c, int(x), int(y)).signed_error


def test_full_window_exhaustive_is_exact():
    emp = exhaustive_distribution(validate_config(8, 2, 6))
    assert emp.counts == {0: 65536} and emp.sign_violations == 0


@pytest.mark.parametrize("backend", BACKENDS)
def test_backends_agree_exhaustively(backend):
    c = validate_config(10, 2, 3)
    ref = exhaustive_distribution(c, backend="numpy")
    got = exhaustive_distribution(c, backend=backend)
    assert got.counts == ref.counts and got.total == 4**10


def test_exhaustive_cap():
    with pytest.raises(OracleCapExceeded):
        exhaustive_distribution(validate_config(16, 4, 4), max_n=14)


def test_mc_deterministic_and_worker_invariant():
    c = validate_config(32, 4, 4)
    a = monte_carlo_distribution(c, 200_000, seed=5)
    b = monte_carlo_distribution(c, 200_000, seed=5, workers=3)
    assert a.counts == b.counts
    assert monte_carlo_distribution(c, 200_000, seed=6).counts != a.counts


@pytest.mark.parametrize("backend", BACKENDS)
def test_mc_backend_invariant(backend):
    c = validate_config(64, 4, 4)
    assert (
        monte_carlo_distribution(c, 150_000, seed=3, backend=backend).counts
        == monte_carlo_distribution(c, 150_000, seed=3, backend="numpy").counts
    )


def test_mc_partial_chunk_totals():
    c = validate_config(16, 2, 2)
    small = monte_carlo_distribution(c, 1000, seed=9)
    assert small.total == 1000
    one = monte_carlo_distribution(c, 1, seed=9)
    assert one.total == 1 and sum(one.counts.values()) == 1
    big = monte_carlo_distribution(c, MC_CHUNK + 17, seed=9)
    assert big.total == MC_CHUNK + 17


def test_mc_rejects_bad_arguments():
    c = validate_config(16, 2, 2)
    with pytest.raises(ValueError):
        monte_carlo_distribution(c, 0)
    with pytest.raises(ValueError):
        monte_carlo_distribution(c, 10, seed=-1)


def test_mc_error_rate_within_binomial_band():
    c = validate_config(32, 4, 4)
    er = float(error_rate(c, Mode.EXACT))
    n = 1_000_000
    emp = monte_carlo_distribution(c, n, seed=11)
    sigma = math.sqrt(er * (1 - er) / n)
    assert abs(float(emp.error_rate()) - er) < 5 * sigma
    assert emp.sign_violations == 0


def test_mc_spread_matches_binomial():
    c = validate_config(32, 4, 4)
    er = float(error_rate(c, Mode.EXACT))
    n = 50_000
    rates = [float(monte_carlo_distribution(c, n, seed=s).error_rate()) for s in range(100)]
    predicted = math.sqrt(er * (1 - er) / n)
    assert 0.5 * predicted < float(np.std(rates, ddof=1)) < 2 * predicted


def test_mc_wide_operands_use_bigint_path():
    c = validate_config(96, 8, 8)
    emp = monte_carlo_distribution(c, 3000, seed=2)
    assert emp.total == 3000 and emp.sign_violations == 0
    assert all(e % (1 << 8) == 0 for e in emp.counts)
    again = monte_carlo_distribution(c, 3000, seed=2, workers=2)
    assert again.counts == emp.counts


def test_numpy_flag_selects_backend():
    code = "from approxadd import _kernels; print(_kernels.BACKEND)"
    env = dict(os.environ, APPROXADD_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    env["APPROXADD_NO_NUMBA"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    installed = importlib.util.find_spec("numba") is not None
    assert out.stdout.strip() == ("numba" if installed else "numpy")
