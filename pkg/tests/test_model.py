import pytest

from approxadd.dyadic import Dyadic
from approxadd.model import (
    BlockSizeError,
    GeneratorLengthError,
    Mode,
    NonPositiveParameterError,
    signal_probs,
    validate_config,
)


@pytest.mark.parametrize(
    "nkl, m, t, kp",
    [((64, 4, 8), 16, 2, 0), ((64, 4, 2), 16, 0, 2), ((64, 4, 10), 16, 2, 2), ((32, 1, 5), 32, 5, 0)],
)
def test_derived_parameters(nkl, m, t, kp):
    c = validate_config(*nkl)
    assert (c.m, c.t, c.k_prime) == (m, t, kp)
    assert c.aligned == (kp == 0)


@pytest.mark.parametrize(
    "nkl, err",
    [
        ((8, 3, 2), BlockSizeError),
        ((8, 8, 1), BlockSizeError),
        ((8, 2, 7), GeneratorLengthError),
        ((8, 2, 0), NonPositiveParameterError),
        ((0, 1, 1), NonPositiveParameterError),
        ((8, -2, 1), NonPositiveParameterError),
    ],
)
def test_rejects(nkl, err):
    with pytest.raises(err):
        validate_config(*nkl)


def test_named_families():
    aca = validate_config(16, 1, 4)
    eta2 = validate_config(16, 4, 4)
    eta4 = validate_config(16, 4, 2)
    csaa = validate_config(16, 4, 8)
    assert aca.k == 1 and eta2.t == 1 and eta4.t == 0 and csaa.t == 2


def test_signal_values():
    sp = signal_probs(validate_config(64, 4, 8), Mode.EXACT)
    assert sp.p == Dyadic(1, 4) and sp.g == Dyadic(15, 5) and sp.k == Dyadic(15, 5)
    assert sp.pl is None
    sp = signal_probs(validate_config(8, 1, 3), Mode.EXACT)
    assert sp.p == Dyadic(1, 1) and sp.g == Dyadic(1, 2)
    sp = signal_probs(validate_config(64, 4, 10), Mode.EXACT)
    assert sp.pl == Dyadic(1, 2) and sp.gl == Dyadic(3, 3)
    assert sp.pr == Dyadic(1, 2) and sp.gr == Dyadic(3, 3)


@pytest.mark.parametrize("k", range(1, 17))
def test_partition_and_split_identity(k):
    sp = signal_probs(validate_config(4 * k, k, k), Mode.EXACT)
    assert sp.p + sp.g + sp.k == 1
    for kp in range(1, k):
        s = signal_probs(validate_config(4 * k, k, k + kp), Mode.EXACT)
        assert s.kl + s.pl * s.kr == s.k
        assert s.gl + s.pl * s.gr == s.g
        f = signal_probs(validate_config(4 * k, k, k + kp), Mode.FLOAT)
        for name in ("p", "g", "k", "pl", "gl", "kl", "pr", "gr", "kr"):
            assert getattr(f, name) == pytest.approx(float(getattr(s, name)), rel=1e-12)
