from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from approxadd.dyadic import Dyadic, as_dyadic

dyadics = st.builds(Dyadic, st.integers(0, 1 << 80), st.integers(0, 90))


def test_canonical_form():
    assert (Dyadic(12, 4).num, Dyadic(12, 4).exp) == (3, 2)
    assert (Dyadic(0, 7).num, Dyadic(0, 7).exp) == (0, 0)
    assert (Dyadic(8, 3).num, Dyadic(8, 3).exp) == (1, 0)
    assert (Dyadic(5, -2).num, Dyadic(5, -2).exp) == (20, 0)
    assert Dyadic(6, 0).exp == 0


def test_basic_ops():
    half = Dyadic.pow2(-1)
    assert half + half == 1
    assert 1 - Dyadic(1, 3) == Dyadic(7, 3)
    assert Dyadic(3, 2) * Dyadic(3, 2) == Dyadic(9, 4)
    assert Dyadic(3, 2) ** 3 == Dyadic(27, 6)
    assert float(Dyadic(1, 1100)) == 2.0**-1100
    assert Dyadic.from_float(0.375) == Dyadic(3, 3)
    assert as_dyadic(0.1).to_fraction() == Fraction(0.1)


def test_negative_result_rejected():
    with pytest.raises(ValueError):
        Dyadic(1, 2) - 1


def test_immutable():
    x = Dyadic(1, 1)
    with pytest.raises(AttributeError):
        x.num = 3


@given(dyadics, dyadics, dyadics)
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) + c == a + (b + c)


@given(dyadics, dyadics)
def test_matches_fractions(a, b):
    fa, fb = a.to_fraction(), b.to_fraction()
    assert (a + b).to_fraction() == fa + fb
    assert (a * b).to_fraction() == fa * fb
    assert (a < b) == (fa < fb)
    assert (a == b) == (fa == fb)
    assert hash(a) == hash(Dyadic(a.num << 3, a.exp + 3))
