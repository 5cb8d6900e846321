"""Exact non-negative dyadic rationals ``num / 2**exp``.

Every probability in the uniform-input adder model has a power-of-two
denominator, so this small ring is enough to run the whole analysis without
rounding.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

__all__ = ["Dyadic", "as_dyadic"]


def _trailing_zeros(x: int) -> int:
    return (x & -x).bit_length() - 1


class Dyadic:
    """Immutable value ``num / 2**exp`` with ``num >= 0`` and ``exp >= 0``.

    Canonical form: ``num`` is odd, or ``exp == 0``. Two equal values therefore
    always have identical ``(num, exp)`` pairs.
    """

    __slots__ = ("num", "exp")

    num: int
    exp: int

    def __init__(self, num: int, exp: int = 0) -> None:
        if num < 0:
            raise ValueError(f"dyadic numerator must be non-negative, got {num}")
        if exp < 0:
            num <<= -exp
            exp = 0
        elif num == 0:
            exp = 0
        elif exp and not num & 1:
            shift = min(_trailing_zeros(num), exp)
            num >>= shift
            exp -= shift
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def pow2(cls, e: int) -> "Dyadic":
        """``2**e`` for any integer ``e``."""
        return cls(1, -e)

    @classmethod
    def from_float(cls, x: float) -> "Dyadic":
        num, den = float(x).as_integer_ratio()
        return cls(num, den.bit_length() - 1)

    def __add__(self, other: "DyadicLike") -> "Dyadic":
        other = as_dyadic(other)
        if self.exp >= other.exp:
            return Dyadic(self.num + (other.num << (self.exp - other.exp)), self.exp)
        return Dyadic((self.num << (other.exp - self.exp)) + other.num, other.exp)

    __radd__ = __add__

    def __sub__(self, other: "DyadicLike") -> "Dyadic":
        other = as_dyadic(other)
        e = max(self.exp, other.exp)
        return Dyadic((self.num << (e - self.exp)) - (other.num << (e - other.exp)), e)

    def __rsub__(self, other: "DyadicLike") -> "Dyadic":
        return as_dyadic(other) - self

    def __mul__(self, other: "DyadicLike") -> "Dyadic":
        other = as_dyadic(other)
        return Dyadic(self.num * other.num, self.exp + other.exp)

    __rmul__ = __mul__

    def __pow__(self, p: int) -> "Dyadic":
        if p < 0:
            raise ValueError("negative powers are not dyadic in general")
        return Dyadic(self.num**p, self.exp * p)

    def _cmp_key(self, other: "DyadicLike") -> tuple[int, int]:
        other = as_dyadic(other)
        e = max(self.exp, other.exp)
        return self.num << (e - self.exp), other.num << (e - other.exp)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Dyadic):
            return self.num == other.num and self.exp == other.exp
        if isinstance(other, int):
            return self.exp == 0 and self.num == other
        if isinstance(other, Fraction):
            return self.to_fraction() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def __lt__(self, other: "DyadicLike") -> bool:
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other: "DyadicLike") -> bool:
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other: "DyadicLike") -> bool:
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other: "DyadicLike") -> bool:
        a, b = self._cmp_key(other)
        return a >= b

    def __bool__(self) -> bool:
        return self.num != 0

    def __float__(self) -> float:
        # Fraction division rounds correctly even for huge numerators
        return float(Fraction(self.num, 1 << self.exp))

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def scaled_integer(self, exp: int) -> int:
        """Return ``self * 2**exp`` which must be an integer."""
        if exp < self.exp:
            raise ValueError(f"{self!r} * 2**{exp} is not an integer")
        return self.num << (exp - self.exp)

    def __repr__(self) -> str:
        return f"Dyadic({self.num}, {self.exp})"

    def __str__(self) -> str:
        return str(self.num) if self.exp == 0 else f"{self.num}/2^{self.exp}"


DyadicLike = Union[Dyadic, int]


def as_dyadic(x: DyadicLike | float) -> Dyadic:
    if isinstance(x, Dyadic):
        return x
    if isinstance(x, bool):
        return Dyadic(int(x))
    if isinstance(x, int):
        return Dyadic(x)
    if isinstance(x, float):
        return Dyadic.from_float(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Dyadic")
