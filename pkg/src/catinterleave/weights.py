"""Exact non-negative extended rationals.

Every weight and distance in the package is a :class:`Weight`: either a
non-negative :class:`fractions.Fraction` or infinity.  Addition saturates at
infinity and the order is total, so minima and maxima over finite families
are always defined.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Union

WeightLike = Union["Weight", int, str, Fraction]


@total_ordering
class Weight:
    """A value in ``[0, inf]`` with rational finite part."""

    __slots__ = ("_value",)

    def __init__(self, value: WeightLike = 0):
        if isinstance(value, Weight):
            self._value = value._value
            return
        if isinstance(value, str):
            text = value.strip().lower()
            if text in ("inf", "infinity", "∞"):
                self._value = None
                return
            value = Fraction(text)
        elif isinstance(value, float):
            raise TypeError("floats are not accepted; use a Fraction or a 'p/q' string")
        value = Fraction(value)
        if value < 0:
            raise ValueError("weight must be non-negative")
        self._value = value

    @classmethod
    def inf(cls) -> "Weight":
        w = cls.__new__(cls)
        w._value = None
        return w

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    @property
    def value(self) -> Fraction:
        if self._value is None:
            raise ValueError("infinite weight has no rational value")
        return self._value

    @property
    def kind(self) -> str:
        return "finite" if self.is_finite else "infinite"

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def __add__(self, other: WeightLike) -> "Weight":
        other = as_weight(other)
        if self._value is None or other._value is None:
            return INF
        return Weight(self._value + other._value)

    __radd__ = __add__

    def __sub__(self, other: WeightLike) -> "Weight":
        # truncated difference; inf - finite = inf
        other = as_weight(other)
        if other._value is None:
            if self._value is None:
                raise ValueError("inf - inf is undefined")
            return ZERO
        if self._value is None:
            return INF
        return Weight(max(self._value - other._value, Fraction(0)))

    def half(self) -> "Weight":
        if self._value is None:
            return INF
        return Weight(self._value / 2)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, str)):
            try:
                other = Weight(other)
            except (ValueError, TypeError):
                return NotImplemented
        if not isinstance(other, Weight):
            return NotImplemented
        return self._value == other._value

    def __lt__(self, other: WeightLike) -> bool:
        other = as_weight(other)
        if self._value is None:
            return False
        if other._value is None:
            return True
        return self._value < other._value

    def __hash__(self) -> int:
        # agrees with == on ints and Fractions
        return hash(self._value) if self._value is not None else hash(("Weight", None))

    def __str__(self) -> str:
        if self._value is None:
            return "inf"
        return str(self._value)

    def __repr__(self) -> str:
        return f"Weight({str(self)!r})"


INF = Weight.inf()
ZERO = Weight(0)


def as_weight(value: WeightLike) -> Weight:
    return value if isinstance(value, Weight) else Weight(value)


def wmin(values: Iterable[WeightLike]) -> Weight:
    """Minimum of a possibly empty family; the empty minimum is ``inf``."""
    best = INF
    for v in values:
        v = as_weight(v)
        if v < best:
            best = v
    return best


def wmax(values: Iterable[WeightLike]) -> Weight:
    """Maximum of a possibly empty family; the empty maximum is ``0``."""
    best = ZERO
    for v in values:
        v = as_weight(v)
        if v > best:
            best = v
    return best
