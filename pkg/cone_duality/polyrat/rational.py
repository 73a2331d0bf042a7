"""
Exact rational scalars and vectors.

Scalars are `fractions.Fraction` (always in lowest terms with a positive denominator).
Vectors are plain tuples of Fractions so they hash, compare lexicographically and can be
used directly as canonical sort keys.
"""

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Rational = Fraction
RatVector = tuple[Fraction, ...]
RationalLike = Union[int, str, Fraction]


class Infinity:
    """+∞ as a first-class constant value. Compares above every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("inf")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and other > 0:
            return self
        raise ValueError(f"INF can only be scaled by a positive rational, got {other}")

    __rmul__ = __mul__


INF = Infinity()
Extended = Union[Fraction, Infinity]


def parse_rational(value: RationalLike) -> Fraction:
    """
    Parse an exact rational from JSON input.

    Parameters:
        value: an int, a Fraction, or a string such as "3", "-2/7" or "0.25"

    Returns:
        Fraction: the exact value
    """
    if isinstance(value, bool):
        raise ValueError(f"Booleans are not rationals: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Cannot parse rational from {value!r}") from e
    raise ValueError(f"Expected an int or a 'p/q' string, got {type(value).__name__}: {value!r}")


def parse_extended(value) -> Extended:
    """Like parse_rational but also accepts "inf"."""
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    return parse_rational(value)


def format_rational(value: Extended) -> Union[int, str]:
    """Integers serialize as JSON ints, everything else as a "p/q" string, +∞ as "inf"."""
    if value is INF:
        return "inf"
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def vector(values: Iterable[RationalLike]) -> RatVector:
    return tuple(parse_rational(v) for v in values)


def zeros(dim: int) -> RatVector:
    return (Fraction(0),) * dim


def unit(dim: int, index: int) -> RatVector:
    return tuple(Fraction(1 if i == index else 0) for i in range(dim))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: RatVector, v: RatVector) -> RatVector:
    return tuple(a + b for a, b in zip(u, v))


def scale(u: RatVector, factor: Fraction) -> RatVector:
    return tuple(a * factor for a in u)


def neg(u: RatVector) -> RatVector:
    return tuple(-a for a in u)


def is_zero(u: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in u)


def primitive(u: Sequence[Fraction]) -> RatVector:
    """Positive multiple of u with coprime integer entries. The zero vector is returned as is."""
    if is_zero(u):
        return tuple(Fraction(0) for _ in u)
    common_denominator = lcm(*(Fraction(a).denominator for a in u))
    integers = [int(a * common_denominator) for a in u]
    divisor = gcd(*integers)
    return tuple(Fraction(a // divisor) for a in integers)
