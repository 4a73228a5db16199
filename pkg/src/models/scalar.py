"""Exact Gaussian rationals a/b + (c/d)i on top of fractions.Fraction."""

from fractions import Fraction
from typing import Tuple, Union

from src.exceptions import ScalarDivisionError

Rational = Union[int, Fraction]
ScalarLike = Union["Scalar", int, Fraction]

_ZERO = Fraction(0)


class Scalar:
    """Element of Q(i) with arbitrary-precision numerator and denominator.

    Instances are immutable; every operation returns a new value. Both parts
    are kept as ``Fraction`` so lowest terms and a positive denominator are
    maintained by construction, and zero has a single representation.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re: Rational = 0, im: Rational = 0) -> None:
        object.__setattr__(self, "_re", Fraction(re))
        object.__setattr__(self, "_im", Fraction(im))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "Scalar":
        obj = object.__new__(cls)
        object.__setattr__(obj, "_re", re)
        object.__setattr__(obj, "_im", im)
        return obj

    @classmethod
    def coerce(cls, value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls._raw(Fraction(value), _ZERO)
        raise TypeError(f"Cannot coerce {type(value).__name__} to Scalar")

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @property
    def re_num(self) -> int:
        return self._re.numerator

    @property
    def re_den(self) -> int:
        return self._re.denominator

    @property
    def im_num(self) -> int:
        return self._im.numerator

    @property
    def im_den(self) -> int:
        return self._im.denominator

    def parts(self) -> Tuple[Fraction, Fraction]:
        return self._re, self._im

    def is_zero(self) -> bool:
        return not self._re and not self._im

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: ScalarLike) -> "Scalar":
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return Scalar._raw(self._re + other, self._im)
        return Scalar._raw(self._re + other._re, self._im + other._im)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "Scalar":
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return Scalar._raw(self._re - other, self._im)
        return Scalar._raw(self._re - other._re, self._im - other._im)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return Scalar.coerce(other) - self

    def __mul__(self, other: ScalarLike) -> "Scalar":
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return Scalar._raw(self._re * other, self._im * other)
        a, b = self._re, self._im
        c, d = other._re, other._im
        if not b and not d:
            return Scalar._raw(a * c, _ZERO)
        return Scalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self) -> "Scalar":
        return Scalar._raw(-self._re, -self._im)

    def __pos__(self) -> "Scalar":
        return self

    def conj(self) -> "Scalar":
        return Scalar._raw(self._re, -self._im)

    def norm(self) -> Fraction:
        """Squared modulus a^2 + b^2."""
        return self._re * self._re + self._im * self._im

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ScalarDivisionError("Inverse of zero in Q(i)")
        if not self._im:
            return Scalar._raw(1 / self._re, _ZERO)
        n = self.norm()
        return Scalar._raw(self._re / n, -self._im / n)

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self * Scalar.coerce(other).inverse()

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self._re == other._re and self._im == other._im
        if isinstance(other, (int, Fraction)):
            return not self._im and self._re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self._im:
            return hash(self._re)
        return hash((self._re, self._im))

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        """Format as used in .lie files: ``3``, ``-1/2``, ``3/4i``, ``(1/2-i)``."""
        if not self._im:
            return str(self._re)
        imag = _imag_text(self._im)
        if not self._re:
            return imag
        sign = "-" if self._im < 0 else "+"
        return f"({self._re}{sign}{_imag_text(abs(self._im))})"


def _imag_text(value: Fraction) -> str:
    if value == 1:
        return "i"
    if value == -1:
        return "-i"
    return f"{value}i"


ZERO = Scalar._raw(_ZERO, _ZERO)
ONE = Scalar._raw(Fraction(1), _ZERO)
I = Scalar._raw(_ZERO, Fraction(1))
