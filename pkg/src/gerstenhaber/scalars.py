"""Exact Gaussian rationals ``a + b*i`` with ``a, b`` in Q."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from .errors import ParseError

Number = Union[int, Fraction, "GaussianRational"]

_FULL = re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)\s*\+\s*(?P<im>[+-]?\d+(?:/\d+)?)\s*\*\s*i\s*$"
)
_IMAG = re.compile(r"^\s*(?P<im>[+-]?\d+(?:/\d+)?)?\s*\*?\s*i\s*$")


class GaussianRational:
    """An element of Q(i). Both parts are kept as reduced ``Fraction``s."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: int | Fraction | str = 0, im: int | Fraction | str = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)
        self._hash = None

    @classmethod
    def coerce(cls, x: Number | str) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """Parse ``"a/b+c/d*i"``, a plain rational ``"p/q"``, or ``"c/d*i"``."""
        m = _FULL.match(text)
        if m:
            return cls(Fraction(m["re"]), Fraction(m["im"]))
        m = _IMAG.match(text)
        if m:
            return cls(0, Fraction(m["im"]) if m["im"] else 1)
        try:
            return cls(Fraction(text.strip()), 0)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a Gaussian rational: {text!r}") from None

    def to_string(self) -> str:
        """Canonical serialization, always of the form ``p/q+r/s*i``."""
        return (
            f"{self.re.numerator}/{self.re.denominator}"
            f"+{self.im.numerator}/{self.im.denominator}*i"
        )

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        """|z|^2 as an exact rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return GaussianRational(a * c, 0)
            return GaussianRational(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        n = self.norm2()
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussianRational(self.re / other, self.im / other)
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.re, self.im)) if self.im else hash(self.re)
        return self._hash

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = "-" if self.im < 0 else "+"
        return f"({self.re}{sign}{_imag_str(abs(self.im))})"


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    if im.denominator == 1:
        return f"{im.numerator}i"
    return f"{im.numerator}i/{im.denominator}"


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)


def gr(x: Number | str, im: int | Fraction | str = 0) -> GaussianRational:
    """Shorthand constructor: ``gr(1, 2)`` is ``1 + 2i``, ``gr("1/3")`` is 1/3."""
    if im:
        return GaussianRational(Fraction(x), Fraction(im))
    return GaussianRational.coerce(x)
