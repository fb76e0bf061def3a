"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals.

Two fields are supported.  ``Field.RATIONAL`` stands in for the reals and
holds ``Fraction`` values; ``Field.GAUSSIAN`` stands in for the complex
numbers and holds :class:`GaussianRational` values.  Both types compare and
hash consistently, so ``GaussianRational(3) == Fraction(3)``.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from typing import Union

__all__ = [
    "Field",
    "GaussianRational",
    "I",
    "Scalar",
    "ScalarParseError",
    "as_scalar",
    "format_scalar",
    "parse_scalar",
]


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _new(cls, re: Fraction, im: Fraction) -> GaussianRational:
        # skips the Fraction() normalisation when both parts already are Fractions
        g = object.__new__(cls)
        g.re = re
        g.im = im
        return g

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational._new(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational._new(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return GaussianRational._new(self.re * other, self.im * other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            return GaussianRational._new(a * c, a * d)
        if not d:
            return GaussianRational._new(a * c, b * c)
        return GaussianRational._new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if not norm:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / norm,
            (self.im * o.re - self.re * o.im) / norm,
        )

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational._new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self) -> GaussianRational:
        return GaussianRational._new(self.re, -self.im)

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, GaussianRational]

I = GaussianRational(0, 1)


class Field(enum.Enum):
    RATIONAL = "Q"
    GAUSSIAN = "Q(i)"

    def coerce(self, x) -> Scalar:
        """Bring ``x`` into this field's canonical scalar type."""
        if isinstance(x, str):
            x = parse_scalar(x)
        if self is Field.RATIONAL:
            if isinstance(x, GaussianRational):
                if x.im:
                    raise ValueError(f"{format_scalar(x)} is not rational")
                return x.re
            if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
                return Fraction(x)
        else:
            if isinstance(x, GaussianRational):
                return x
            if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
                return GaussianRational(x)
        raise TypeError(f"cannot interpret {x!r} as a scalar of {self.value}")

    @property
    def zero(self) -> Scalar:
        return self.coerce(0)

    @property
    def one(self) -> Scalar:
        return self.coerce(1)


def as_scalar(x) -> Scalar:
    """Coerce ints and strings; pass exact scalars through unchanged."""
    if isinstance(x, (Fraction, GaussianRational)):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not an exact scalar: {x!r}")


class ScalarParseError(ValueError):
    pass


_RAT = r"\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"^[+-]?{_RAT}$")
_IMAG_RE = re.compile(rf"^(?P<sign>[+-]?)(?:(?P<im>{_RAT})\*?)?i$")
_GAUSS_RE = re.compile(rf"^(?P<re>[+-]?{_RAT})(?P<sign>[+-])(?:(?P<im>{_RAT})\*?)?i$")


def _rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ScalarParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p"``, ``"p/q"`` or a Gaussian form such as ``"1/2-3*i"``.

    Pure rationals come back as ``Fraction``; anything mentioning ``i``
    comes back as :class:`GaussianRational`.
    """
    if not isinstance(text, str):
        raise ScalarParseError(f"scalar must be a string, got {type(text).__name__}")
    s = text.replace(" ", "")
    if _RAT_RE.match(s):
        return _rational(s)
    m = _IMAG_RE.match(s)
    re_val = Fraction(0)
    if m is None:
        m = _GAUSS_RE.match(s)
        if m is None:
            raise ScalarParseError(f"malformed scalar {text!r}")
        re_val = _rational(m.group("re"))
    im = _rational(m.group("im")) if m.group("im") else Fraction(1)
    if m.group("sign") == "-":
        im = -im
    return GaussianRational(re_val, im)


def _format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Canonical string form; inverse of :func:`parse_scalar`."""
    if isinstance(x, GaussianRational):
        if not x.im:
            return _format_rational(x.re)
        im = _format_rational(abs(x.im))
        if x.re:
            sign = "-" if x.im < 0 else "+"
            return f"{_format_rational(x.re)}{sign}{im}*i"
        return f"-{im}*i" if x.im < 0 else f"{im}*i"
    if isinstance(x, int):
        x = Fraction(x)
    return _format_rational(x)
