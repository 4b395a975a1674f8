"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts.

    Values with a zero imaginary part compare and hash equal to the
    corresponding ``Fraction`` so mixed dictionaries behave.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, GaussianRational]

I = GaussianRational(0, 1)

def to_scalar(value) -> Scalar:
    """Coerce ``value`` to an exact scalar.

    Accepts ints, Fractions, GaussianRationals, and strings such as
    ``"3"``, ``"-1/2"``, ``"2i"``, ``"1/2-3/4i"``. Floats are rejected:
    every rank decision downstream must be exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, GaussianRational):
        return value if value.im else value.re
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except ValueError:
            pass
        body = text.replace(" ", "")
        if not body.endswith("i"):
            raise ValueError(f"cannot parse exact scalar from {value!r}")
        body = body[:-1]
        # split at the last sign that is not leading: "a+bi", "a-bi", "bi"
        cut = max(body.rfind("+"), body.rfind("-"))
        re_text, im_text = (body[:cut], body[cut:]) if cut > 0 else ("", body)
        try:
            re_part = Fraction(re_text) if re_text else Fraction(0)
            im_part = Fraction(im_text + "1") if im_text in ("", "+", "-") else Fraction(im_text)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot parse exact scalar from {value!r}") from None
        return to_scalar(GaussianRational(re_part, im_part))
    raise TypeError(f"unsupported scalar type {type(value).__name__}")


def format_scalar(x: Scalar) -> str:
    if isinstance(x, GaussianRational):
        if x.im == 0:
            return str(x.re)
        if x.re == 0:
            return f"{x.im}i"
        sign = "+" if x.im > 0 else "-"
        return f"{x.re}{sign}{abs(x.im)}i"
    return str(x)


def real_imag(x: Scalar) -> tuple[Fraction, Fraction]:
    if isinstance(x, GaussianRational):
        return x.re, x.im
    return x, Fraction(0)
