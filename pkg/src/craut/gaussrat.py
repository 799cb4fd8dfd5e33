"""Exact Gaussian rationals ``a + b*i`` with ``a, b`` in Q."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["GaussRat", "ZERO", "ONE", "I"]

_FR0 = Fraction(0)
_FR1 = Fraction(1)


def _fr(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussRat:
    """Element of Q(i).

    Both parts are kept as :class:`fractions.Fraction`, which already stores
    values in lowest terms with a positive denominator.  Instances are
    immutable and hashable.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussRat):
            if im:
                raise TypeError("imaginary part given twice")
            self.re, self.im = re.re, re.im
            return
        self.re = _fr(re)
        self.im = _fr(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> GaussRat:
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, x) -> GaussRat:
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        return cls._raw(_fr(x), _FR0)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, GaussRat):
            return GaussRat._raw(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussRat._raw(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussRat):
            return GaussRat._raw(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussRat._raw(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRat._raw(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussRat):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return GaussRat._raw(a * c, _FR0)
            return GaussRat._raw(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussRat._raw(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("GaussRat division by zero")
            return GaussRat._raw(self.re / other, self.im / other)
        if not isinstance(other, GaussRat):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRat._raw(_fr(other), _FR0) * self.inverse()
        return NotImplemented

    def __neg__(self):
        return GaussRat._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> GaussRat:
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("GaussRat division by zero")
            return GaussRat._raw(1 / a, _FR0)
        n = a * a + b * b
        return GaussRat._raw(a / n, -b / n)

    def conj(self) -> GaussRat:
        if not self.im:
            return self
        return GaussRat._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    # -- comparisons ----------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- text -----------------------------------------------------------
    def __repr__(self):
        return f"GaussRat({str(self)!r})"

    def __str__(self):
        re_, im = self.re, self.im
        if not im:
            return _qstr(re_)
        if im == 1:
            ims = "i"
        elif im == -1:
            ims = "-i"
        else:
            ims = f"{_qstr(im)}*i"
        if not re_:
            return ims
        sign = "-" if ims.startswith("-") else "+"
        return f"{_qstr(re_)}{sign}{ims.lstrip('-')}"

    @classmethod
    def parse(cls, text: str) -> GaussRat:
        """Parse ``"3/2"``, ``"-i"``, ``"2*i"``, ``"1/2-3/4*i"`` and the like."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty coefficient")
        m = _GAUSS_RE.fullmatch(s)
        if m is None:
            raise ValueError(f"malformed Gaussian rational: {text!r}")
        total = ZERO
        for sign, num, imag in _terms(s):
            val = Fraction(num) if num else _FR1
            if sign == "-":
                val = -val
            total = total + (GaussRat._raw(_FR0, val) if imag else GaussRat._raw(val, _FR0))
        return total


def _qstr(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_NUM = r"\d+(?:/\d+)?"
_PART = rf"(?:{_NUM}(?:\*i)?|i)"
_GAUSS_RE = re.compile(rf"[+-]?{_PART}(?:[+-]{_PART})?")
_TERM_RE = re.compile(rf"([+-]?)(?:({_NUM})(\*i)?|(i))")


def _terms(s: str):
    for m in _TERM_RE.finditer(s):
        sign, num, star_i, bare_i = m.groups()
        yield sign, num, bool(star_i or bare_i)


ZERO = GaussRat._raw(_FR0, _FR0)
ONE = GaussRat._raw(_FR1, _FR0)
I = GaussRat._raw(_FR0, _FR1)
