"""Exact complex rationals.

A :class:`QQi` is a pair of :class:`fractions.Fraction` (real, imaginary).
It interoperates with ``int`` and ``Fraction``; mixing with ``float`` or
``complex`` is refused so exact results never silently degrade.
"""

from __future__ import annotations

import numbers
from fractions import Fraction


def _as_pair(x):
    if isinstance(x, QQi):
        return x.re, x.im
    if isinstance(x, numbers.Rational):
        return Fraction(x), Fraction(0)
    return None


class QQi:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "QQi":
        if isinstance(x, QQi):
            return x
        if isinstance(x, numbers.Rational):
            return cls(x)
        if isinstance(x, str):
            return parse_qqi(x)
        raise TypeError(f"cannot represent {x!r} exactly")

    def __add__(self, other):
        p = _as_pair(other)
        if p is None:
            return NotImplemented
        return QQi(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = _as_pair(other)
        if p is None:
            return NotImplemented
        return QQi(self.re - p[0], self.im - p[1])

    def __rsub__(self, other):
        p = _as_pair(other)
        if p is None:
            return NotImplemented
        return QQi(p[0] - self.re, p[1] - self.im)

    def __mul__(self, other):
        p = _as_pair(other)
        if p is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = p
        if b == 0 and d == 0:
            return QQi(a * c)
        return QQi(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = _as_pair(other)
        if p is None:
            return NotImplemented
        c, d = p
        if d == 0:
            if c == 0:
                raise ZeroDivisionError("QQi division by zero")
            return QQi(self.re / c, self.im / c)
        n = c * c + d * d
        return QQi((self.re * c + self.im * d) / n, (self.im * c - self.re * d) / n)

    def __rtruediv__(self, other):
        p = _as_pair(other)
        if p is None:
            return NotImplemented
        return QQi(*p) / self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self ** -n)
        out, base = QQi(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return abs(complex(self))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        p = _as_pair(other)
        if p is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return f"QQi({self.re})"
        return f"QQi({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


def parse_qqi(text: str) -> QQi:
    """Parse ``"p/q"`` or ``"p"`` into a real :class:`QQi`."""
    return QQi(Fraction(text.strip()))


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
