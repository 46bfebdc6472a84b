"""Majorant functions ``phi(z) = 1 + B1 z + B2 z^2 + ...`` with ``B1 > 0``.

Two named families are provided, plus arbitrary coefficient lists:

* ``power_alpha(a)``: ``((1+z)/(1-z))**a`` for ``0 < a <= 1``
* ``mobius_beta(b)``: ``(1+(1-2b)z)/(1-z)`` for ``0 <= b < 1``

``conjugate=True`` yields ``phi(-z)`` (the ``(1-z)/(1+z)`` style variants).
Every bound depends on ``B1`` and ``|B1^2 - 2 B2|`` only, so a conjugate spec
keeps the base sequence in ``b`` and only its :meth:`PhiSpec.series` flips sign.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .series import EXACT, FLOAT, TruncatedSeries, divide, pow_fractional


class PhiError(ValueError):
    pass


def _real(x):
    if isinstance(x, numbers.Rational):
        return Fraction(x)
    if isinstance(x, complex):
        if x.imag != 0:
            raise PhiError(f"phi coefficients must be real, got {x!r}")
        return x.real
    return float(x)


@dataclass(frozen=True)
class PhiSpec:
    b: tuple
    label: str
    conjugate: bool = False
    family: str = "custom"
    param: object = None
    # extends the coefficient list beyond len(b) for the closed-form families
    extend: Callable[[int, str], tuple] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.b) < 2:
            raise PhiError("phi needs at least B1 and B2")
        object.__setattr__(self, "b", tuple(_real(x) for x in self.b))
        if not self.b[0] > 0:
            raise PhiError(f"B1 must be > 0, got {self.b[0]}")

    @property
    def b1(self):
        return self.b[0]

    @property
    def b2(self):
        return self.b[1]

    @property
    def exact(self) -> bool:
        return all(isinstance(x, Fraction) for x in self.b)

    def coefficients(self, order: int, backend: str = FLOAT) -> tuple:
        """``B1 .. B_order`` (zeros beyond the known sequence for custom specs)."""
        if self.extend is not None and order > len(self.b):
            bs = self.extend(order, backend)
        else:
            bs = self.b[:order] + (0,) * max(0, order - len(self.b))
        if self.conjugate:
            bs = tuple(-x if k % 2 == 0 else x for k, x in enumerate(bs))
        return bs

    def series(self, order: int, backend: str | None = None) -> TruncatedSeries:
        if backend is None:
            backend = EXACT if self.exact else FLOAT
        if backend == EXACT and not self.exact:
            raise PhiError(f"{self.label} has inexact coefficients")
        return TruncatedSeries.from_coeffs((1,) + tuple(self.coefficients(order, backend)), order, backend)

    def discriminant(self):
        """``B1^2 - 2 B2``; zero marks the degenerate Fekete-Szego case."""
        return self.b1 * self.b1 - 2 * self.b2


def _param(x, name):
    if isinstance(x, numbers.Rational):
        return Fraction(x)
    x = float(x)
    if x != x:
        raise PhiError(f"{name} is NaN")
    return x


def _power_series(alpha, order, backend):
    base = divide(TruncatedSeries.from_coeffs([1, 1], order, backend),
                  TruncatedSeries.from_coeffs([1, -1], order, backend))
    return pow_fractional(base, alpha)


def _power_coeffs(alpha):
    def extend(order, backend):
        s = _power_series(alpha, order, backend)
        if backend == EXACT:
            return tuple(c.re for c in s.coeffs[1:])
        bs = [c.real for c in s.coeffs[1:]]
        # pin the leading pair to their closed forms against rounding
        bs[:2] = [2 * alpha, 2 * alpha * alpha][: len(bs)]
        return tuple(bs)
    return extend


def power_alpha(alpha, conjugate: bool = False, order: int = 6) -> PhiSpec:
    """``((1+z)/(1-z))**alpha``: ``B1 = 2 alpha``, ``B2 = 2 alpha^2``."""
    alpha = _param(alpha, "alpha")
    if not 0 < alpha <= 1:
        raise PhiError(f"alpha must lie in (0, 1], got {alpha}")
    extend = _power_coeffs(alpha)
    backend = EXACT if isinstance(alpha, Fraction) else FLOAT
    b = extend(order, backend)
    return PhiSpec(b, f"power:{alpha}", conjugate, "power", alpha, extend)


def _mobius_coeffs(beta):
    def extend(order, backend):
        num = TruncatedSeries.from_coeffs([1, 1 - 2 * beta], order, backend)
        den = TruncatedSeries.from_coeffs([1, -1], order, backend)
        s = divide(num, den)
        if backend == EXACT:
            return tuple(c.re for c in s.coeffs[1:])
        return tuple(c.real for c in s.coeffs[1:])
    return extend


def mobius_beta(beta, conjugate: bool = False, order: int = 6) -> PhiSpec:
    """``(1+(1-2 beta) z)/(1-z)``: every ``B_k = 2(1 - beta)``."""
    beta = _param(beta, "beta")
    if not 0 <= beta < 1:
        raise PhiError(f"beta must lie in [0, 1), got {beta}")
    extend = _mobius_coeffs(beta)
    backend = EXACT if isinstance(beta, Fraction) else FLOAT
    return PhiSpec(extend(order, backend), f"mobius:{beta}", conjugate, "mobius", beta, extend)


def custom_phi(coeffs: Sequence, label: str | None = None) -> PhiSpec:
    coeffs = tuple(coeffs)
    if len(coeffs) == 1:
        coeffs = coeffs + (0,)
    if label is None:
        label = "custom:" + ",".join(str(c) for c in coeffs)
    return PhiSpec(coeffs, label)


def _number(text: str):
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError:
        return float(text)


def parse_phi(spec: str) -> PhiSpec:
    """Parse ``power:a``, ``mobius:b`` or ``custom:B1,B2[,B3...]``.

    Decimal literals are read as exact fractions, so ``mobius:0.5`` gives
    ``B1 = B2 = 1`` exactly.  A trailing ``~`` on the family name
    (``power~:0.5``) selects the conjugate variant.
    """
    family, sep, rest = spec.partition(":")
    if not sep or not rest:
        raise PhiError(f"malformed phi spec {spec!r}; expected family:params")
    conjugate = family.endswith("~")
    family = family.rstrip("~").strip().lower()
    try:
        values = [_number(x) for x in rest.split(",")]
    except ValueError:
        raise PhiError(f"malformed numbers in phi spec {spec!r}") from None
    if family in ("power", "alpha"):
        if len(values) != 1:
            raise PhiError("power takes exactly one parameter")
        return power_alpha(values[0], conjugate)
    if family in ("mobius", "beta"):
        if len(values) != 1:
            raise PhiError("mobius takes exactly one parameter")
        return mobius_beta(values[0], conjugate)
    if family == "custom":
        if conjugate:
            raise PhiError("custom specs take explicit coefficients; conjugate is not supported")
        return custom_phi(values, label=spec)
    raise PhiError(f"unknown phi family {family!r}")
