"""Truncated power series over complex scalars.

Two scalar backends share one interface:

* ``"exact"``: coefficients are :class:`~biuniv.scalars.QQi` (Gaussian
  rationals), so algebraic identities can be checked with ``==``.
* ``"float"``: coefficients are Python ``complex``.

A series of order ``N`` stores ``c_0 .. c_N``.  Binary operations truncate to
the smaller order of their inputs.  Values are immutable.
"""

from __future__ import annotations

import json
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import QQi, fraction_str

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)

#: zero tolerance for float-mode predicates
FLOAT_TOL = 1e-12


class SeriesError(ValueError):
    """Raised when a series operation's precondition is violated."""


def _is_exact_scalar(x) -> bool:
    return isinstance(x, (QQi, numbers.Rational, str))


def _convert(x, backend):
    if backend == EXACT:
        return QQi.coerce(x)
    if isinstance(x, QQi):
        return complex(x)
    if isinstance(x, str):
        return complex(float(Fraction(x)))
    return complex(x)


def _is_zero(x, backend, tol=FLOAT_TOL) -> bool:
    if backend == EXACT:
        return not x
    return abs(x) <= tol


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple
    backend: str = FLOAT

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise SeriesError(f"unknown backend {self.backend!r}")
        if not self.coeffs:
            raise SeriesError("a series needs at least the constant coefficient")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order: int | None = None, backend: str | None = None):
        """Build a series, padding with zeros (or truncating) to ``order``.

        With ``backend=None`` the backend is exact when every coefficient is a
        rational, a :class:`QQi` or a ``"p/q"`` string, and float otherwise.
        """
        coeffs = list(coeffs)
        if backend is None:
            backend = EXACT if all(_is_exact_scalar(c) for c in coeffs) else FLOAT
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise SeriesError("order must be >= 0")
        coeffs = coeffs[: order + 1] + [0] * (order + 1 - len(coeffs))
        return cls(tuple(_convert(c, backend) for c in coeffs), backend)

    @classmethod
    def zero(cls, order: int, backend: str = FLOAT):
        return cls.from_coeffs([], order, backend)

    @classmethod
    def one(cls, order: int, backend: str = FLOAT):
        return cls.from_coeffs([1], order, backend)

    @classmethod
    def identity(cls, order: int, backend: str = FLOAT):
        """The series ``z``."""
        return cls.from_coeffs([0, 1], order, backend)

    @classmethod
    def normalized(cls, tail: Sequence, order: int | None = None, backend: str | None = None):
        """``z + tail[0] z^2 + tail[1] z^3 + ...``"""
        return cls.from_coeffs([0, 1, *tail], order, backend)

    @classmethod
    def mfold(cls, m: int, tail: Sequence, order: int | None = None, backend: str | None = None):
        """``z + tail[0] z^{m+1} + tail[1] z^{2m+1} + ...``"""
        if m < 1:
            raise SeriesError("m must be >= 1")
        top = 1 + m * len(tail)
        coeffs = [0] * (top + 1)
        coeffs[1] = 1
        for k, a in enumerate(tail, start=1):
            coeffs[k * m + 1] = a
        return cls.from_coeffs(coeffs, order, backend)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        if isinstance(n, int) and n > self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise SeriesError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1], self.backend)

    def to_backend(self, backend: str) -> "TruncatedSeries":
        if backend == self.backend:
            return self
        if backend == EXACT:
            raise SeriesError("float series cannot be converted to exact")
        return TruncatedSeries(tuple(complex(c) for c in self.coeffs), FLOAT)

    def is_normalized(self, tol: float = FLOAT_TOL) -> bool:
        if self.order < 1:
            return False
        return _is_zero(self.coeffs[0], self.backend, tol) and _is_zero(
            self.coeffs[1] - 1, self.backend, tol
        )

    def __call__(self, z):
        """Evaluate the truncated polynomial at a point (Horner)."""
        out = 0
        for c in reversed(self.coeffs):
            out = out * z + c
        return out

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return add(self, other)
        return add(self, TruncatedSeries.from_coeffs([other], self.order, self.backend))

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.backend == other.backend and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.backend, self.coeffs))

    def allclose(self, other: "TruncatedSeries", tol: float = FLOAT_TOL) -> bool:
        n = min(self.order, other.order)
        return all(abs(complex(a) - complex(b)) <= tol for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]))

    def __str__(self):
        terms = []
        for n, c in enumerate(self.coeffs):
            if _is_zero(c, self.backend):
                continue
            var = "" if n == 0 else ("z" if n == 1 else f"z^{n}")
            terms.append(f"{c}{'*' + var if var else ''}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(z^{self.order + 1})"

    # JSON: {"order": N, "coeffs": [[re, im], ...]}; exact rationals as "p/q"
    def to_dict(self) -> dict:
        if self.backend == EXACT:
            coeffs = [[fraction_str(c.re), fraction_str(c.im)] for c in self.coeffs]
        else:
            coeffs = [[c.real, c.imag] for c in self.coeffs]
        return {"order": self.order, "coeffs": coeffs}

    @classmethod
    def from_dict(cls, data: dict) -> "TruncatedSeries":
        try:
            order = int(data["order"])
            raw = data["coeffs"]
        except (KeyError, TypeError) as exc:
            raise SeriesError(f"malformed series JSON: {exc}") from None
        if len(raw) != order + 1:
            raise SeriesError(f"series JSON has {len(raw)} coefficients for order {order}")
        exact = all(isinstance(v, str) for pair in raw for v in _pair(pair))
        if exact:
            coeffs = [QQi(Fraction(re), Fraction(im)) for re, im in map(_pair, raw)]
            return cls(tuple(coeffs), EXACT)
        coeffs = [complex(float(Fraction(re)) if isinstance(re, str) else float(re),
                          float(Fraction(im)) if isinstance(im, str) else float(im))
                  for re, im in map(_pair, raw)]
        return cls(tuple(coeffs), FLOAT)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "TruncatedSeries":
        return cls.from_dict(json.loads(text))


def _pair(entry):
    if isinstance(entry, (list, tuple)):
        if len(entry) != 2:
            raise SeriesError(f"coefficient entry {entry!r} is not [re, im]")
        return entry[0], entry[1]
    return entry, "0" if isinstance(entry, str) else 0


def _check_backends(*series: TruncatedSeries) -> str:
    backends = {s.backend for s in series}
    if len(backends) != 1:
        raise SeriesError(f"backend mismatch: {sorted(backends)}")
    return backends.pop()


def _scalar(x, backend):
    if backend == EXACT:
        try:
            return QQi.coerce(x)
        except TypeError:
            raise SeriesError(f"{x!r} is not an exact scalar") from None
    return complex(x)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    backend = _check_backends(a, b)
    n = min(a.order, b.order)
    return TruncatedSeries(tuple(a.coeffs[i] + b.coeffs[i] for i in range(n + 1)), backend)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    backend = _check_backends(a, b)
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    zero = _scalar(0, backend)
    out = []
    for k in range(n + 1):
        acc = zero
        for i in range(k + 1):
            if ac[i] and bc[k - i]:
                acc = acc + ac[i] * bc[k - i]
        out.append(acc)
    return TruncatedSeries(tuple(out), backend)


def scale(a: TruncatedSeries, k) -> TruncatedSeries:
    k = _scalar(k, a.backend)
    return TruncatedSeries(tuple(c * k for c in a.coeffs), a.backend)


def derivative(a: TruncatedSeries) -> TruncatedSeries:
    """Termwise derivative; a series of order N yields order N-1."""
    if a.order == 0:
        return TruncatedSeries.zero(0, a.backend)
    return TruncatedSeries(tuple(n * a.coeffs[n] for n in range(1, a.order + 1)), a.backend)


def shift_down(a: TruncatedSeries) -> TruncatedSeries:
    """Divide by ``z``; requires ``c_0 == 0``."""
    if not _is_zero(a.coeffs[0], a.backend):
        raise SeriesError("cannot divide by z: constant term is nonzero")
    if a.order == 0:
        raise SeriesError("cannot divide an order-0 series by z")
    return TruncatedSeries(a.coeffs[1:], a.backend)


def shift_up(a: TruncatedSeries, k: int = 1) -> TruncatedSeries:
    """Multiply by ``z^k``; the order grows by ``k``."""
    zero = _scalar(0, a.backend)
    return TruncatedSeries((zero,) * k + a.coeffs, a.backend)


def spread(a: TruncatedSeries, m: int) -> TruncatedSeries:
    """Substitute ``z -> z^m``; order N becomes m*N."""
    zero = _scalar(0, a.backend)
    out = [zero] * (m * a.order + 1)
    for n, c in enumerate(a.coeffs):
        out[m * n] = c
    return TruncatedSeries(tuple(out), a.backend)


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(z))`` truncated to the smaller order."""
    backend = _check_backends(outer, inner)
    if not _is_zero(inner.coeffs[0], backend):
        raise SeriesError("compose: inner series must have zero constant term")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    result = TruncatedSeries.from_coeffs([outer.coeffs[n]], n, backend)
    for k in range(n - 1, -1, -1):
        result = mul(result, inner)
        result = TruncatedSeries((result.coeffs[0] + outer.coeffs[k],) + result.coeffs[1:], backend)
    return result


def reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    c0 = a.coeffs[0]
    if _is_zero(c0, a.backend):
        raise SeriesError("reciprocal: constant term must be nonzero")
    inv0 = 1 / c0
    out = [inv0]
    for n in range(1, a.order + 1):
        acc = _scalar(0, a.backend)
        for k in range(1, n + 1):
            if a.coeffs[k]:
                acc = acc + a.coeffs[k] * out[n - k]
        out.append(-acc * inv0)
    return TruncatedSeries(tuple(out), a.backend)


def divide(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return mul(a, reciprocal(b))


def _require_unit_constant(a: TruncatedSeries, name: str):
    if not _is_zero(a.coeffs[0] - 1, a.backend):
        raise SeriesError(f"{name}: constant term must be 1 (principal branch)")


def log1(a: TruncatedSeries) -> TruncatedSeries:
    """Principal ``log(a)`` for ``a(0) == 1``, via ``log(a)' = a'/a``."""
    _require_unit_constant(a, "log1")
    if a.order == 0:
        return TruncatedSeries.zero(0, a.backend)
    q = mul(derivative(a), reciprocal(a.truncate(a.order - 1)))
    zero = _scalar(0, a.backend)
    return TruncatedSeries((zero,) + tuple(q.coeffs[n - 1] / n for n in range(1, a.order + 1)), a.backend)


def exp0(a: TruncatedSeries) -> TruncatedSeries:
    """``exp(a)`` for ``a(0) == 0``, via ``n e_n = sum k a_k e_{n-k}``."""
    if not _is_zero(a.coeffs[0], a.backend):
        raise SeriesError("exp0: constant term must be 0")
    out = [_scalar(1, a.backend)]
    for n in range(1, a.order + 1):
        acc = _scalar(0, a.backend)
        for k in range(1, n + 1):
            if a.coeffs[k]:
                acc = acc + k * a.coeffs[k] * out[n - k]
        out.append(acc / n)
    return TruncatedSeries(tuple(out), a.backend)


def pow_fractional(a: TruncatedSeries, r) -> TruncatedSeries:
    """Principal ``a ** r`` for ``a(0) == 1``.

    In exact mode ``r`` must be rational; ``exp(r log a)`` then stays exact
    because both log and exp recurrences only divide by integers.
    """
    _require_unit_constant(a, "pow_fractional")
    if a.backend == EXACT:
        if not isinstance(r, numbers.Rational):
            raise SeriesError(f"exact pow_fractional needs a rational exponent, got {r!r}")
        r = Fraction(r)
    else:
        r = float(r)
    return exp0(scale(log1(a), r))


def solve_inner(outer: TruncatedSeries, target: TruncatedSeries) -> TruncatedSeries:
    """Find ``w`` with ``w(0) == 0`` and ``outer(w) == target`` to truncation.

    Needs ``outer[1] != 0`` and ``target[0] == outer[0]``.  Coefficient ``n``
    of ``w`` enters ``[z^n] outer(w)`` only through ``outer[1] * w_n``; the
    rest depends on ``w_1 .. w_{n-1}``, so the system is solved by forward
    substitution while the table of powers ``w^k`` is filled column by column.
    """
    backend = _check_backends(outer, target)
    n_max = min(outer.order, target.order)
    b = outer.coeffs
    lead = b[1] if n_max >= 1 else None
    if n_max >= 1 and _is_zero(lead, backend):
        raise SeriesError("solve_inner: outer series has zero linear coefficient")
    if not _is_zero(target.coeffs[0] - b[0], backend):
        raise SeriesError("solve_inner: constant terms of outer and target differ")
    zero = _scalar(0, backend)
    w = [zero] * (n_max + 1)
    # powers[k][n] = [z^n] w^k, for k >= 1
    powers = [None] + [[zero] * (n_max + 1) for _ in range(n_max)]
    for n in range(1, n_max + 1):
        for k in range(2, n + 1):
            prev = powers[k - 1]
            acc = zero
            for j in range(1, n - k + 2):
                if w[j] and prev[n - j]:
                    acc = acc + w[j] * prev[n - j]
            powers[k][n] = acc
        rest = zero
        for k in range(2, n + 1):
            if b[k] and powers[k][n]:
                rest = rest + b[k] * powers[k][n]
        w[n] = (target.coeffs[n] - rest) / lead
        powers[1][n] = w[n]
    return TruncatedSeries(tuple(w), backend)


def revert(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse ``g`` of a normalized ``f``: ``f(g(w)) == w``."""
    if not f.is_normalized():
        raise SeriesError("revert: series must be normalized (c0 = 0, c1 = 1)")
    return solve_inner(f, TruncatedSeries.identity(f.order, f.backend))


def inverse_mfold_closed_form(m: int, a1, a2, a3):
    """Leading inverse coefficients of an m-fold symmetric function.

    For ``f = z + a1 z^{m+1} + a2 z^{2m+1} + a3 z^{3m+1} + ...`` returns the
    coefficients of ``w^{m+1}``, ``w^{2m+1}``, ``w^{3m+1}`` in ``f^{-1}``.
    Works for any numeric type supporting ring operations.
    """
    if m < 1:
        raise SeriesError("m must be >= 1")
    g1 = -a1
    g2 = (m + 1) * a1 * a1 - a2
    g3 = -(Fraction(m + 1, 2) * (3 * m + 2) * a1 ** 3 - (3 * m + 2) * a1 * a2 + a3)
    return g1, g2, g3


def mfold_lift(f: TruncatedSeries, m: int, order: int | None = None) -> TruncatedSeries:
    """``(f(z^m))^{1/m}`` on the principal branch.

    For ``f`` of order N the natural order of the result is ``m*(N-1) + 1``;
    pass ``order`` to truncate further.
    """
    if m < 1:
        raise SeriesError("m must be >= 1")
    if not f.is_normalized():
        raise SeriesError("mfold_lift: series must be normalized")
    if m == 1:
        out = f
    else:
        q = spread(shift_down(f), m)
        r = Fraction(1, m) if f.backend == EXACT else 1.0 / m
        out = shift_up(pow_fractional(q, r))
    if order is not None:
        out = out.truncate(min(order, out.order))
    return out


def is_mfold_symmetric(f: TruncatedSeries, m: int, tol: float = FLOAT_TOL) -> bool:
    """Only exponents ``== 1 (mod m)`` carry nonzero coefficients."""
    return all(_is_zero(c, f.backend, tol) for n, c in enumerate(f.coeffs) if n % m != 1 % m)


def is_mfold_caratheodory(p: TruncatedSeries, m: int, tol: float = FLOAT_TOL) -> bool:
    """Shape ``1 + p_m z^m + p_{2m} z^{2m} + ...``."""
    if not _is_zero(p.coeffs[0] - 1, p.backend, tol):
        return False
    return all(_is_zero(c, p.backend, tol) for n, c in enumerate(p.coeffs) if n % m != 0)


def _catalog_coeff(name: str, n: int) -> Fraction:
    if n == 0:
        return Fraction(0)
    if name == "z/(1-z)":
        return Fraction(1)
    if name == "-log(1-z)":
        return Fraction(1, n)
    if name == "atanh":
        return Fraction(1, n) if n % 2 else Fraction(0)
    if name == "koebe":
        return Fraction(n)
    if name == "z-z^2/2":
        return {1: Fraction(1), 2: Fraction(-1, 2)}.get(n, Fraction(0))
    if name == "z/(1-z^2)":
        return Fraction(1) if n % 2 else Fraction(0)
    raise SeriesError(f"unknown catalog function {name!r}")


#: normalized functions quoted as examples for the bi-univalent class
CATALOG = ("z/(1-z)", "-log(1-z)", "atanh", "koebe", "z-z^2/2", "z/(1-z^2)")


def catalog_function(name: str, order: int, backend: str = EXACT) -> TruncatedSeries:
    """Taylor polynomial of a named normalized function.

    ``atanh`` is ``(1/2) log((1+z)/(1-z))``; ``koebe`` is ``z/(1-z)^2``.
    """
    return TruncatedSeries.from_coeffs([_catalog_coeff(name, n) for n in range(order + 1)], order, backend)
