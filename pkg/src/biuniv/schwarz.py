"""Subordination made executable.

For ``f`` in the class, ``F = z f'/((1-l) f + l z f') = phi(u)`` and
``G = w g'/((1-l) g + l w g') = phi(v)`` with ``g = f^{-1}`` and Schwarz
functions ``u, v``.  Given ``f`` we solve for the coefficients of ``u`` and
``v`` order by order and check the disc constraints on their leading
coefficients.  Only the orders up to ``2m`` are certified; a finite truncation
cannot establish ``|u| < 1`` on the whole disc.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import ClassParams
from .ma_minda import PhiSpec
from .scalars import QQi
from .series import (
    EXACT,
    FLOAT,
    SeriesError,
    TruncatedSeries,
    compose,
    derivative,
    divide,
    is_mfold_symmetric,
    revert,
    scale,
    shift_down,
    solve_inner,
)

#: residual and disc-constraint tolerance for float certificates
CERT_TOL = 1e-10


@dataclass(frozen=True)
class SchwarzPoint:
    b_m: complex
    b_2m: complex
    c_m: complex
    c_2m: complex

    def disc_slack(self) -> float:
        """Smallest slack over the four disc inequalities (negative = violated)."""
        rb = 1 - abs(self.b_m) ** 2
        rc = 1 - abs(self.c_m) ** 2
        return min(1 - abs(self.b_m), rb - abs(self.b_2m), 1 - abs(self.c_m), rc - abs(self.c_2m))

    def is_feasible(self, tol: float = CERT_TOL) -> bool:
        return self.disc_slack() >= -tol

    def is_coupled(self, tol: float = CERT_TOL) -> bool:
        return abs(self.c_m + self.b_m) <= tol

    def as_complex(self) -> "SchwarzPoint":
        return SchwarzPoint(*(complex(x) for x in (self.b_m, self.b_2m, self.c_m, self.c_2m)))


def class_functional(f: TruncatedSeries, lam) -> TruncatedSeries:
    """``z f' / ((1-lam) f + lam z f')`` with the common factor ``z`` removed.

    A normalized ``f`` of order N gives a series of order N-1 with constant
    term 1.  The same map applied to ``g = f^{-1}`` is the inverse-side
    functional ``w g'/((1-lam) g + lam w g')``.
    """
    if not f.is_normalized():
        raise SeriesError("class_functional: f must be normalized")
    df = derivative(f)
    den = scale(shift_down(f), 1 - lam) + scale(df, lam)
    return divide(df, den)


def solve_schwarz(F: TruncatedSeries, phi: PhiSpec, order: int | None = None) -> TruncatedSeries:
    """Schwarz coefficients ``u`` with ``phi(u) == F`` up to ``order``."""
    order = F.order if order is None else min(order, F.order)
    outer = phi.series(order, F.backend if F.backend == FLOAT or phi.exact else FLOAT)
    if outer.backend != F.backend:
        F = F.to_backend(FLOAT)
    return solve_inner(outer, F.truncate(order))


@dataclass(frozen=True)
class MembershipCertificate:
    order: int
    feasible: bool
    u_coeffs: tuple
    v_coeffs: tuple
    point: SchwarzPoint
    a_m1: complex
    a_2m1: complex
    residuals: dict = field(default_factory=dict)
    violations: tuple = ()
    backend: str = FLOAT

    def to_dict(self) -> dict:
        def pair(x):
            x = complex(x)
            return [x.real, x.imag]
        return {
            "order": self.order,
            "backend": self.backend,
            "feasible": self.feasible,
            "a_m1": pair(self.a_m1),
            "a_2m1": pair(self.a_2m1),
            "point": {k: pair(getattr(self.point, k)) for k in ("b_m", "b_2m", "c_m", "c_2m")},
            "u_coeffs": [pair(c) for c in self.u_coeffs],
            "v_coeffs": [pair(c) for c in self.v_coeffs],
            "residuals": self.residuals,
            "violations": list(self.violations),
            "scope": "necessary conditions through order 2m only; univalence is not tested",
        }


def _abs2(x):
    return x.abs2() if isinstance(x, QQi) else abs(x) ** 2


def _disc_ok(lead, second, exact: bool, tol: float):
    """``|lead| <= 1`` and ``|second| <= 1 - |lead|^2``."""
    r = 1 - _abs2(lead)
    if exact:
        return r >= 0 and _abs2(second) <= r * r
    return r >= -tol and abs(second) <= r + tol


def check_membership(f: TruncatedSeries, phi: PhiSpec, p: ClassParams, order: int | None = None) -> MembershipCertificate:
    m = p.m
    if not is_mfold_symmetric(f, m):
        raise SeriesError(f"f is not {m}-fold symmetric")
    order = 2 * m if order is None else order
    if order < m:
        raise SeriesError(f"order must be at least m = {m}")
    exact = f.backend == EXACT and phi.exact and isinstance(p.lam, Fraction)
    backend = EXACT if exact else FLOAT
    f = f.to_backend(backend)
    if f.order < order + 1:
        f = TruncatedSeries.from_coeffs(f.coeffs, order + 1, backend)
    tol = 0 if exact else CERT_TOL

    g = revert(f)
    F = class_functional(f, p.lam)
    G = class_functional(g, p.lam)
    u = solve_schwarz(F, phi, order)
    v = solve_schwarz(G, phi, order)

    phis = phi.series(order, backend)
    res_u = max(abs(complex(x - y)) for x, y in zip(compose(phis, u).coeffs, F.coeffs))
    res_v = max(abs(complex(x - y)) for x, y in zip(compose(phis, v).coeffs, G.coeffs))
    # m-fold symmetry of f forces u, v to carry only multiples of m
    sym = max([abs(complex(c)) for n, c in enumerate(u.coeffs) if n % m]
              + [abs(complex(c)) for n, c in enumerate(v.coeffs) if n % m] + [0.0])
    residuals = {"u_composition": res_u, "v_composition": res_v, "symmetry": sym}

    zero = u.coeffs[0] * 0
    b_m, c_m = u.coeffs[m], v.coeffs[m]
    b_2m = u.coeffs[2 * m] if 2 * m <= order else zero
    c_2m = v.coeffs[2 * m] if 2 * m <= order else zero

    violations = []
    for name, value in residuals.items():
        if value > (0 if exact else CERT_TOL):
            violations.append(f"{name} residual {value:.3e}")
    if not _disc_ok(b_m, b_2m, exact, tol):
        violations.append("|b_m| <= 1, |b_2m| <= 1 - |b_m|^2 violated")
    if not _disc_ok(c_m, c_2m, exact, tol):
        violations.append("|c_m| <= 1, |c_2m| <= 1 - |c_m|^2 violated")

    a_2m1 = f.coeffs[2 * m + 1] if 2 * m + 1 <= f.order else zero
    return MembershipCertificate(
        order=order,
        feasible=not violations,
        u_coeffs=u.coeffs,
        v_coeffs=v.coeffs,
        point=SchwarzPoint(b_m, b_2m, c_m, c_2m),
        a_m1=f.coeffs[m + 1],
        a_2m1=a_2m1,
        residuals=residuals,
        violations=tuple(violations),
        backend=backend,
    )


def coefficients_from_point(s: SchwarzPoint, phi: PhiSpec, p: ClassParams):
    """``(a_{m+1}, a_{2m+1}, residual)`` implied by a coupled Schwarz point.

    ``a_{m+1} = B1 b_m / (m(1-l))`` and
    ``a_{2m+1} = (m+1)/2 a_{m+1}^2 + B1 (b_2m - c_2m) / (4 m (1-l))``; the
    residual measures ``|2 m^2 (1-l)^2 (B1^2 - 2 B2) a_{m+1}^2 - B1^3 (b_2m + c_2m)|``.
    Generic over the scalar type: exact inputs give exact outputs.
    """
    b1, sc, m = phi.b1, p.scale, p.m
    if not (isinstance(b1, Fraction) and isinstance(sc, Fraction)):
        b1, sc = float(b1), float(sc)
    a1 = b1 * s.b_m / sc
    a2 = Fraction(m + 1, 2) * a1 * a1 + b1 * (s.b_2m - s.c_2m) / (4 * sc)
    residual = abs(2 * sc * sc * phi.discriminant() * a1 * a1 - b1 ** 3 * (s.b_2m + s.c_2m))
    return a1, a2, residual


def embed(s: SchwarzPoint, phi: PhiSpec, p: ClassParams, order: int | None = None,
          backend: str | None = None) -> TruncatedSeries:
    """Truncated ``f = z + a_{m+1} z^{m+1} + a_{2m+1} z^{2m+1}`` for a point."""
    a1, a2, _ = coefficients_from_point(s, phi, p)
    return TruncatedSeries.mfold(p.m, [a1, a2], order, backend)
