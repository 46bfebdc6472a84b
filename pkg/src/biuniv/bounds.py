"""Closed-form coefficient bounds for the class ``S^lambda_{Sigma_m}(phi)``.

All evaluators take a :class:`~biuniv.ma_minda.PhiSpec` and a
:class:`ClassParams`.  With rational ``B1``, ``B2`` and ``lambda`` the branch
tests run in exact arithmetic; otherwise they use a ``1e-12`` tolerance.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction

from .ma_minda import PhiSpec, mobius_beta, power_alpha

TOL = 1e-12

LOW_B1 = "low-B1"
HIGH_B1 = "high-B1"
SMALL_H = "small-h"
LARGE_H = "large-h"
DEGENERATE = "degenerate"


class ParamError(ValueError):
    pass


def _num(x):
    return Fraction(x) if isinstance(x, numbers.Rational) else float(x)


@dataclass(frozen=True)
class ClassParams:
    m: int
    lam: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if not isinstance(self.m, numbers.Integral) or self.m < 1:
            raise ParamError(f"m must be a positive integer, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))
        lam = _num(self.lam)
        if not 0 <= lam < 1:
            raise ParamError(f"lambda must lie in [0, 1), got {self.lam!r}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "gamma", _num(self.gamma))

    @property
    def scale(self):
        """``m (1 - lambda)``, the factor that recurs in every bound."""
        return self.m * (1 - self.lam)


@dataclass(frozen=True)
class BoundValue:
    value: float
    branch: str
    degenerate: bool = False

    def __post_init__(self):
        if not self.value >= 0:
            raise ValueError(f"bound must be nonnegative, got {self.value}")

    def __float__(self):
        return float(self.value)


def _exact(*xs) -> bool:
    return all(isinstance(x, Fraction) for x in xs)


def _ge(a, b, exact: bool) -> bool:
    return a >= b if exact else a >= b - TOL


def _is_degenerate(phi: PhiSpec) -> bool:
    d = phi.discriminant()
    return d == 0 if isinstance(d, Fraction) else abs(d) <= TOL


def bound_a_m1(phi: PhiSpec, p: ClassParams) -> BoundValue:
    b1 = float(phi.b1)
    d = abs(float(phi.discriminant()))
    value = b1 * math.sqrt(b1) / (float(p.scale) * math.sqrt(d + b1))
    return BoundValue(value, "closed", _is_degenerate(phi))


def bound_a_2m1(phi: PhiSpec, p: ClassParams) -> BoundValue:
    b1, m, lam = phi.b1, p.m, p.lam
    exact = _exact(b1, lam)
    threshold = m * (1 - lam) / (m + 1)
    sc = float(p.scale)
    low = float(b1) / (2 * sc)
    if not _ge(b1, threshold, exact):
        return BoundValue(low, LOW_B1, _is_degenerate(phi))
    fb1 = float(b1)
    d = abs(float(phi.discriminant()))
    first = (m + 1 - sc / fb1) * fb1 ** 3 / (2 * sc * sc * (fb1 + d))
    # the leading factor is exactly zero at the threshold; keep rounding from going negative
    return BoundValue(max(first, 0.0) + low, HIGH_B1, _is_degenerate(phi))


def h_gamma(phi: PhiSpec, p: ClassParams, gamma=None):
    """The Fekete-Szego weight function; ``None`` when ``B1^2 == 2 B2``.

    Exact (a ``Fraction``) when ``B1``, ``B2``, ``lambda`` and ``gamma`` are.
    """
    gamma = p.gamma if gamma is None else _num(gamma)
    if _is_degenerate(phi):
        return None
    b1, lam, m = phi.b1, p.lam, p.m
    d = phi.discriminant()
    if not _exact(b1, d, lam, gamma):
        b1, lam, d, gamma = float(b1), float(lam), float(d), float(gamma)
    return (m + 1 - 2 * gamma) / 2 * b1 * b1 / (2 * m * m * (1 - lam) ** 2 * d)


def degenerate_fekete_szego(phi: PhiSpec, p: ClassParams, gamma=None) -> float:
    """Bound for ``B1^2 == 2 B2``, where the h-form divides by zero.

    The pinned sum ``b_2m + c_2m`` vanishes there, so the functional is
    ``((m+1)/2 - gamma) a^2 + B1 d / (4 m (1-lambda))`` with ``|d|/2 <= 1 - |b_m|^2``.
    Its modulus is at most linear in ``|b_m|^2`` and the maximum sits at an end.
    """
    gamma = float(p.gamma if gamma is None else gamma)
    b1, sc = float(phi.b1), float(p.scale)
    return max(b1 / (2 * sc), abs(p.m + 1 - 2 * gamma) * b1 * b1 / (2 * sc * sc))


def fekete_szego_bound(phi: PhiSpec, p: ClassParams, gamma=None) -> BoundValue:
    """Bound on ``|a_{2m+1} - gamma a_{m+1}^2|``."""
    gamma = p.gamma if gamma is None else _num(gamma)
    sc = p.scale
    b1 = float(phi.b1)
    small = b1 / (2 * float(sc))
    h = h_gamma(phi, p, gamma)
    if h is None:
        return BoundValue(degenerate_fekete_szego(phi, p, gamma), DEGENERATE, True)
    cut = 1 / (4 * sc)
    if _ge(abs(h), cut, _exact(h, cut)):
        return BoundValue(max(2 * b1 * abs(float(h)), small), LARGE_H)
    return BoundValue(small, SMALL_H)


# Prior m-fold bounds for the strongly-starlike-type (alpha) and
# order-beta classes, used for comparison tables.
ALPHA_CLASS = "alpha-class"
BETA_CLASS = "beta-class"


def reference_bounds(family: str, param, p: ClassParams) -> tuple[float, float]:
    """``(|a_{m+1}|, |a_{2m+1}|)`` bounds from earlier work on the two classes."""
    m, sc = p.m, float(p.scale)
    param = float(param)
    if family == ALPHA_CLASS:
        if not 0 < param <= 1:
            raise ParamError(f"alpha must lie in (0, 1], got {param}")
        a = param
        return (2 * a / (sc * math.sqrt(a + 1)),
                a / sc + 2 * (m + 1) * a * a / (sc * sc))
    if family == BETA_CLASS:
        if not 0 <= param < 1:
            raise ParamError(f"beta must lie in [0, 1), got {param}")
        c = 1 - param
        return (math.sqrt(2 * c) / sc,
                c / sc + 2 * (m + 1) * c * c / (sc * sc))
    raise ParamError(f"unknown reference family {family!r}")


# ---------------------------------------------------------------------------
# Printed specializations.  Each takes (phi, p) and returns the printed value,
# or None when the printed expression is undefined or not evaluable.

def _b(phi):
    return float(phi.b1), abs(float(phi.discriminant()))


def _printed_lambda0_a_m1(phi, p):
    b1, d = _b(phi)
    return b1 * math.sqrt(b1) / (p.m * math.sqrt(d + b1))


def _printed_lambda0_a_2m1(phi, p):
    b1, d = _b(phi)
    m = p.m
    if b1 >= m / (m + 1):
        return (m + 1 - m / b1) * b1 ** 3 / (2 * m * m * (b1 + d)) + b1 / (2 * m)
    return b1 / (2 * m)


def _printed_onefold_a_2(phi, p):
    b1, d = _b(phi)
    return b1 * math.sqrt(b1) / ((1 - float(p.lam)) * math.sqrt(d + b1))


def _printed_onefold_a_3(phi, p):
    b1, d = _b(phi)
    q = 1 - float(p.lam)
    if b1 >= q / 2:
        return (2 - q / b1) * b1 ** 3 / (2 * q * q + b1 * d) + b1 / (2 * q)
    return b1 / (2 * q)


def _printed_power_a_2(phi, p):
    return 2 * float(phi.param) / (1 - float(p.lam))


def _printed_power_a_3(phi, p):
    a, q = float(phi.param), 1 - float(p.lam)
    return 4 * a * a / (q * q) if a >= q / 4 else a / q


def _printed_mobius_a_2(phi, p):
    beta = float(phi.param)
    return 2 * (1 - beta) / ((1 - float(p.lam)) * math.sqrt(2 * beta + 1))


def _printed_mobius_a_3(phi, p):
    # printed with the alpha-family expressions; no beta-only reading exists
    return None


def _printed_onefold_l0_a_2(phi, p):
    b1, d = _b(phi)
    return b1 * math.sqrt(b1) / math.sqrt(d + b1)


def _printed_onefold_l0_a_3(phi, p):
    b1, d = _b(phi)
    if b1 >= 0.5:
        return (2 - 1 / b1) * b1 ** 3 / (2 + b1 * d) + b1 / 2
    return b1 / 2


def _printed_fs(factor):
    """Printed two-branch FS form ``B1/(factor m (1-l))`` vs ``(2 factor/2) B1 |h|``."""
    def fn(phi, p):
        h = h_gamma(phi, p)
        if h is None:
            return None
        b1, sc = float(phi.b1), float(p.scale)
        if abs(float(h)) < 1 / (4 * sc):
            return b1 / (factor * sc)
        return factor * b1 * abs(float(h))
    return fn


def _printed_fs_gamma1(phi, p):
    return float(phi.b1) / (4 * (1 - float(p.lam)))


@dataclass(frozen=True)
class Corollary:
    id: str
    quantity: str
    printed: object
    m_one: bool = False
    lambda_zero: bool = False
    family: str | None = None
    gammas: tuple | None = None
    note: str = ""


COROLLARIES = (
    Corollary("lambda0/a_m+1", "a_m+1", _printed_lambda0_a_m1, lambda_zero=True),
    Corollary("lambda0/a_2m+1", "a_2m+1", _printed_lambda0_a_2m1, lambda_zero=True),
    Corollary("onefold/a_2", "a_m+1", _printed_onefold_a_2, m_one=True),
    Corollary("onefold/a_3", "a_2m+1", _printed_onefold_a_3, m_one=True,
              note="printed denominator 2(1-l)^2 + B1|B1^2-2B2| instead of 2(1-l)^2 (B1 + |B1^2-2B2|)"),
    Corollary("power/a_2", "a_m+1", _printed_power_a_2, m_one=True, family="power"),
    Corollary("power/a_3", "a_2m+1", _printed_power_a_3, m_one=True, family="power"),
    Corollary("mobius/a_2", "a_m+1", _printed_mobius_a_2, m_one=True, family="mobius"),
    Corollary("mobius/a_3", "a_2m+1", _printed_mobius_a_3, m_one=True, family="mobius",
              note="printed with alpha-family expressions; not evaluable"),
    Corollary("onefold-lambda0/a_2", "a_m+1", _printed_onefold_l0_a_2, m_one=True, lambda_zero=True),
    Corollary("onefold-lambda0/a_3", "a_2m+1", _printed_onefold_l0_a_3, m_one=True, lambda_zero=True,
              note="printed denominator 2 + B1|B1^2-2B2| instead of 2 (B1 + |B1^2-2B2|)"),
    Corollary("fs-lambda0", "fekete_szego", _printed_fs(2), lambda_zero=True),
    Corollary("fs-onefold", "fekete_szego", _printed_fs(4), m_one=True,
              note="printed factors B1/(4(1-l)) and 4B1|h| vs B1/(2(1-l)) and 2B1|h|"),
    Corollary("fs-onefold-lambda0", "fekete_szego", _printed_fs(4), m_one=True, lambda_zero=True,
              note="printed factors B1/4 and 4B1|h| vs B1/2 and 2B1|h|"),
    Corollary("fs-mfold-gamma01", "fekete_szego", _printed_fs(4), gammas=(0, 1),
              note="printed factors B1/(4m(1-l)) and 4B1|h|"),
    Corollary("fs-onefold-gamma1", "fekete_szego", _printed_fs_gamma1, m_one=True, gammas=(1,),
              note="printed B1/(4(1-l)); the small-h branch gives B1/(2(1-l))"),
)

MATCH = "match"
MISMATCH = "mismatch"
UNAVAILABLE = "unavailable"


def theorem_value(quantity: str, phi: PhiSpec, p: ClassParams) -> BoundValue:
    if quantity == "a_m+1":
        return bound_a_m1(phi, p)
    if quantity == "a_2m+1":
        return bound_a_2m1(phi, p)
    if quantity == "fekete_szego":
        return fekete_szego_bound(phi, p)
    raise ValueError(f"unknown quantity {quantity!r}")


def corollary_rows(cor: Corollary, phi: PhiSpec, p: ClassParams, rel_tol: float = TOL):
    theorem = theorem_value(cor.quantity, phi, p)
    printed = cor.printed(phi, p)
    if printed is None:
        status = UNAVAILABLE
    else:
        scale = max(1.0, abs(theorem.value), abs(printed))
        status = MATCH if abs(theorem.value - printed) <= rel_tol * scale else MISMATCH
    return {
        "corollary": cor.id,
        "quantity": cor.quantity,
        "phi": phi.label,
        "m": p.m,
        "lambda": float(p.lam),
        "gamma": float(p.gamma),
        "theorem": theorem.value,
        "branch": theorem.branch,
        "printed": printed,
        "status": status,
        "note": cor.note if status != MATCH else "",
    }


def _applies(cor: Corollary, phi: PhiSpec, p: ClassParams) -> bool:
    if cor.m_one and p.m != 1:
        return False
    if cor.lambda_zero and p.lam != 0:
        return False
    if cor.family is not None and phi.family != cor.family:
        return False
    if cor.gammas is not None and p.gamma not in cor.gammas:
        return False
    if cor.quantity != "fekete_szego" and p.gamma != 0:
        # gamma does not enter the a_m+1 / a_2m+1 rows; emit them once
        return False
    return True


def corollary_table(phis, ms=(1, 2, 3), lams=(0, Fraction(1, 4), Fraction(1, 2)), gammas=(0, Fraction(1, 2), 1)):
    """One row per applicable (corollary, phi, m, lambda, gamma)."""
    rows = []
    for cor in COROLLARIES:
        for phi in phis:
            for m in ms:
                for lam in lams:
                    for gamma in gammas:
                        p = ClassParams(m, lam, gamma)
                        if _applies(cor, phi, p):
                            rows.append(corollary_rows(cor, phi, p))
    return rows


def compare_table(alphas=(Fraction(1, 4), Fraction(1, 2), 1), betas=(0, Fraction(1, 4), Fraction(1, 2)),
                  ms=(1, 2, 3), lams=(0, Fraction(1, 4), Fraction(1, 2))):
    """Bounds from the general theorem next to the earlier class-specific bounds."""
    rows = []
    for family, params, build in ((ALPHA_CLASS, alphas, power_alpha), (BETA_CLASS, betas, mobius_beta)):
        for t in params:
            phi = build(t)
            for m in ms:
                for lam in lams:
                    p = ClassParams(m, lam)
                    ref1, ref2 = reference_bounds(family, t, p)
                    b1, b2 = bound_a_m1(phi, p).value, bound_a_2m1(phi, p).value
                    rows.append({
                        "family": family, "param": float(t), "m": m, "lambda": float(lam),
                        "phi": phi.label,
                        "bound_a_m1": b1, "reference_a_m1": ref1,
                        "bound_a_2m1": b2, "reference_a_2m1": ref2,
                        "improves_a_m1": b1 <= ref1 + TOL, "improves_a_2m1": b2 <= ref2 + TOL,
                    })
    return rows
