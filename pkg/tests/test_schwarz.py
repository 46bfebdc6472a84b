from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biuniv.bounds import ClassParams, bound_a_2m1, bound_a_m1
from biuniv.extremal import FeasibleRegion, enumerate_region
from biuniv.ma_minda import custom_phi, mobius_beta, power_alpha
from biuniv.scalars import QQi
from biuniv.schwarz import (
    SchwarzPoint,
    check_membership,
    class_functional,
    coefficients_from_point,
    embed,
    solve_schwarz,
)
from biuniv.series import EXACT, SeriesError, TruncatedSeries, compose, revert

from conftest import small_fractions

S = TruncatedSeries.from_coeffs
lams = st.fractions(min_value=0, max_value=Fraction(9, 10), max_denominator=20)


def test_class_functional_of_identity():
    assert class_functional(TruncatedSeries.identity(6, EXACT), Fraction(1, 3)) == TruncatedSeries.one(5, EXACT)


def test_class_functional_hand_division():
    a2 = Fraction(3, 7)
    assert class_functional(S([0, 1, a2, 0]), 0) == S([1, a2, -a2 * a2])


@pytest.mark.parametrize("m", [1, 2, 3])
@given(a1=small_fractions, a2=small_fractions, lam=lams)
@settings(max_examples=25, deadline=None)
def test_functional_coefficients_both_sides(m, a1, a2, lam):
    f = TruncatedSeries.mfold(m, [a1, a2], 2 * m + 1)
    F = class_functional(f, lam)
    G = class_functional(revert(f), lam)
    k = m * (1 - lam)
    assert F.coeffs[m] == k * a1
    assert F.coeffs[2 * m] == k * (2 * a2 - (lam * m + 1) * a1 * a1)
    assert G.coeffs[m] == -k * a1
    assert G.coeffs[2 * m] == k * ((1 + m * (2 - lam)) * a1 * a1 - 2 * a2)
    # the two printed brackets add up to 2 m^2 (1-l)^2 a^2
    assert F.coeffs[2 * m] + G.coeffs[2 * m] == 2 * k * k * a1 * a1


def test_solve_schwarz_trivial_cases():
    phi = mobius_beta(Fraction(1, 3))
    assert solve_schwarz(phi.series(6), phi) == TruncatedSeries.identity(6, EXACT)
    assert solve_schwarz(TruncatedSeries.one(6, EXACT), phi) == TruncatedSeries.zero(6, EXACT)


def test_solve_schwarz_leading_coefficient():
    phi = mobius_beta(0)
    m, lam, a = 2, Fraction(1, 4), Fraction(2, 5)
    F = class_functional(TruncatedSeries.mfold(m, [a], 5), lam)
    u = solve_schwarz(F, phi, 2 * m)
    assert u.coeffs[m] == m * (1 - lam) * a / phi.b1


@given(st.lists(small_fractions, min_size=6, max_size=6))
@settings(max_examples=30, deadline=None)
def test_solve_schwarz_round_trip(tail):
    phi = custom_phi([Fraction(3, 2), Fraction(-1, 3), Fraction(2, 7)])
    u = S([0, *tail])
    assert solve_schwarz(compose(phi.series(u.order), u), phi) == u


def test_membership_of_identity():
    for m in (1, 2, 3):
        cert = check_membership(TruncatedSeries.identity(2 * m + 1, EXACT), mobius_beta(0), ClassParams(m, 0))
        assert cert.feasible
        assert all(c == 0 for c in cert.u_coeffs + cert.v_coeffs)


def test_membership_small_perturbation():
    eps = Fraction(1, 10)
    f = TruncatedSeries.mfold(2, [eps], 5)
    cert = check_membership(f, mobius_beta(0), ClassParams(2, 0))
    assert cert.feasible
    assert cert.point.b_m == eps
    assert cert.point.c_m == -eps
    # b_4 from the z^4 coefficient: 2 * (0 - a^2) = 2 b_4 + 2 b_2^2
    assert cert.point.b_2m == Fraction(-2, 100)


def test_membership_float_backend():
    f = TruncatedSeries.mfold(2, [0.1], 5)
    cert = check_membership(f, mobius_beta(0.0), ClassParams(2, 0.0))
    assert cert.backend == "float" and cert.feasible
    assert abs(cert.point.b_m - 0.1) < 1e-15


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("a2", [Fraction(-3), 0, Fraction(1, 2), Fraction(5)])
def test_membership_rejects_a_m1_beyond_bound(m, a2):
    phi, p = mobius_beta(0), ClassParams(m, 0)
    a1 = Fraction(101, 100) * Fraction(2, m)  # 1.01 x the |a_{m+1}| bound
    assert float(a1) == pytest.approx(1.01 * bound_a_m1(phi, p).value)
    cert = check_membership(TruncatedSeries.mfold(m, [a1, a2]), phi, p)
    assert not cert.feasible


def test_membership_requires_symmetry():
    with pytest.raises(SeriesError):
        check_membership(S([0, 1, 1, 0]), mobius_beta(0), ClassParams(2, 0))


def test_coefficients_from_point_examples():
    p = ClassParams(1, 0)
    assert coefficients_from_point(SchwarzPoint(0, 0, 0, 0), mobius_beta(0), p) == (0, 0, 0)
    assert coefficients_from_point(SchwarzPoint(1, 0, -1, 0), mobius_beta(0), p) == (2, 4, 0)
    a1, a2, res = coefficients_from_point(SchwarzPoint(0, 1, 0, -1), custom_phi([1, 1]), p)
    assert (a1, a2, res) == (0, Fraction(1, 2), 0)


def test_certificate_sum_follows_series_identity():
    """The recovered b_2m + c_2m is 2 (B1^2 - B2) b_m^2 / B1.

    The series computation fixes the sum with ``B2`` where the printed
    pinning relation has ``2 B2``.  Points built with the printed relation
    therefore come back shifted by ``B2 b_m^2 / B1`` in both second
    coefficients.
    """
    phi, p = mobius_beta(Fraction(1, 2)), ClassParams(1, 0)
    b = Fraction(1, 2)
    s = 2 * phi.discriminant() * b * b / phi.b1
    pt = SchwarzPoint(b, s / 2, -b, s / 2)
    cert = check_membership(embed(pt, phi, p, backend=EXACT), phi, p)
    got = cert.point
    assert got.b_m == b and got.c_m == -b
    assert got.b_2m + got.c_2m == 2 * (phi.b1 ** 2 - phi.b2) * b * b / phi.b1
    assert got.b_2m - pt.b_2m == phi.b2 * b * b / phi.b1


def test_certified_function_can_exceed_printed_a_m1_bound():
    """Truncated membership does not imply the |a_{m+1}| bound as printed.

    For B1 = B2 = 1 the printed bound is 1/sqrt(2); a_2 = 9/10 with
    a_3 = 81/100 yields u = 9/10 z + 0 z^2 and v = -9/10 w + 0 w^2.
    """
    phi, p = mobius_beta(Fraction(1, 2)), ClassParams(1, 0)
    f = S([0, 1, Fraction(9, 10), Fraction(81, 100)])
    cert = check_membership(f, phi, p)
    assert cert.feasible
    assert cert.point == SchwarzPoint(QQi(Fraction(9, 10)), QQi(0), QQi(Fraction(-9, 10)), QQi(0))
    assert abs(complex(cert.a_m1)) > bound_a_m1(phi, p).value


def _region_points(region, k, rng):
    out = []
    batches = list(enumerate_region(region, 8))
    pts = [pt for b in batches for pt in b.points()]
    for i in rng.choice(len(pts), size=k, replace=False):
        out.append(pts[i])
    return out


@pytest.mark.parametrize("phi", [mobius_beta(Fraction(1, 2)), custom_phi([Fraction(3, 2), Fraction(1, 4)])])
@pytest.mark.parametrize("m", [1, 2])
def test_certified_region_points_respect_bounds(phi, m):
    p = ClassParams(m, Fraction(1, 4))
    rng = np.random.default_rng(7)
    certified = 0
    for pt in _region_points(FeasibleRegion(phi, p), 25, rng):
        cert = check_membership(embed(pt, phi, p), phi, p)
        assert abs(cert.point.c_m + cert.point.b_m) < 1e-10
        if cert.feasible:
            certified += 1
            assert abs(cert.a_m1) <= bound_a_m1(phi, p).value + 1e-9
            assert abs(cert.a_2m1) <= bound_a_2m1(phi, p).value + 1e-9
    assert certified > 0
