from fractions import Fraction

import pytest

from biuniv.ma_minda import PhiError, custom_phi, mobius_beta, parse_phi, power_alpha
from biuniv.series import TruncatedSeries, divide


def test_power_alpha_leading_pair():
    phi = power_alpha(1)
    assert (phi.b1, phi.b2) == (2, 2)
    phi = power_alpha(Fraction(1, 2))
    assert (phi.b1, phi.b2) == (1, Fraction(1, 2))


@pytest.mark.parametrize("alpha", [Fraction(1, 7), Fraction(1, 3), Fraction(5, 6), 1])
def test_power_alpha_is_degenerate(alpha):
    phi = power_alpha(alpha)
    assert phi.series(2) == TruncatedSeries.from_coeffs([1, 2 * alpha, 2 * alpha ** 2])
    assert phi.discriminant() == 0


def test_power_alpha_float_pins_leading_pair():
    phi = power_alpha(0.3)
    assert phi.b1 == 0.6 and phi.b2 == 2 * 0.3 * 0.3


def test_power_alpha_higher_coefficients():
    # ((1+z)/(1-z))^(1/2): B3 = 1/2 by direct expansion of sqrt(1+z) * (1-z)^(-1/2)
    assert power_alpha(Fraction(1, 2)).b[2] == Fraction(1, 2)


@pytest.mark.parametrize("beta", [0, Fraction(1, 4), Fraction(1, 2), Fraction(9, 10)])
def test_mobius_beta_series_division(beta):
    oracle = divide(TruncatedSeries.from_coeffs([1, 1 - 2 * beta], 5),
                    TruncatedSeries.from_coeffs([1, -1], 5))
    phi = mobius_beta(beta)
    assert phi.series(5) == oracle
    assert all(c == 2 * (1 - beta) for c in oracle.coeffs[1:])
    assert phi.discriminant() == -4 * beta * (1 - beta)


def test_mobius_examples():
    assert (mobius_beta(0).b1, mobius_beta(0).b2) == (2, 2)
    assert (mobius_beta(Fraction(1, 2)).b1, mobius_beta(Fraction(1, 2)).b2) == (1, 1)


def test_custom_phi():
    assert custom_phi([2, 2]).b[:2] == (2, 2)
    assert custom_phi([1, 0]).series(3) == TruncatedSeries.from_coeffs([1, 1], 3)
    with pytest.raises(PhiError):
        custom_phi([-1, 0])
    with pytest.raises(PhiError):
        custom_phi([0, 1])


def test_parameter_ranges():
    for bad in (0, -0.1, 1.5):
        with pytest.raises(PhiError):
            power_alpha(bad)
    for bad in (-0.1, 1):
        with pytest.raises(PhiError):
            mobius_beta(bad)


@pytest.mark.parametrize("phi", [power_alpha(Fraction(1, 3)), mobius_beta(Fraction(1, 4)), custom_phi([3, 1])])
def test_constant_term_is_one(phi):
    assert phi.series(6).coeffs[0] == 1


def test_conjugate_is_phi_of_minus_z():
    phi = power_alpha(Fraction(1, 2), conjugate=True)
    base = power_alpha(Fraction(1, 2)).series(5)
    assert phi.series(5).coeffs == tuple(c * (-1) ** n for n, c in enumerate(base.coeffs))
    assert phi.b1 > 0  # bounds see the base sequence


def test_parse_phi():
    assert parse_phi("mobius:0.5").b[:2] == (1, 1)
    assert parse_phi("power:1/2").b1 == 1
    assert parse_phi("custom:2,2,2").b == (2, 2, 2)
    assert parse_phi("power~:1/2").conjugate
    for bad in ("mobius", "foo:1", "power:1,2", "custom:x"):
        with pytest.raises(PhiError):
            parse_phi(bad)
