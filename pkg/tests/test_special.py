"""
Tests for Gamma, Mittag-Leffler and the moment integrals built on them
"""
import math

import numpy as np
import pytest
from scipy import special as sp

from core.exceptions import DomainError, PoleError
from operators.special import (
    exp_moment_integral, frac_integral_exp_closed, gamma, mittag_leffler, prabhakar, safe_radius,
)


@pytest.mark.parametrize("x, expected", [
    (5, 24.0),
    (0.5, 1.7724538509055160),
    (2.5, 1.3293403881791370),
])
def test_gamma(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("x", [0, -1, -7])
def test_gamma_poles(x):
    with pytest.raises(PoleError):
        gamma(x)


def test_ml_exponential():
    assert mittag_leffler(1, 1, 1).real == pytest.approx(math.e, rel=1e-15)


def test_ml_second_parameter():
    assert mittag_leffler(1, 2, 1).real == pytest.approx(math.e - 1, rel=1e-14)


def test_ml_at_zero():
    assert mittag_leffler(0.5, 1, 0) == 1


@pytest.mark.parametrize("z", [-2.0, -0.5, 0.5, 1.5])
def test_ml_half_order_is_scaled_erfc(z):
    # E_{1/2,1}(z) = exp(z^2) erfc(-z)
    assert mittag_leffler(0.5, 1, z).real == pytest.approx(sp.erfcx(-z), rel=1e-10)


def test_ml_vectorized():
    z = np.linspace(-1, 1, 5)
    assert np.allclose(mittag_leffler(1, 1, z), np.exp(z), rtol=1e-14)


def test_ml_beyond_bound():
    with pytest.raises(DomainError):
        mittag_leffler(0.5, 1, safe_radius(0.5) + 1)


def test_ml_needs_positive_parameters():
    with pytest.raises(DomainError):
        mittag_leffler(0, 1, 1)
    with pytest.raises(DomainError):
        mittag_leffler(1, 0, 1)


def test_prabhakar_reduces_to_ml():
    assert prabhakar(0.75, 1.25, 1, 0.8) == pytest.approx(mittag_leffler(0.75, 1.25, 0.8), rel=1e-14)


@pytest.mark.parametrize("alpha, lam, t, expected", [
    (1, 1, 1.0, math.e - 1),
    (0.5, 0, 4.0, 2.2567583341910251),
])
def test_exp_integral_closed(alpha, lam, t, expected):
    assert frac_integral_exp_closed(alpha, lam, t).real == pytest.approx(expected, rel=1e-13)


def test_exp_integral_rejects_negative_t():
    with pytest.raises(DomainError):
        frac_integral_exp_closed(0.5, 1, -0.1)


def test_moment_integral_integer_derivative():
    # d/ds [s exp(2 s)] = (1 + 2 s) exp(2 s), finite at s = 0
    s = np.array([0.0, 0.5, 1.0])
    values = exp_moment_integral(1, -1, 2, s)
    assert np.allclose(values, (1 + 2 * s) * np.exp(2 * s), rtol=1e-13)


def test_moment_integral_polynomial_weight():
    # I^1 [u exp(u)](s) = (s - 1) exp(s) + 1
    s = 0.7
    assert exp_moment_integral(1, 1, 1, s).real == pytest.approx((s - 1) * math.exp(s) + 1, rel=1e-13)


@pytest.mark.parametrize("z", [-20.0, -35.0, -50.0])
def test_ml_exponential_on_negative_axis(z):
    assert mittag_leffler(1, 1, z).real == pytest.approx(math.exp(z), rel=1e-12)


def test_ml_second_parameter_on_negative_axis():
    z = -30.0
    assert mittag_leffler(1, 2, z).real == pytest.approx(math.expm1(z) / z, rel=1e-12)


def test_moment_integral_of_fast_decay():
    # I^1 [exp(-40 u)](s) = (1 - exp(-40 s)) / 40
    s = np.linspace(0, 1, 9)
    assert np.allclose(exp_moment_integral(0, 1, -40, s), -np.expm1(-40 * s) / 40, rtol=1e-12, atol=0)


def test_ml_reports_cancellation():
    # inside the series bound, but the terms reach about exp(49)
    assert 7.0 < safe_radius(0.5)
    with pytest.raises(DomainError, match="cancels"):
        mittag_leffler(0.5, 1, -7.0)
