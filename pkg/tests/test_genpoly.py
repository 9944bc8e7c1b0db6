"""
Tests for generalized polynomials
"""
from fractions import Fraction

import numpy as np
import pytest

from core.exceptions import (
    ExponentOverflowError, IncompatibleDenominatorError, NegativeExponentError, ZeroPolynomialError,
)
from algebra.coeffs import GaussianRational
from algebra.genpoly import GenPoly, common_denominator, is_ordinary, make_genpoly, substitute_down, substitute_up
from algebra.intpoly import IntPoly

F = Fraction


def test_merges_equal_exponents():
    p = make_genpoly([(1, F(3, 2)), (2, F(3, 2))])
    assert p.terms == ((GaussianRational(3), F(3, 2)),)


def test_cancellation_gives_zero():
    assert make_genpoly([(1, 2), (-1, 2)]).is_zero


def test_terms_sorted_descending():
    p = make_genpoly([(1, 0), (4, F(1, 2)), (2, 3)])
    assert p.exponents == [3, F(1, 2), 0]


def test_negative_exponent_rejected():
    with pytest.raises(NegativeExponentError):
        make_genpoly([(1, F(-1, 2))])


def test_exponent_overflow():
    with pytest.raises(ExponentOverflowError):
        make_genpoly([(1, F(1, 10 ** 7))])


def test_float_input_switches_to_floating_mode():
    p = make_genpoly([(1.5, 1), (2, 0)])
    assert not p.exact
    assert all(isinstance(c, complex) for c in p.coefficients)


def test_float_zero_test_is_relative():
    p = make_genpoly([(1e6, 2), (1e-8, 1), (3.0, 0)])
    assert p.exponents == [2, 0]


@pytest.mark.parametrize("exponents, q", [
    ([2, F(3, 2), 0], 2),
    ([1, F(3, 4), F(1, 2), F(1, 4), 0], 4),
    ([3, 1], 1),
])
def test_common_denominator(exponents, q):
    assert common_denominator(make_genpoly([(1, e) for e in exponents])) == q


def test_common_denominator_of_zero():
    with pytest.raises(ZeroPolynomialError):
        common_denominator(GenPoly())


def test_half_powers_multiply_to_x():
    half = GenPoly.monomial(F(1, 2))
    assert (half * half).terms == ((GaussianRational(1), F(1)),)


@pytest.mark.parametrize("c1, c2, c3", [(1, 2, 3), (F(2, 3), -5, F(1, 7)), (-4, 1, 0)])
def test_sign_conjugate_product_is_ordinary(c1, c2, c3):
    p = make_genpoly([(c1, 2), (c2, F(3, 2)), (c3, 0)])
    p_hat = make_genpoly([(c1, 2), (-c2, F(3, 2)), (c3, 0)])
    product = p * p_hat
    expected = make_genpoly([(c1 * c1, 4), (-c2 * c2, 3), (2 * c3 * c1, 2), (c3 * c3, 0)])
    assert product == expected
    assert is_ordinary(product)


def test_additive_inverse():
    p = make_genpoly([(3, F(5, 3)), (GaussianRational(1, 2), F(1, 3))])
    assert (p - p).is_zero
    assert (p + (-p)).is_zero


def test_is_ordinary():
    assert not is_ordinary(GenPoly.monomial(F(1, 2)))
    assert is_ordinary(GenPoly())


def test_substitute_down():
    p = make_genpoly([(1, F(3, 2)), (1, 0)])
    assert substitute_down(p, 2) == IntPoly((1, 0, 0, 1))
    assert substitute_down(GenPoly(), 5).is_zero


def test_substitute_down_example_factors(example_operator):
    from pipeline.reduction import operator_to_genpoly
    poly = substitute_down(operator_to_genpoly(example_operator), 4)
    expected = IntPoly.from_roots([-2, -2, 2, -3])
    assert poly == expected


def test_substitute_down_needs_multiple_of_denominator():
    with pytest.raises(IncompatibleDenominatorError):
        substitute_down(make_genpoly([(1, F(1, 3))]), 2)


@pytest.mark.parametrize("terms, q", [
    ([(1, F(3, 2)), (1, 0)], 2),
    ([(1, 1), (5, F(3, 4)), (2, F(1, 2)), (-20, F(1, 4)), (-24, 0)], 4),
    ([(GaussianRational(1, -1), F(2, 3))], 3),
])
def test_substitute_up_inverts_down(terms, q):
    p = make_genpoly(terms)
    assert substitute_up(substitute_down(p, q), q) == p


def test_product_denominator_divides_lcm():
    rng = np.random.default_rng(7)
    for _ in range(200):
        polys = []
        for _ in range(2):
            count = int(rng.integers(1, 5))
            terms = [(int(rng.integers(-9, 10)) or 1, F(int(rng.integers(0, 13)), int(rng.integers(1, 7))))
                     for _ in range(count)]
            polys.append(make_genpoly(terms))
        p, r = polys
        if p.is_zero or r.is_zero:
            continue
        product = p * r
        if product.is_zero:
            continue
        lcm = np.lcm(common_denominator(p), common_denominator(r))
        assert lcm % common_denominator(product) == 0
