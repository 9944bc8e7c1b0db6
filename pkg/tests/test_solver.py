"""
Tests for exponential polynomials and the integer-order solvers
"""
from fractions import Fraction

import numpy as np
import pytest

from core.exceptions import DegenerateLeadingError, FirstKindUnsupportedError
from algebra.coeffs import GaussianRational
from operators.fractional import FracOperator, apply_operator
from operators.grid import GridFunction
from solver.closed_form import apply_operator_exppoly, frac_integral_exppoly
from solver.exppoly import ExpPoly, sample_on
from solver.models import IntOrderEquation
from solver.ode import initial_conditions, reduce_to_ode, solve_closed, solve_ode_closed
from solver.volterra import solve_volterra
from tests.conftest import EXAMPLE_REDUCED

F = Fraction

EXAMPLE_Y = ExpPoly((
    (F(1, 81), (F(1, 27378000),)),
    (F(1, 16), (F(71, 9734400), F(1, 3993600))),
    (1, (F(-1, 18000),)),
))


# Exponential polynomials

def test_exppoly_merges_rates():
    e = ExpPoly.exp(2, 3) + ExpPoly.exp(2, -3) + ExpPoly.constant(1)
    assert e == ExpPoly.constant(1)


def test_exppoly_product_rule():
    e = ExpPoly(((2, (0, 1)),))   # t exp(2t)
    assert e.derivative() == ExpPoly(((2, (1, 2)),))


def test_exppoly_value_is_exact_at_zero():
    assert EXAMPLE_Y.value(0) == F(-1, 20736)
    assert ExpPoly.exp(1).value(0) == 1


def test_antiderivative_vanishes_at_base():
    e = ExpPoly(((F(1, 2), (1, 3)),)) + ExpPoly.polynomial((2, 0, 1))
    prim = e.antiderivative(base=0)
    assert prim.derivative() == e
    assert prim.value(0) == 0


def test_sample_zero():
    assert np.all(sample_on(ExpPoly.zero(), 0, 1, 8).values == 0)


def test_closed_form_integral_of_exp():
    g = frac_integral_exppoly(ExpPoly.exp(1), F(1, 2), 0)
    grid = GridFunction.from_function(0, 1, 1024, np.exp)
    numeric = apply_operator(FracOperator(0, ((1, F(1, 2)),)), grid)
    assert np.max(np.abs(g.evaluate(grid.t) - numeric.values)) <= 1e-4


def test_closed_form_operator_with_shifted_base():
    T = FracOperator(F(1, 2), ((2, F(3, 4)), (-1, 0)))
    e = ExpPoly(((1, (1, 1)),))
    grid = GridFunction.from_function(0.5, 1.5, 2048, e.evaluate)
    numeric = apply_operator(T, grid)
    closed = apply_operator_exppoly(T, e).evaluate(grid.t)
    assert np.max(np.abs(closed - numeric.values)) <= 1e-4


# ODE route

def test_reduce_to_ode():
    eq = IntOrderEquation(EXAMPLE_REDUCED, 0, ExpPoly.exp(1))
    coeffs, rhs = reduce_to_ode(eq)
    assert coeffs == EXAMPLE_REDUCED
    assert rhs == ExpPoly.exp(1)


def test_reduce_to_ode_product_rule():
    eq = IntOrderEquation((1, 1), 0, ExpPoly(((2, (0, 1)),)))
    _, rhs = reduce_to_ode(eq)
    assert rhs == ExpPoly(((2, (1, 2)),))


def test_example_initial_conditions():
    eq = IntOrderEquation(EXAMPLE_REDUCED, 0, ExpPoly.exp(1))
    assert initial_conditions(eq) == [F(-1, 20736), F(-737, 13436928), F(-1932835, 34828517376)]


def test_initial_conditions_first_order():
    eq = IntOrderEquation((2, 5), 0, ExpPoly.exp(1))
    assert initial_conditions(eq) == [F(1, 5)]


def test_homogeneous_initial_conditions():
    eq = IntOrderEquation((1, 3, -2), 0, ExpPoly.zero())
    assert initial_conditions(eq) == [0, 0]


def test_first_kind_has_no_initial_conditions():
    with pytest.raises(DegenerateLeadingError):
        initial_conditions(IntOrderEquation((1, 0), 0, ExpPoly.constant(1)))


def test_example_closed_form_is_exact():
    y = solve_closed(IntOrderEquation(EXAMPLE_REDUCED, 0, ExpPoly.exp(1)))
    assert y.exact
    assert y == EXAMPLE_Y


def test_ode_growth():
    # x' = x, x(0) = 1
    assert solve_ode_closed((-1, 1), ExpPoly.zero(), [1]) == ExpPoly.exp(1)


def test_ode_resonance():
    # y' - y = e^t, y(0) = 0
    y = solve_ode_closed((-1, 1), ExpPoly.exp(1), [0])
    assert y == ExpPoly(((1, (0, 1)),))


def test_ode_complex_roots():
    # y'' + y = 0, y(0) = 0, y'(0) = 1 gives sin t
    y = solve_ode_closed((1, 0, 1), ExpPoly.zero(), [0, 1])
    t = np.linspace(0, 2, 9)
    assert np.allclose(y.evaluate(t), np.sin(t), atol=1e-12)


def test_closed_form_with_nonzero_base():
    eq = IntOrderEquation((1, 1), F(1, 2), ExpPoly.polynomial((0, 1)))
    y = solve_closed(eq)
    # x + I_{1/2} x = t  gives  x = 1 - exp(1/2 - t) / 2
    t = np.linspace(0.5, 1.5, 5)
    assert np.allclose(y.evaluate(t), 1 - np.exp(0.5 - t) / 2, atol=1e-13)


# Volterra stepping

def test_volterra_linear_solution_is_exact():
    rhs = GridFunction.from_function(0, 1, 512, lambda t: t + t ** 2 / 2)
    x = solve_volterra(IntOrderEquation((1, 1), 0, rhs))
    assert np.max(np.abs(x.values - x.t)) <= 1e-10


def test_volterra_homogeneous():
    rhs = GridFunction.zeros(0, 1, 64)
    x = solve_volterra(IntOrderEquation((3, -2, 1), 0, rhs))
    assert np.all(x.values == 0)


def test_volterra_first_kind_rejected():
    with pytest.raises(FirstKindUnsupportedError):
        solve_volterra(IntOrderEquation((1, 0), 0, GridFunction.zeros(0, 1, 16)))


def test_volterra_agrees_with_closed_form():
    eq = IntOrderEquation(EXAMPLE_REDUCED, 0, ExpPoly.exp(1))
    y = solve_closed(eq)
    grid = sample_on(ExpPoly.exp(1), 0, 1, 2048)
    stepped = solve_volterra(eq.with_rhs(grid))
    assert np.max(np.abs(stepped.values - y.evaluate(grid.t))) <= 1e-4


def test_volterra_residual_with_integer_orders():
    truth = lambda t: np.cos(3 * t) + t   # noqa: E731
    n = 1024
    t = np.linspace(0, 1, n + 1)
    # x - 2 I x + I^2 x for x = cos 3t + t
    rhs = truth(t) - 2 * (np.sin(3 * t) / 3 + t ** 2 / 2) + ((1 - np.cos(3 * t)) / 9 + t ** 3 / 6)
    eq = IntOrderEquation((1, -2, 1), 0, GridFunction(0, 1, n, rhs))
    x = solve_volterra(eq)
    T = FracOperator(0, ((1, 2), (-2, 1), (1, 0)))
    assert np.max(np.abs(apply_operator(T, x).values - rhs)) <= 5e-3
    assert np.max(np.abs(x.values - truth(t))) <= 1e-4


def test_complex_coefficients():
    eq = IntOrderEquation((GaussianRational(0, 1), 1), 0, ExpPoly.exp(1))
    y = solve_closed(eq)
    # x + i I x = e^t
    grid = sample_on(ExpPoly.exp(1), 0, 1, 1024)
    stepped = solve_volterra(eq.with_rhs(grid))
    assert np.max(np.abs(stepped.values - y.evaluate(grid.t))) <= 1e-5
