"""
Tests for grid fractional integrals, derivatives and operators
"""
import json
import math
from fractions import Fraction

import numpy as np
import pytest

from core.exceptions import BaseMismatchError, DomainError, GridFormatError, OrderOutOfRangeError
from operators.fractional import (
    FracOperator, apply_operator, frac_integral, gl_frac_derivative, rl_frac_derivative, start_exponents_for,
)
from operators.grid import GridFunction
from operators.special import frac_integral_exp_closed

F = Fraction


def _grid(fn, n=1024, a=0.0, b=1.0):
    return GridFunction.from_function(a, b, n, fn)


def test_integral_of_one():
    f = _grid(np.ones_like, n=256)
    result = frac_integral(f, F(1, 2))
    assert np.allclose(result.values, 2 * np.sqrt(f.t / np.pi), atol=1e-12)


def test_plain_integral_of_t_is_exact():
    f = _grid(lambda t: t, n=64)
    assert np.allclose(frac_integral(f, 1).values, f.t ** 2 / 2, atol=1e-13)


def test_integral_of_exp():
    f = _grid(np.exp, n=1024)
    value = frac_integral(f, F(1, 2)).values[-1]
    assert abs(value - frac_integral_exp_closed(0.5, 1, 1.0)) <= 1e-4


def test_integral_matches_closed_form_on_fine_grid():
    f = _grid(lambda t: np.exp(t / 16), n=4096)
    value = frac_integral(f, F(1, 2)).values[-1]
    assert abs(value - frac_integral_exp_closed(0.5, 1 / 16, 1.0)) <= 1e-6


def test_order_zero_is_identity():
    f = _grid(np.sin, n=32)
    assert frac_integral(f, 0) is f


def test_negative_order_rejected():
    with pytest.raises(OrderOutOfRangeError):
        frac_integral(_grid(np.sin, n=32), F(-1, 2))


QUARTERS = [F(1, 4), F(1, 2), F(3, 4), F(1)]
SMOOTH = {
    "one": np.ones_like,
    "t": lambda t: t,
    "exp": np.exp,
    "sin": np.sin,
}


@pytest.mark.parametrize("name", sorted(SMOOTH))
@pytest.mark.parametrize("alpha", QUARTERS)
@pytest.mark.parametrize("beta", QUARTERS)
def test_semigroup(name, alpha, beta):
    start = start_exponents_for(4)
    errors = []
    for n in (512, 1024):
        f = _grid(SMOOTH[name], n=n)
        twice = frac_integral(frac_integral(f, alpha, start), beta, start)
        once = frac_integral(f, alpha + beta, start)
        errors.append(np.max(np.abs(twice.values - once.values)))
    assert errors[1] <= 5e-3
    if errors[1] > 1e-9:
        assert math.log2(errors[0] / errors[1]) >= 1.5


def test_start_correction_is_exact_on_quarter_powers():
    f = _grid(lambda t: t ** 0.25, n=128)
    result = frac_integral(f, F(1, 2), start_exponents_for(4))
    expected = math.gamma(1.25) / math.gamma(1.75) * f.t ** 0.75
    assert np.allclose(result.values, expected, atol=1e-9)


def test_start_exponents_for():
    assert start_exponents_for(1) == ()
    assert start_exponents_for(2) == (F(1, 2), F(3, 2))


def test_linearity():
    rng = np.random.default_rng(5)
    f = GridFunction(0, 1, 100, rng.normal(size=101))
    g = GridFunction(0, 1, 100, rng.normal(size=101))
    T = FracOperator(0, ((2, F(3, 4)), (-1, F(1, 3)), (3, 0)))
    combined = apply_operator(T, f * 2.5 + g)
    separate = apply_operator(T, f) * 2.5 + apply_operator(T, g)
    assert np.allclose(combined.values, separate.values, atol=1e-12)


def test_kernel_positivity():
    rng = np.random.default_rng(9)
    f = GridFunction(0, 1, 200, rng.uniform(0, 1, size=201))
    assert np.all(frac_integral(f, F(2, 3)).values.real >= -1e-15)


def test_gl_derivative_of_sqrt():
    f = _grid(np.sqrt, n=1024)
    d = gl_frac_derivative(f, F(1, 2))
    tail = f.t >= 0.25
    assert np.allclose(d.values[tail], math.gamma(1.5), atol=1e-2)


def test_gl_derivative_order_range():
    with pytest.raises(OrderOutOfRangeError):
        gl_frac_derivative(_grid(np.sqrt, n=16), 1)


def test_rl_derivative_undoes_integral():
    f = _grid(lambda t: t, n=1024)
    back = rl_frac_derivative(frac_integral(f, F(1, 2)), F(1, 2))
    assert np.max(np.abs(back.values - f.values)) <= 1e-2


def test_identity_operator():
    f = _grid(np.cos, n=16)
    assert np.array_equal(apply_operator(FracOperator.identity(), f).values, f.values)


def test_split_orders_match_single_order():
    f = _grid(np.exp, n=512)
    split = apply_operator(FracOperator(0, ((1, F(1, 2)),)), apply_operator(FracOperator(0, ((1, F(1, 2)),)), f))
    single = apply_operator(FracOperator(0, ((1, 1),)), f)
    assert np.max(np.abs(split.values - single.values)) <= 1e-3


def test_base_mismatch():
    T = FracOperator(F(1, 2), ((1, F(1, 2)),))
    with pytest.raises(BaseMismatchError):
        apply_operator(T, _grid(np.exp, n=16))


def test_operator_merges_and_orders_terms():
    T = FracOperator(0, ((1, F(1, 4)), (2, F(3, 4)), (3, F(1, 4)), (-2, F(3, 4))))
    assert T.terms == ((4, F(1, 4)),)
    assert T.common_denominator() == 4


def test_grid_rejects_bad_interval():
    with pytest.raises(DomainError):
        GridFunction(1, 1, 4, np.zeros(5))


def test_grid_csv_roundtrip(tmp_path):
    f = _grid(lambda t: t ** 2 + 1j * t, n=8, a=0.5, b=2.0)
    path = tmp_path / "f.csv"
    f.to_csv(path)
    g = GridFunction.from_csv(path)
    assert g.same_grid(f)
    assert np.allclose(g.values, f.values, rtol=1e-15)


def test_grid_json():
    f = _grid(lambda t: np.exp(1j * t), n=4)
    record = json.loads(f.to_json())
    assert (record["a"], record["b"], record["n"]) == (0.0, 1.0, 4)
    assert len(record["values"]) == 5
    assert np.array_equal(GridFunction.from_json(f.to_json()).values, f.values)


@pytest.mark.parametrize("text", ["{}", "[1, 2]", '{"a": 0, "b": 1, "n": 2, "values": [[0, 0]]}'])
def test_grid_json_rejects(text):
    with pytest.raises((GridFormatError, DomainError)):
        GridFunction.from_json(text)


def test_grid_csv_rejects_bad_header(tmp_path):
    path = tmp_path / "f.csv"
    path.write_text("x,y\n0,1\n1,2\n")
    with pytest.raises(GridFormatError):
        GridFunction.from_csv(path)
