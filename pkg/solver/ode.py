"""
Closed-form route: integer-order integral equation -> linear ODE -> exponential polynomial
"""
import math
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np
from loguru import logger

from core.exceptions import DegenerateLeadingError, VerificationError
from algebra.coeffs import Coeff, GaussianRational, ZERO, unify, magnitude
from algebra.intpoly import IntPoly
from algebra.linalg import solve_linear, condition_number
from algebra.rootfind import DEFAULT_TOL, find_roots, RootSet
from .exppoly import ExpPoly
from .models import IntOrderEquation


def reduce_to_ode(eq: IntOrderEquation) -> Tuple[Tuple[Coeff, ...], ExpPoly]:
    """Differentiate n times: c_0 x + c_1 x' + ... + c_n x^(n) = D^n f.

    Returns:
        (ode coefficients, coefficient j multiplying x^(j); n-th derivative of the rhs)
    """
    if not isinstance(eq.rhs, ExpPoly):
        raise TypeError("the ODE reduction needs an exponential-polynomial right-hand side")
    return tuple(eq.coeffs), eq.rhs.derivative(eq.order)


def initial_conditions(eq: IntOrderEquation) -> List[Coeff]:
    """x(a), x'(a), ..., x^(n-1)(a) from the equation differentiated 0..n-1 times at t = a.

    Solves c_n x^(k)(a) + sum_{j=1..k} c_{n-j} x^(k-j)(a) = f^(k)(a) by forward substitution.
    """
    n = eq.order
    c = eq.coeffs
    if c[n] == 0:
        raise DegenerateLeadingError("identity coefficient c_n vanishes; the equation is of the first kind")
    values: List[Coeff] = []
    deriv = eq.rhs
    for k in range(n):
        acc = deriv.value(eq.base)
        for j in range(1, k + 1):
            acc = acc - c[n - j] * values[k - j]
        values.append(acc / c[n])
        deriv = deriv.derivative()
    return values


def _taylor_coefficients(poly: IntPoly, lam, count: int) -> List[Coeff]:
    """P^(i)(lam) / i! for i = 0..count-1"""
    out = []
    d = poly
    for i in range(count):
        value = d(lam) if not d.is_zero else 0
        out.append(value / math.factorial(i))
        d = d.derivative()
    return out


def _multiplicity(roots: RootSet, lam, tol: float) -> int:
    if roots.exact and isinstance(lam, GaussianRational):
        return sum(r.multiplicity for r in roots.roots if r.value == lam)
    return roots.multiplicity_of(lam, tol)


def _particular(char_poly: IntPoly, roots: RootSet, lam, forcing: Sequence[Coeff], tol: float) -> ExpPoly:
    """Undetermined coefficients for forcing(t) e^(lam t), degree raised by the resonance multiplicity"""
    order = char_poly.degree
    mu = _multiplicity(roots, lam, tol)
    a = _taylor_coefficients(char_poly, lam, order + 1)
    d = len(forcing) - 1
    u: List[Coeff] = [None] * (d + 1)
    for k in range(d, -1, -1):
        acc = forcing[k]
        for i in range(mu + 1, order + 1):
            idx = k + i - mu
            if idx <= d:
                acc = acc - a[i] * u[idx] * (math.factorial(idx) // math.factorial(k))
        u[k] = acc / a[mu]
    zero = ZERO if all(isinstance(v, GaussianRational) for v in u) else 0j
    # mu-fold primitive of u with zero constants
    poly = [zero] * mu + [u[k] * Fraction(math.factorial(k), math.factorial(k + mu)) for k in range(d + 1)]
    return ExpPoly(((lam, tuple(poly)),))


def _apply_ode(ode_coeffs: Sequence[Coeff], y: ExpPoly) -> ExpPoly:
    total = ExpPoly.zero()
    deriv = y
    for c in ode_coeffs:
        total = total + deriv * c
        deriv = deriv.derivative()
    return total


def solve_ode_closed(ode_coeffs: Sequence[Coeff], rhs: ExpPoly, init: Sequence[Coeff], base=0,
                     tol: float = DEFAULT_TOL, condition_limit: float = 1e12) -> ExpPoly:
    """Solve sum_j c_j y^(j) = rhs with y^(k)(base) = init[k].

    Homogeneous part from the characteristic roots, particular part by undetermined
    coefficients, constants from the initial values. The result is checked by
    substituting it back into the ODE.

    Args:
        ode_coeffs: c_0..c_N, c_j multiplies y^(j); c_N != 0
        rhs: forcing term
        init: N initial values at base
        base: point where the initial values are given
        tol: root clustering tolerance
        condition_limit: largest accepted condition estimate for the constants

    Returns:
        ExpPoly solution
    """
    coeffs, _ = unify(ode_coeffs)
    order = len(coeffs) - 1
    if coeffs[order] == 0:
        raise DegenerateLeadingError("leading ODE coefficient vanishes")
    if len(init) != order:
        raise ValueError(f"expected {order} initial values, got {len(init)}")

    if order == 0:
        y = rhs / coeffs[0]
        _verify(coeffs, rhs, y, [], base, 1.0)
        return y

    char_poly = IntPoly(tuple(reversed(coeffs)))
    roots = find_roots(char_poly, tol)
    logger.debug(f"Characteristic roots: {[(complex(r.value), r.multiplicity) for r in roots.roots]}")

    particular = ExpPoly.zero()
    for lam, forcing in rhs.terms:
        particular = particular + _particular(char_poly, roots, lam, forcing, tol)

    basis = []
    for r in roots.roots:
        for j in range(r.multiplicity):
            basis.append(ExpPoly(((r.value, (0,) * j + (1,)),)))

    matrix = [[None] * order for _ in range(order)]
    derivs = list(basis)
    p_deriv = particular
    target = []
    for k in range(order):
        for col in range(order):
            matrix[k][col] = derivs[col].value(base)
            derivs[col] = derivs[col].derivative()
        target.append(init[k] - p_deriv.value(base))
        p_deriv = p_deriv.derivative()

    constants, exact = solve_linear(matrix, target, condition_limit)
    y = particular
    for c, phi in zip(constants, basis):
        y = y + phi * c
    _verify(coeffs, rhs, y, init, base, condition_number(matrix))
    logger.debug(f"Closed-form ODE solution found ({'exact' if y.exact else 'floating'})")
    return y


def _verify(coeffs, rhs: ExpPoly, y: ExpPoly, init: Sequence[Coeff], base, cond: float):
    residual = _apply_ode(coeffs, y) - rhs
    if y.exact and rhs.exact and all(isinstance(c, GaussianRational) for c in coeffs):
        if not residual.is_zero:
            raise VerificationError("closed-form solution does not satisfy the ODE exactly")
    else:
        scale = max(1.0, rhs.scale(), max(magnitude(c) for c in coeffs) * max(1.0, y.scale()))
        if residual.scale() > 1e-8 * scale:
            raise VerificationError(f"ODE residual {residual.scale():.3e} too large")

    eps = np.finfo(float).eps
    scale = max([1.0] + [magnitude(v) for v in init])
    limit = max(1e-10, 1e3 * cond * eps) * scale
    deriv = y
    for k, v in enumerate(init):
        diff = deriv.value(base) - v
        if diff != 0 and magnitude(diff) > limit:
            raise VerificationError(f"initial value {k} off by {magnitude(diff):.3e}")
        deriv = deriv.derivative()


def solve_closed(eq: IntOrderEquation, tol: float = DEFAULT_TOL, condition_limit: float = 1e12) -> ExpPoly:
    """Initial values, ODE reduction and closed-form solve in one call"""
    if eq.order == 0:
        return eq.rhs / eq.coeffs[0]
    init = initial_conditions(eq)
    ode_coeffs, rhs_deriv = reduce_to_ode(eq)
    return solve_ode_closed(ode_coeffs, rhs_deriv, init, eq.base, tol, condition_limit)
