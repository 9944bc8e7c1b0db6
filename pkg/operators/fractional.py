"""
Riemann-Liouville fractional integrals and derivatives on uniform grids
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy import special as sp

from core.exceptions import BaseMismatchError, OrderOutOfRangeError, DomainError
from algebra.coeffs import Coeff, unify
from .grid import GridFunction, grid_derivative

# |x| below this uses the binomial series for (1+x)^p - 1 - p x
SERIES_SWITCH = 0.125
SERIES_TERMS = 40


def _g(p: float, x: np.ndarray) -> np.ndarray:
    """(1 + x)**p - 1 - p*x without cancellation"""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    near = np.abs(x) <= SERIES_SWITCH
    if np.any(near):
        xs = x[near]
        coef = p * (p - 1) / 2
        power = xs * xs
        acc = coef * power
        for i in range(3, SERIES_TERMS):
            coef *= (p - i + 1) / i
            power = power * xs
            acc = acc + coef * power
        out[near] = acc
    far = ~near
    if np.any(far):
        xf = x[far]
        with np.errstate(divide='ignore'):
            out[far] = np.expm1(p * np.log1p(xf)) - p * xf
    return out


@lru_cache(maxsize=256)
def product_weights(alpha: Fraction, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Product-trapezoid weights for I^alpha with unit step.

    (I^alpha f)(t_k) ~ h^alpha / Gamma(alpha + 2) * (w0[k] f_0 + sum_{j=1..k} b[k-j] f_j)
    with b[0] = 1, b[m] = (m+1)^p - 2 m^p + (m-1)^p and w0[k] = (k-1)^p - (k-p) k^(p-1),
    p = alpha + 1, both evaluated in factored form.

    Returns:
        (w0, b), each of length n + 1; read-only
    """
    p = float(alpha) + 1.0
    m = np.arange(1, n + 1, dtype=float)
    b = np.empty(n + 1)
    b[0] = 1.0
    b[1:] = m ** p * (_g(p, 1.0 / m) + _g(p, -1.0 / m))
    w0 = np.empty(n + 1)
    w0[0] = 0.0
    w0[1:] = m ** p * _g(p, -1.0 / m)
    b.setflags(write=False)
    w0.setflags(write=False)
    return w0, b


def _raw_integral(values: np.ndarray, alpha: Fraction, n: int) -> np.ndarray:
    """Unscaled product-trapezoid sums (h = 1, without the 1/Gamma(alpha+2) factor)"""
    w0, b = product_weights(alpha, n)
    out = np.zeros(n + 1, dtype=complex)
    if n:
        out[1:] = w0[1:] * values[0] + np.convolve(b[:n], values[1:])[:n]
    return out


def start_exponents_for(q: int, upper: int = 2) -> Tuple[Fraction, ...]:
    """Non-integer exponents k/q below `upper` that singular start weights should cover"""
    if q <= 1:
        return ()
    return tuple(Fraction(k, q) for k in range(1, upper * q) if k % q)


@lru_cache(maxsize=128)
def start_weights(alpha: Fraction, exponents: Tuple[Fraction, ...], n: int) -> np.ndarray:
    """Correction weights W (s x (n+1)) for the first s nodes.

    With the correction h^alpha * sum_j W[j, k] f_j added to the product-trapezoid value
    at t_k, the rule integrates (t - a)^gamma exactly for every gamma in
    {0, 1} + exponents. Row j belongs to node j.
    """
    gammas = [Fraction(0), Fraction(1)] + [e for e in exponents if e not in (0, 1)]
    s = len(gammas)
    if s > n + 1:
        raise DomainError(f"{s} start weights need at least {s} grid points")
    k = np.arange(n + 1, dtype=float)
    nodes = np.arange(s, dtype=float)
    vander = np.array([[node ** float(g) if (node or g) else 1.0 for node in nodes] for g in gammas])
    scale = sp.rgamma(float(alpha) + 2)

    errors = np.zeros((s, n + 1))
    for row, g in enumerate(gammas):
        if g in (0, 1):
            continue
        samples = k ** float(g)
        quad = scale * _raw_integral(samples, alpha, n).real
        exact = math.exp(math.lgamma(float(g) + 1) - math.lgamma(float(g + alpha) + 1)) * k ** float(g + alpha)
        errors[row] = exact - quad
    weights = np.linalg.solve(vander, errors)
    weights.setflags(write=False)
    return weights


def frac_integral(f: GridFunction, alpha, start_exponents: Optional[Sequence] = None) -> GridFunction:
    """Left Riemann-Liouville integral I_a^alpha f on f's grid.

    Product integration: the piecewise-linear interpolant of f is integrated exactly
    against (t_k - s)^(alpha-1) / Gamma(alpha). Order 0 returns f. With
    start_exponents, singular starting weights make the rule exact on
    (t - a)^gamma for those exponents as well.

    Args:
        f: samples on [a, b]
        alpha: nonnegative order
        start_exponents: optional exponents gamma for the starting correction

    Returns:
        GridFunction on the same grid, zero at t_0
    """
    alpha = Fraction(alpha) if not isinstance(alpha, float) else Fraction(alpha).limit_denominator(10 ** 6)
    if alpha < 0:
        raise OrderOutOfRangeError(f"integral order must be nonnegative, got {alpha}")
    if alpha == 0:
        return f
    n = f.n
    values = f.values
    result = sp.rgamma(float(alpha) + 2) * _raw_integral(values, alpha, n)
    if start_exponents:
        exps = tuple(sorted(set(Fraction(e) for e in start_exponents)))
        weights = start_weights(alpha, exps, n)
        result = result + weights.T @ values[:weights.shape[0]]
    return f.with_values(result * f.h ** float(alpha))


def gl_frac_derivative(f: GridFunction, alpha) -> GridFunction:
    """Grunwald-Letnikov approximation of the Riemann-Liouville derivative, 0 < alpha < 1"""
    a = float(alpha)
    if not 0 < a < 1:
        raise OrderOutOfRangeError(f"Grunwald-Letnikov derivative needs 0 < alpha < 1, got {alpha}")
    j = np.arange(1, f.n + 1, dtype=float)
    coeffs = np.concatenate([[1.0], np.cumprod(1.0 - (a + 1.0) / j)])
    values = np.convolve(coeffs, f.values)[:f.n + 1]
    return f.with_values(values * f.h ** (-a))


def rl_frac_derivative(f: GridFunction, alpha) -> GridFunction:
    """Riemann-Liouville derivative of any positive order: D^m I^(m - alpha) f, m = ceil(alpha)"""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise OrderOutOfRangeError(f"derivative order must be positive, got {alpha}")
    m = math.ceil(alpha)
    return grid_derivative(frac_integral(f, m - alpha), m)


@dataclass(frozen=True)
class FracOperator:
    """sum_i c_i I_a^{r_i} with strictly decreasing orders; order 0 is the identity"""
    base: float
    terms: Tuple[Tuple[Coeff, Fraction], ...] = ()

    def __post_init__(self):
        raw = [(c, Fraction(r)) for c, r in self.terms]
        for _, r in raw:
            if r < 0:
                raise OrderOutOfRangeError(f"operator order must be nonnegative, got {r}")
        coeffs, exact = unify(c for c, _ in raw)
        merged = {}
        for c, (_, r) in zip(coeffs, raw):
            merged[r] = merged[r] + c if r in merged else c
        terms = tuple((c, r) for r, c in sorted(merged.items(), reverse=True) if c != 0)
        object.__setattr__(self, 'terms', terms)
        object.__setattr__(self, '_exact', exact)

    @classmethod
    def identity(cls, base: float = 0.0) -> "FracOperator":
        return cls(base, ((1, 0),))

    @property
    def exact(self) -> bool:
        return self._exact

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_identity(self) -> bool:
        return len(self.terms) == 1 and self.terms[0][1] == 0 and self.terms[0][0] == 1

    @property
    def orders(self) -> Tuple[Fraction, ...]:
        return tuple(r for _, r in self.terms)

    @property
    def identity_coeff(self) -> Coeff:
        for c, r in self.terms:
            if r == 0:
                return c
        return 0

    def common_denominator(self) -> int:
        q = 1
        for r in self.orders:
            q = q * r.denominator // math.gcd(q, r.denominator)
        return q

    def __call__(self, f: GridFunction, start_exponents: Optional[Sequence] = None) -> GridFunction:
        return apply_operator(self, f, start_exponents)


def _check_base(T: FracOperator, f: GridFunction):
    a = float(T.base)
    if abs(a - f.a) > 1e-12 * max(1.0, abs(a)):
        raise BaseMismatchError(f"operator base {T.base} differs from grid start {f.a}")


def apply_operator(T: FracOperator, f: GridFunction, start_exponents: Optional[Iterable] = None) -> GridFunction:
    """sum_i c_i I^{r_i} f; the identity term bypasses quadrature"""
    _check_base(T, f)
    exps = tuple(start_exponents) if start_exponents else None
    out = np.zeros(f.n + 1, dtype=complex)
    for c, r in T.terms:
        if r == 0:
            out = out + complex(c) * f.values
        else:
            out = out + complex(c) * frac_integral(f, r, exps).values
    return f.with_values(out)
