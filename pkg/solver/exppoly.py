"""
Exponential polynomials: finite sums p(t) * exp(lam * t)
"""
import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np

from algebra.coeffs import Coeff, GaussianRational, ZERO, ONE, unify, magnitude
from operators.grid import GridFunction

Term = Tuple[Coeff, Tuple[Coeff, ...]]


def _trim(poly: List[Coeff]) -> List[Coeff]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_add(p: Sequence[Coeff], r: Sequence[Coeff]) -> List[Coeff]:
    if len(p) < len(r):
        p, r = r, p
    out = list(p)
    for i, c in enumerate(r):
        out[i] = out[i] + c
    return out


def _poly_mul(p: Sequence[Coeff], r: Sequence[Coeff], zero) -> List[Coeff]:
    if not p or not r:
        return []
    out = [zero] * (len(p) + len(r) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(r):
            out[i + j] = out[i + j] + x * y
    return out


def _poly_derivative(p: Sequence[Coeff]) -> List[Coeff]:
    return [c * i for i, c in enumerate(p)][1:]


def _exact_point(t) -> bool:
    return isinstance(t, Rational) and not isinstance(t, bool)


@dataclass(frozen=True)
class ExpPoly:
    """sum over distinct lam of poly_lam(t) * exp(lam t); polynomials are degree-ascending.

    Exact when every exponent rate and coefficient is exact.
    """
    terms: Tuple[Term, ...] = ()

    def __post_init__(self):
        lams = [lam for lam, _ in self.terms]
        polys = [list(p) for _, p in self.terms]
        flat, exact = unify(lams + [c for p in polys for c in p])
        lam_values, rest = flat[:len(lams)], flat[len(lams):]
        merged: Dict[Coeff, List[Coeff]] = {}
        pos = 0
        for lam, p in zip(lam_values, polys):
            coeffs = rest[pos:pos + len(p)]
            pos += len(p)
            merged[lam] = _poly_add(merged[lam], coeffs) if lam in merged else list(coeffs)
        terms = []
        for lam, p in merged.items():
            p = _trim(p)
            if p:
                terms.append((lam, tuple(p)))
        terms.sort(key=lambda term: (complex(term[0]).real, complex(term[0]).imag))
        object.__setattr__(self, 'terms', tuple(terms))
        object.__setattr__(self, '_exact', exact)

    # Constructors

    @classmethod
    def zero(cls) -> "ExpPoly":
        return cls(())

    @classmethod
    def exp(cls, lam, coeff=1) -> "ExpPoly":
        return cls(((lam, (coeff,)),))

    @classmethod
    def polynomial(cls, coeffs: Sequence) -> "ExpPoly":
        return cls(((0, tuple(coeffs)),))

    @classmethod
    def constant(cls, c) -> "ExpPoly":
        return cls.polynomial((c,))

    @classmethod
    def t_power(cls, k: int, coeff=1) -> "ExpPoly":
        return cls.polynomial((0,) * k + (coeff,))

    # Properties

    @property
    def exact(self) -> bool:
        return self._exact

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def poly_for(self, lam) -> Tuple[Coeff, ...]:
        for rate, p in self.terms:
            if rate == lam:
                return p
        return ()

    def scale(self) -> float:
        return max((magnitude(c) for _, p in self.terms for c in p), default=0.0)

    # Algebra

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            other = ExpPoly.constant(other)
        return ExpPoly(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> "ExpPoly":
        return ExpPoly(tuple((lam, tuple(-c for c in p)) for lam, p in self.terms))

    def __sub__(self, other: "ExpPoly") -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            other = ExpPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "ExpPoly":
        return ExpPoly.constant(other) - self

    def __mul__(self, other) -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            return ExpPoly(tuple((lam, tuple(c * other for c in p)) for lam, p in self.terms))
        zero = ZERO if self.exact and other.exact else 0j
        return ExpPoly(tuple(
            (lam + mu, tuple(_poly_mul(p, r, zero)))
            for lam, p in self.terms for mu, r in other.terms
        ))

    __rmul__ = __mul__

    def __truediv__(self, c) -> "ExpPoly":
        inv = ONE / c if isinstance(c, (Rational, GaussianRational)) else 1 / complex(c)
        return self * inv

    def derivative(self, k: int = 1) -> "ExpPoly":
        result = self
        for _ in range(k):
            result = ExpPoly(tuple(
                (lam, tuple(_poly_add(_poly_derivative(p), [c * lam for c in p])))
                for lam, p in result.terms
            ))
        return result

    def antiderivative(self, base=0) -> "ExpPoly":
        """The primitive vanishing at t = base"""
        terms = []
        for lam, p in self.terms:
            if lam == 0:
                terms.append((lam, (ZERO if self.exact else 0j,) + tuple(c / (i + 1) for i, c in enumerate(p))))
                continue
            # P = sum_i (-1)^i p^(i) / lam^(i+1) solves P' + lam P = p
            acc: List[Coeff] = []
            d = list(p)
            sign_power = ONE / lam if self.exact else 1 / complex(lam)
            factor = sign_power
            while d:
                acc = _poly_add(acc, [c * factor for c in d])
                d = _poly_derivative(d)
                factor = -factor * sign_power
            terms.append((lam, tuple(acc)))
        primitive = ExpPoly(tuple(terms))
        return primitive - ExpPoly.constant(primitive.value(base))

    # Evaluation

    def value(self, t) -> Coeff:
        """Value at t; exact when the data are exact and every exp factor is exactly 1"""
        exact_t = self.exact and _exact_point(t)
        total = ZERO if exact_t else 0j
        for lam, p in self.terms:
            poly_value = ZERO if exact_t else 0j
            x = Fraction(t) if exact_t else complex(t)
            for c in reversed(p):
                poly_value = poly_value * x + c
            if exact_t and (lam == 0 or t == 0):
                total = total + poly_value
            else:
                total = complex(total) + complex(poly_value) * cmath.exp(complex(lam) * complex(t))
        return total

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t, dtype=complex)
        for lam, p in self.terms:
            coeffs = np.array([complex(c) for c in reversed(p)], dtype=complex)
            out = out + np.polyval(coeffs, t) * np.exp(complex(lam) * t)
        return out

    def shifted(self, base) -> List[Tuple[Coeff, Coeff, List[Coeff]]]:
        """Rewrite around t = base: [(lam, exp(lam*base), [d_m])] with poly = sum d_m (t-base)^m"""
        exact_base = self.exact and _exact_point(base)
        a = Fraction(base) if exact_base else complex(base)
        out = []
        for lam, p in self.terms:
            d = []
            for m in range(len(p)):
                acc = ZERO if exact_base else 0j
                for i in range(m, len(p)):
                    acc = acc + p[i] * math.comb(i, m) * a ** (i - m)
                d.append(acc)
            if exact_base and (lam == 0 or a == 0):
                factor = ONE
            else:
                factor = cmath.exp(complex(lam) * complex(base))
            out.append((lam, factor, d))
        return out

    def __eq__(self, other):
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return len(self.terms) == len(other.terms) and all(
            lam == mu and len(p) == len(r) and all(x == y for x, y in zip(p, r))
            for (lam, p), (mu, r) in zip(self.terms, other.terms))

    def __hash__(self):
        return hash(tuple((complex(lam), tuple(complex(c) for c in p)) for lam, p in self.terms))

    def __repr__(self):
        return f"ExpPoly({list(self.terms)!r})"


def sample(e: ExpPoly, grid: GridFunction) -> GridFunction:
    """Evaluate e at the nodes of grid's shape"""
    return grid.with_values(e.evaluate(grid.t))


def sample_on(e: ExpPoly, a: float, b: float, n: int) -> GridFunction:
    return GridFunction.from_function(a, b, n, e.evaluate)
