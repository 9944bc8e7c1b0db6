"""
Fractional integrals of exponential polynomials in closed form
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from operators.fractional import FracOperator
from operators.grid import GridFunction
from operators.special import exp_moment_integral, DEFAULT_BOUND
from .exppoly import ExpPoly


@dataclass(frozen=True)
class FracExpTerm:
    """coeff * I_base^order [(s - base)^m exp(lam (s - base))]"""
    coeff: complex
    lam: complex
    m: int
    order: Fraction


@dataclass(frozen=True)
class FracExpSum:
    """Finite sum of Riemann-Liouville integrals (or derivatives, for negative order) of
    shifted exponential monomials, all taken from the same base point"""
    base: float
    terms: Tuple[FracExpTerm, ...] = ()

    def __add__(self, other: "FracExpSum") -> "FracExpSum":
        if float(self.base) != float(other.base):
            raise ValueError("sums built on different base points")
        return FracExpSum(self.base, self.terms + other.terms)

    def scaled(self, c) -> "FracExpSum":
        c = complex(c)
        return FracExpSum(self.base, tuple(
            FracExpTerm(t.coeff * c, t.lam, t.m, t.order) for t in self.terms))

    def shift_order(self, delta) -> "FracExpSum":
        """Compose with I^delta (delta may be negative: D^{-delta})"""
        delta = Fraction(delta)
        return FracExpSum(self.base, tuple(
            FracExpTerm(t.coeff, t.lam, t.m, t.order + delta) for t in self.terms))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, t, bound: float = DEFAULT_BOUND) -> np.ndarray:
        s = np.asarray(t, dtype=float) - float(self.base)
        s = np.where(np.abs(s) < 1e-15 * max(1.0, abs(float(self.base))), 0.0, s)
        out = np.zeros_like(s, dtype=complex)
        # group identical kernels so each series is evaluated once
        grouped = {}
        for term in self.terms:
            key = (term.lam, term.m, term.order)
            grouped[key] = grouped.get(key, 0j) + term.coeff
        for (lam, m, order), c in grouped.items():
            if c == 0:
                continue
            with np.errstate(invalid='ignore', over='ignore'):
                out = out + c * exp_moment_integral(m, order, lam, s, bound)
        return out

    def sample(self, grid: GridFunction, bound: float = DEFAULT_BOUND) -> GridFunction:
        return grid.with_values(self.evaluate(grid.t, bound))


def exppoly_to_sum(e: ExpPoly, base) -> FracExpSum:
    """ExpPoly rewritten as sum of coeff * (t - base)^m exp(lam (t - base)), order 0"""
    terms: List[FracExpTerm] = []
    for lam, factor, d in e.shifted(base):
        for m, c in enumerate(d):
            if c != 0:
                terms.append(FracExpTerm(complex(c) * complex(factor), complex(lam), m, Fraction(0)))
    return FracExpSum(base, tuple(terms))


def frac_integral_exppoly(e: ExpPoly, order, base) -> FracExpSum:
    """I_base^order e, exact up to the series evaluation"""
    return exppoly_to_sum(e, base).shift_order(order)


def apply_operator_exppoly(T: FracOperator, e: ExpPoly) -> FracExpSum:
    """T e for an exponential-polynomial e, termwise in closed form"""
    base_sum = exppoly_to_sum(e, T.base)
    total = FracExpSum(T.base)
    for c, r in T.terms:
        total = total + base_sum.shift_order(r).scaled(c)
    return total
