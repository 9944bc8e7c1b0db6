"""
Generalized polynomials: finite sums of nonnegative rational powers of X
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Tuple

from core.exceptions import (
    NegativeExponentError,
    ZeroPolynomialError,
    IncompatibleDenominatorError,
    ExponentOverflowError,
)
from .coeffs import Coeff, ONE, ZERO, unify, magnitude
from .intpoly import IntPoly

MAX_DENOMINATOR = 10 ** 6
MAX_NUMERATOR = 10 ** 9
ZERO_TOL = 1e-12

Term = Tuple[Coeff, Fraction]


def _as_exponent(e) -> Fraction:
    if isinstance(e, float):
        # floats only make sense when they are short decimals
        return Fraction(e).limit_denominator(MAX_DENOMINATOR)
    return Fraction(e)


@dataclass(frozen=True)
class GenPoly:
    """Normalized generalized polynomial.

    Terms are (coefficient, exponent) pairs with strictly decreasing exponents and
    nonzero coefficients. Coefficients are all GaussianRational (exact mode) or all
    complex (floating mode); a single float input puts the whole polynomial in
    floating mode. In floating mode coefficients with magnitude at most 1e-12 times
    the largest input coefficient are dropped.
    """
    terms: Tuple[Term, ...] = ()

    def __post_init__(self):
        raw = [(c, _as_exponent(e)) for c, e in self.terms]
        for _, e in raw:
            if e < 0:
                raise NegativeExponentError(f"exponent {e} is negative")
            if e.denominator > MAX_DENOMINATOR or abs(e.numerator) > MAX_NUMERATOR:
                raise ExponentOverflowError(f"exponent {e} exceeds the supported range")

        coeffs, exact = unify(c for c, _ in raw)
        merged = {}
        for c, (_, e) in zip(coeffs, raw):
            merged[e] = merged[e] + c if e in merged else c

        limit = 0.0
        if not exact:
            limit = ZERO_TOL * max((abs(c) for c in coeffs), default=0.0)

        terms = tuple(
            (c, e) for e, c in sorted(merged.items(), key=lambda kv: kv[0], reverse=True)
            if (c != 0 if exact else abs(c) > limit)
        )
        object.__setattr__(self, 'terms', terms)
        object.__setattr__(self, '_exact', exact)

    @classmethod
    def constant(cls, c) -> "GenPoly":
        return cls(((c, Fraction(0)),))

    @classmethod
    def monomial(cls, exponent, c=ONE) -> "GenPoly":
        return cls(((c, exponent),))

    @property
    def exact(self) -> bool:
        return self._exact

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def exponents(self) -> List[Fraction]:
        return [e for _, e in self.terms]

    @property
    def coefficients(self) -> List[Coeff]:
        return [c for c, _ in self.terms]

    @property
    def leading_exponent(self) -> Fraction:
        if self.is_zero:
            raise ZeroPolynomialError("zero polynomial has no leading exponent")
        return self.terms[0][1]

    def coeff(self, exponent) -> Coeff:
        exponent = Fraction(exponent)
        for c, e in self.terms:
            if e == exponent:
                return c
        return ZERO if self.exact else 0j

    def scale(self) -> float:
        return max((magnitude(c) for c, _ in self.terms), default=0.0)

    def common_denominator(self) -> int:
        return common_denominator(self)

    def is_ordinary(self) -> bool:
        return is_ordinary(self)

    def substitute_down(self, q: int) -> IntPoly:
        return substitute_down(self, q)

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return negate(self)

    def __sub__(self, other):
        return add(self, negate(_coerce(other)))

    def __rsub__(self, other):
        return add(_coerce(other), negate(self))

    def __mul__(self, other):
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __repr__(self):
        body = ", ".join(f"({c!r}, {e})" for c, e in self.terms)
        return f"GenPoly([{body}])"


def _coerce(value) -> GenPoly:
    if isinstance(value, GenPoly):
        return value
    return GenPoly.constant(value)


# Module level operations

def make_genpoly(terms: Iterable[Tuple[object, object]]) -> GenPoly:
    """Build a normalized generalized polynomial from (coefficient, exponent) pairs.

    Args:
        terms: iterable of (coefficient, exponent); exponents must be >= 0

    Returns:
        GenPoly with merged exponents, zero coefficients dropped, sorted descending
    """
    return GenPoly(tuple(terms))


def common_denominator(p: GenPoly) -> int:
    """Least common multiple of the exponent denominators"""
    if p.is_zero:
        raise ZeroPolynomialError("common denominator of the zero polynomial")
    q = 1
    for e in p.exponents:
        q = q * e.denominator // math.gcd(q, e.denominator)
    return q


def add(p: GenPoly, r: GenPoly) -> GenPoly:
    return GenPoly(p.terms + r.terms)


def negate(p: GenPoly) -> GenPoly:
    return GenPoly(tuple((-c, e) for c, e in p.terms))


def mul(p: GenPoly, r: GenPoly) -> GenPoly:
    return GenPoly(tuple((a * b, e + f) for a, e in p.terms for b, f in r.terms))


def is_ordinary(p: GenPoly) -> bool:
    return all(e.denominator == 1 for e in p.exponents)


def substitute_down(p: GenPoly, q: int) -> IntPoly:
    """p(Y**q) as an ordinary polynomial in Y"""
    if q < 1:
        raise IncompatibleDenominatorError(f"substitution power must be positive, got {q}")
    if p.is_zero:
        return IntPoly()
    if q % common_denominator(p):
        raise IncompatibleDenominatorError(
            f"q={q} is not a multiple of the common denominator {common_denominator(p)}")
    degree = int(p.leading_exponent * q)
    zero = ZERO if p.exact else 0j
    ascending = [zero] * (degree + 1)
    for c, e in p.terms:
        ascending[int(e * q)] = c
    return IntPoly.from_ascending(ascending)


def substitute_up(poly: IntPoly, q: int) -> GenPoly:
    """Inverse of substitute_down: Y**k becomes X**(k/q)"""
    if q < 1:
        raise IncompatibleDenominatorError(f"substitution power must be positive, got {q}")
    d = poly.degree
    return GenPoly(tuple((c, Fraction(d - i, q)) for i, c in enumerate(poly.coeffs) if c != 0))
