"""
Ordinary polynomials with dense, degree-descending coefficients
"""
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from core.exceptions import ZeroPolynomialError
from .coeffs import Coeff, GaussianRational, ZERO, ONE, unify, magnitude


def _trim(coeffs: List[Coeff]) -> List[Coeff]:
    i = 0
    while i < len(coeffs) and coeffs[i] == 0:
        i += 1
    return coeffs[i:]


@dataclass(frozen=True)
class IntPoly:
    """Polynomial c[0] Y^d + ... + c[d]; the empty tuple is the zero polynomial"""
    coeffs: Tuple[Coeff, ...] = ()

    def __post_init__(self):
        values, exact = unify(self.coeffs)
        object.__setattr__(self, 'coeffs', tuple(_trim(values)))
        object.__setattr__(self, '_exact', exact)

    @classmethod
    def constant(cls, c) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c=ONE) -> "IntPoly":
        return cls((c,) + (ZERO,) * degree)

    @classmethod
    def from_ascending(cls, coeffs: Sequence) -> "IntPoly":
        return cls(tuple(reversed(list(coeffs))))

    @classmethod
    def from_roots(cls, roots: Sequence, lead=ONE) -> "IntPoly":
        """lead * prod (Y - r)"""
        result = cls((lead,))
        for r in roots:
            result = result * cls((ONE, -r))
        return result

    # Properties

    @property
    def exact(self) -> bool:
        return self._exact

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial"""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Coeff:
        if self.is_zero:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[0]

    def ascending(self) -> List[Coeff]:
        return list(reversed(self.coeffs))

    def coeff(self, power: int) -> Coeff:
        """Coefficient of Y**power"""
        if power < 0 or power > self.degree:
            return ZERO if self.exact else 0j
        return self.coeffs[self.degree - power]

    def trailing_zeros(self) -> int:
        """Multiplicity of the root Y = 0"""
        k = 0
        for c in reversed(self.coeffs):
            if c != 0:
                break
            k += 1
        return k

    def scale(self) -> float:
        return max((magnitude(c) for c in self.coeffs), default=0.0)

    def as_float(self) -> "IntPoly":
        return IntPoly(tuple(complex(c) for c in self.coeffs))

    def to_numpy(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    # Arithmetic

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.ascending(), other.ascending()
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return IntPoly.from_ascending(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other) -> "IntPoly":
        if not isinstance(other, IntPoly):
            return IntPoly(tuple(c * other for c in self.coeffs))
        if self.is_zero or other.is_zero:
            return IntPoly()
        if self.exact and other.exact:
            out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, x in enumerate(self.coeffs):
                if x == 0:
                    continue
                for j, y in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + x * y
            return IntPoly(tuple(out))
        return IntPoly(tuple(np.convolve(self.to_numpy(), other.to_numpy())))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        result = IntPoly((ONE,))
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, y):
        """Horner evaluation"""
        acc = ZERO if self.exact else 0j
        for c in self.coeffs:
            acc = acc * y + c
        return acc

    def derivative(self) -> "IntPoly":
        d = self.degree
        return IntPoly(tuple(c * (d - i) for i, c in enumerate(self.coeffs[:-1])))

    def divmod(self, divisor: "IntPoly") -> Tuple["IntPoly", "IntPoly"]:
        """Long division; exact when both operands are exact"""
        if divisor.is_zero:
            raise ZeroPolynomialError("division by the zero polynomial")
        rem = list(self.coeffs)
        dd = divisor.degree
        if self.degree < dd:
            return IntPoly(), self
        quot = []
        lead = divisor.leading
        for i in range(self.degree - dd + 1):
            factor = rem[i] / lead
            quot.append(factor)
            if factor != 0:
                for j, c in enumerate(divisor.coeffs):
                    rem[i + j] = rem[i + j] - factor * c
        return IntPoly(tuple(quot)), IntPoly(tuple(rem[len(quot):]))

    def shift_down(self, k: int) -> "IntPoly":
        """Divide by Y**k, assuming k trailing zeros"""
        if k == 0:
            return self
        return IntPoly(self.coeffs[:-k])

    def compose_power(self, q: int) -> "IntPoly":
        """P(Y**q)"""
        if self.is_zero or q == 1:
            return self
        zero = ZERO if self.exact else 0j
        out = []
        for i, c in enumerate(self.coeffs):
            out.append(c)
            if i < self.degree:
                out.extend([zero] * (q - 1))
        return IntPoly(tuple(out))

    def chop(self, zero_tol: float = 1e-12, scale: float = None) -> "IntPoly":
        """Floating mode cleanup of coefficients below zero_tol * scale"""
        if self.exact:
            return self
        limit = zero_tol * (self.scale() if scale is None else scale)
        return IntPoly(tuple(0j if abs(c) <= limit else c for c in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, IntPoly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(tuple(complex(c) for c in self.coeffs))

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)!r})"


def exact_rational_coeffs(poly: IntPoly) -> bool:
    """Exact and every coefficient real"""
    return poly.exact and all(isinstance(c, GaussianRational) and c.im == 0 for c in poly.coeffs)
