"""
Coefficient types: exact Gaussian rationals and floating complex numbers
"""
import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, List, Tuple, Union

from core.exceptions import AlgebraError


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number re + im*i with rational parts"""
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.re, _RationalABC) or not isinstance(self.im, _RationalABC):
            raise AlgebraError(f"GaussianRational parts must be rational, got {self.re!r}, {self.im!r}")
        object.__setattr__(self, 're', Fraction(self.re))
        object.__setattr__(self, 'im', Fraction(self.im))

    @staticmethod
    def _lift(value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, _RationalABC):
            return GaussianRational(Fraction(value))
        return None

    # Arithmetic

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) + other
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) - other
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other - complex(self)
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) * other
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) / other
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by exact zero")
        return GaussianRational((self.re * o.re + self.im * o.im) / norm,
                                (self.im * o.re - self.re * o.im) / norm)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other / complex(self)
            return NotImplemented
        return o / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return complex(self) ** exponent
        if exponent < 0:
            return GaussianRational(1) / (self ** -exponent)
        result, base = GaussianRational(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # Comparison and conversion

    def __eq__(self, other):
        o = self._lift(other)
        if o is not None:
            return self.re == o.re and self.im == o.im
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self) -> float:
        return abs(complex(self))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __repr__(self):
        if self.im == 0:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"


Coeff = Union[GaussianRational, complex]

ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def is_exact(value) -> bool:
    """True for values that can be held as a GaussianRational"""
    return isinstance(value, (GaussianRational, _RationalABC)) and not isinstance(value, bool)


def lift(value) -> Coeff:
    """Turn a number into a coefficient: rationals stay exact, floats become complex"""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, bool):
        raise AlgebraError("booleans are not coefficients")
    if isinstance(value, _RationalABC):
        return GaussianRational(Fraction(value))
    if isinstance(value, (int, float, complex)):
        c = complex(value)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise AlgebraError(f"coefficient must be finite, got {value!r}")
        return c
    # numpy scalars and friends
    try:
        c = complex(value)
    except TypeError as e:
        raise AlgebraError(f"unsupported coefficient {value!r}") from e
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise AlgebraError(f"coefficient must be finite, got {value!r}")
    return c


def unify(values: Iterable) -> Tuple[List[Coeff], bool]:
    """Lift values to one representation: exact if every value is exact, floating otherwise.

    Returns:
        (coefficients, exact flag)
    """
    lifted = [lift(v) for v in values]
    if all(isinstance(c, GaussianRational) for c in lifted):
        return lifted, True
    return [complex(c) for c in lifted], False


def magnitude(value) -> float:
    return abs(complex(value))


def root_of_unity(q: int, j: int) -> complex:
    """xi**j for the principal primitive q-th root xi = exp(2*pi*i/q)"""
    j %= q
    if j == 0:
        return 1 + 0j
    if 4 * j == q:
        return 1j
    if 2 * j == q:
        return -1 + 0j
    if 4 * j == 3 * q:
        return -1j
    return cmath.exp(2j * math.pi * j / q)
