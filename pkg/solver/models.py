"""
Integer-order integral equation model
"""
from dataclasses import dataclass
from typing import Tuple, Union

from algebra.coeffs import Coeff, unify
from algebra.intpoly import IntPoly
from operators.grid import GridFunction
from .exppoly import ExpPoly

Rhs = Union[ExpPoly, GridFunction]


@dataclass(frozen=True)
class IntOrderEquation:
    """c_0 I^n x + ... + c_{n-1} I x + c_n x = rhs, integrals taken from base.

    coeffs are c_0..c_n. n = 0 is allowed and means c_0 x = rhs.
    """
    coeffs: Tuple[Coeff, ...]
    base: float
    rhs: Rhs

    def __post_init__(self):
        values, exact = unify(self.coeffs)
        if not values:
            raise ValueError("an integral equation needs at least one coefficient")
        if values[0] == 0:
            raise ValueError("leading coefficient c_0 must be nonzero")
        object.__setattr__(self, 'coeffs', tuple(values))
        object.__setattr__(self, '_exact', exact)

    @property
    def exact(self) -> bool:
        return self._exact

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def identity_coeff(self) -> Coeff:
        return self.coeffs[-1]

    def with_rhs(self, rhs: Rhs) -> "IntOrderEquation":
        return IntOrderEquation(self.coeffs, self.base, rhs)
