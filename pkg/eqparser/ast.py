"""
Syntax tree of the equation language
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple, Union

from algebra.coeffs import GaussianRational

FUNCTIONS = ("exp", "sin", "cos", "sinh", "cosh")


@dataclass(frozen=True)
class Num:
    value: GaussianRational


@dataclass(frozen=True)
class Var:
    """The independent variable t"""


@dataclass(frozen=True)
class Sym:
    """A named function of t, bound to samples after parsing"""
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Var, Sym, Neg, BinOp, Pow, Call]


@dataclass(frozen=True)
class LhsTerm:
    """coeff * I^order unknown"""
    coeff: GaussianRational
    order: Fraction
    unknown: str


@dataclass(frozen=True)
class EquationAst:
    lhs_terms: Tuple[LhsTerm, ...]
    rhs: Expr
    base: Fraction = Fraction(0)
    interval: Tuple[Fraction, Fraction] = field(default=(Fraction(0), Fraction(1)))

    @property
    def unknown(self) -> str:
        return self.lhs_terms[0].unknown


def symbols(expr: Expr) -> Tuple[str, ...]:
    """Names of unbound functions in an expression, in order of appearance"""
    if isinstance(expr, Sym):
        return (expr.name,)
    if isinstance(expr, Neg):
        return symbols(expr.operand)
    if isinstance(expr, BinOp):
        left = symbols(expr.left)
        return left + tuple(s for s in symbols(expr.right) if s not in left)
    if isinstance(expr, Pow):
        return symbols(expr.base)
    if isinstance(expr, Call):
        return symbols(expr.arg)
    return ()
