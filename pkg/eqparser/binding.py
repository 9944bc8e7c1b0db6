"""
Semantic pass: syntax tree -> Equation, with data bindings for named functions
"""
import cmath
from typing import Dict, Optional

import numpy as np

from core.exceptions import ParseError, UnboundSymbolError
from algebra.coeffs import GaussianRational, ONE
from operators.fractional import FracOperator
from operators.grid import GridFunction
from pipeline.models import Equation
from solver.exppoly import ExpPoly
from .ast import BinOp, Call, EquationAst, Expr, Neg, Num, Pow, Sym, Var, symbols
from .parser import parse, parse_expression

I_UNIT = GaussianRational(0, 1)


def operator_of(ast: EquationAst) -> FracOperator:
    return FracOperator(ast.base, tuple((term.coeff, term.order) for term in ast.lhs_terms))


def _constant_of(e: ExpPoly):
    if e.is_zero:
        return 0
    if len(e.terms) == 1 and e.terms[0][0] == 0 and len(e.terms[0][1]) == 1:
        return e.terms[0][1][0]
    return None


def _exp_of_linear(arg: ExpPoly, c) -> ExpPoly:
    """exp(c * (a t + b)) for a linear argument a t + b"""
    if arg.is_zero:
        return ExpPoly.constant(ONE)
    poly = arg.poly_for(0)
    if len(arg.terms) != 1 or not poly or len(poly) > 2:
        raise ParseError("elementary functions need a linear argument a*t + b")
    b = poly[0]
    a = poly[1] if len(poly) > 1 else 0
    shift = c * b
    factor = ONE if shift == 0 else cmath.exp(complex(shift))
    return ExpPoly.exp(c * a, factor)


def _call(func: str, arg: ExpPoly) -> ExpPoly:
    if func == "exp":
        return _exp_of_linear(arg, ONE)
    if func in ("sin", "cos"):
        up, down = _exp_of_linear(arg, I_UNIT), _exp_of_linear(arg, -I_UNIT)
        return (up - down) / (2 * I_UNIT) if func == "sin" else (up + down) / 2
    up, down = _exp_of_linear(arg, ONE), _exp_of_linear(arg, -ONE)
    return (up - down) / 2 if func == "sinh" else (up + down) / 2


def to_exppoly(node: Expr) -> ExpPoly:
    """Exact exponential polynomial of a symbol-free expression"""
    if isinstance(node, Num):
        return ExpPoly.constant(node.value)
    if isinstance(node, Var):
        return ExpPoly.t_power(1, ONE)
    if isinstance(node, Sym):
        raise UnboundSymbolError(f"'{node.name}' is not bound to data")
    if isinstance(node, Neg):
        return -to_exppoly(node.operand)
    if isinstance(node, Pow):
        base = to_exppoly(node.base)
        result = ExpPoly.constant(ONE)
        for _ in range(node.exponent):
            result = result * base
        return result
    if isinstance(node, Call):
        return _call(node.func, to_exppoly(node.arg))
    if isinstance(node, BinOp):
        left, right = to_exppoly(node.left), to_exppoly(node.right)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        divisor = _constant_of(right)
        if divisor is None:
            raise ParseError("only division by a constant is supported")
        if divisor == 0:
            raise ParseError("division by zero")
        return left / divisor
    raise TypeError(f"not an expression node: {node!r}")


_NUMPY_FUNCTIONS = {"exp": np.exp, "sin": np.sin, "cos": np.cos, "sinh": np.sinh, "cosh": np.cosh}


def to_samples(node: Expr, t: np.ndarray, bindings: Dict[str, GridFunction]) -> np.ndarray:
    """Pointwise values of an expression on the nodes t"""
    if isinstance(node, Num):
        return np.full(t.shape, complex(node.value))
    if isinstance(node, Var):
        return t.astype(complex)
    if isinstance(node, Sym):
        if node.name not in bindings:
            raise UnboundSymbolError(f"'{node.name}' is not bound to data")
        return np.asarray(bindings[node.name].values, dtype=complex)
    if isinstance(node, Neg):
        return -to_samples(node.operand, t, bindings)
    if isinstance(node, Pow):
        return to_samples(node.base, t, bindings) ** node.exponent
    if isinstance(node, Call):
        return _NUMPY_FUNCTIONS[node.func](to_samples(node.arg, t, bindings))
    left, right = to_samples(node.left, t, bindings), to_samples(node.right, t, bindings)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    return left / right


def bind(ast: EquationAst, bindings: Optional[Dict[str, GridFunction]] = None) -> Equation:
    """Build the Equation of a parsed document.

    Symbol-free right-hand sides become exact exponential polynomials. Otherwise every
    symbol needs a sampled binding, all on one grid, and the right-hand side is sampled.

    Raises:
        UnboundSymbolError: a symbol without a binding, or the unknown on the right
    """
    bindings = bindings or {}
    T = operator_of(ast)
    names = symbols(ast.rhs)
    if ast.unknown in names:
        raise UnboundSymbolError(f"the unknown '{ast.unknown}' appears on the right-hand side")
    if not names:
        return Equation(T, to_exppoly(ast.rhs), ast.interval)

    missing = [name for name in names if name not in bindings]
    if missing:
        raise UnboundSymbolError(f"no data bound to {', '.join(missing)}; pass --rhs-csv")
    grids = [bindings[name] for name in names]
    for other in grids[1:]:
        if not grids[0].same_grid(other):
            raise ParseError("bound data sets use different grids")
    values = to_samples(ast.rhs, grids[0].t, bindings)
    return Equation(T, grids[0].with_values(values), ast.interval)


def parse_equation(text: str, bindings: Optional[Dict[str, GridFunction]] = None) -> Equation:
    """Parse and bind in one call"""
    return bind(parse(text), bindings)


def parse_exppoly(text: str, exact: bool = True) -> ExpPoly:
    """Exponential polynomial from expression text, the inverse of format_exppoly"""
    e = to_exppoly(parse_expression(text))
    if exact:
        return e
    return ExpPoly(tuple((complex(lam), tuple(complex(c) for c in p)) for lam, p in e.terms))
