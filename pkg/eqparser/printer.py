"""
Canonical text for equations, operators and the algebra types
"""
from fractions import Fraction
from typing import List, Tuple

from algebra.coeffs import GaussianRational
from algebra.genpoly import GenPoly
from algebra.intpoly import IntPoly
from operators.fractional import FracOperator
from solver.exppoly import ExpPoly
from .ast import BinOp, Call, EquationAst, LhsTerm, Neg, Num, Pow, Sym, Var

_ATOM, _POW, _UNARY, _PRODUCT, _SUM = 5, 4, 3, 2, 1


def _fraction(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _float(value: float) -> str:
    return repr(float(value))


def _complex_text(re: str, im: str, im_negative: bool, has_re: bool) -> str:
    if not has_re:
        return f"({'-' if im_negative else ''}{im}i)"
    return f"({re}{'-' if im_negative else '+'}{im}i)"


def _scalar(c) -> Tuple[bool, str, str]:
    """(negative, body, kind) with kind in int, frac, float, complex"""
    if isinstance(c, (int, Fraction)):
        c = GaussianRational(Fraction(c))
    if isinstance(c, GaussianRational):
        if c.im == 0:
            kind = "int" if c.re.denominator == 1 else "frac"
            return c.re < 0, _fraction(abs(c.re)), kind
        re = _fraction(c.re)
        return False, _complex_text(re, _fraction(abs(c.im)), c.im < 0, c.re != 0), "complex"
    z = complex(c)
    if z.imag == 0:
        return z.real < 0, _float(abs(z.real)), "float"
    return False, _complex_text(_float(z.real), _float(abs(z.imag)), z.imag < 0, z.real != 0), "complex"


def _is_one(c) -> bool:
    return c == 1


def _join(parts: List[Tuple[bool, str]]) -> str:
    if not parts:
        return "0"
    text = ("-" if parts[0][0] else "") + parts[0][1]
    for negative, body in parts[1:]:
        text += (" - " if negative else " + ") + body
    return text


def _term(c, mono: str, wrap_fractions: bool) -> Tuple[bool, str]:
    """Signed part for c * mono; an empty mono prints the bare coefficient"""
    negative, body, kind = _scalar(c)
    if not mono:
        return negative, body
    if _is_one(c) or _is_one(-c):
        return negative, mono
    if kind == "frac" and wrap_fractions:
        body = f"({body})"
    return negative, f"{body} {mono}"


# Algebra types

def format_genpoly(p: GenPoly, var: str = "X") -> str:
    """e.g. `(-5/2+3i) X^{3/4} + 864`"""
    parts = []
    for c, e in p.terms:
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{{{_fraction(e)}}}")
        parts.append(_term(c, mono, wrap_fractions=False))
    return _join(parts)


def format_intpoly(poly: IntPoly, var: str = "X") -> str:
    return format_genpoly(GenPoly(tuple((c, poly.degree - i) for i, c in enumerate(poly.coeffs))), var)


def format_operator(T: FracOperator, unknown: str = "x") -> str:
    """e.g. `I^{2} x - 5 I^{7/4} x + 864 x`; the identity prints as the unknown, zero as 0"""
    parts = []
    for c, r in T.terms:
        mono = unknown if r == 0 else f"I^{{{_fraction(r)}}} {unknown}"
        parts.append(_term(c, mono, wrap_fractions=False))
    return _join(parts)


def _rate(lam, var: str) -> str:
    """Exponent argument lam * var"""
    if isinstance(lam, (int, Fraction)):
        lam = GaussianRational(Fraction(lam))
    if isinstance(lam, GaussianRational) and lam.im == 0:
        r = lam.re
        sign = "-" if r < 0 else ""
        num, den = abs(r.numerator), r.denominator
        head = var if num == 1 else f"{num}{var}"
        return f"{sign}{head}" if den == 1 else f"{sign}{head}/{den}"
    negative, body, _ = _scalar(lam)
    return f"{'-' if negative else ''}{body}{var}"


def _monomial(k: int, var: str) -> str:
    return "" if k == 0 else (var if k == 1 else f"{var}^{k}")


def format_exppoly(e: ExpPoly, var: str = "t") -> str:
    """e.g. `(1/27378000) exp(t/81) + (71/9734400 + (1/3993600) t) exp(t/16) - (1/18000) exp(t)`"""
    parts: List[Tuple[bool, str]] = []
    for lam, poly in e.terms:
        nonzero = [(k, c) for k, c in enumerate(poly) if c != 0]
        if lam == 0:
            parts.extend(_term(c, _monomial(k, var), wrap_fractions=True) for k, c in nonzero)
            continue
        factor = f"exp({_rate(lam, var)})"
        if len(nonzero) == 1:
            k, c = nonzero[0]
            mono = " ".join(s for s in (_monomial(k, var), factor) if s)
            parts.append(_term(c, mono, wrap_fractions=True))
        else:
            inner = _join([_term(c, _monomial(k, var), wrap_fractions=True) for k, c in nonzero])
            parts.append((False, f"({inner}) {factor}"))
    return _join(parts)


# Syntax trees

def _num_precedence(value: GaussianRational) -> int:
    if value.im != 0:
        return _ATOM
    if value.re.denominator != 1:
        return _PRODUCT
    return _UNARY if value.re < 0 else _ATOM


def _precedence(node) -> int:
    if isinstance(node, Num):
        return _num_precedence(node.value)
    if isinstance(node, Pow):
        return _POW
    if isinstance(node, Neg):
        return _UNARY
    if isinstance(node, BinOp):
        return _SUM if node.op in "+-" else _PRODUCT
    return _ATOM


def _wrap(text: str, condition: bool) -> str:
    return f"({text})" if condition else text


def format_expr(node) -> str:
    """Right-hand side text that parses back to the same tree"""
    if isinstance(node, Num):
        negative, body, _ = _scalar(node.value)
        return ("-" if negative else "") + body
    if isinstance(node, Var):
        return "t"
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({format_expr(node.arg)})"
    if isinstance(node, Pow):
        return f"{_wrap(format_expr(node.base), _precedence(node.base) <= _POW)}^{node.exponent}"
    if isinstance(node, Neg):
        return "-" + _wrap(format_expr(node.operand), _precedence(node.operand) < _UNARY)
    if isinstance(node, BinOp):
        level = _precedence(node)
        left = format_expr(node.left)
        right = format_expr(node.right)
        left_wrap = _precedence(node.left) < level
        # `2 / 3` would read back as the literal 2/3
        if node.op == "/" and isinstance(node.left, Num) and node.left.value.im == 0 \
                and node.left.value.re.denominator == 1 and right[:1].isdigit():
            left_wrap = True
        return f"{_wrap(left, left_wrap)} {node.op} {_wrap(right, _precedence(node.right) <= level)}"
    raise TypeError(f"not an expression node: {node!r}")


def format_lhs(terms) -> str:
    parts = []
    for term in terms:
        mono = term.unknown if term.order == 0 else f"I^{{{_fraction(term.order)}}} {term.unknown}"
        parts.append(_term(term.coeff, mono, wrap_fractions=False))
    return _join(parts)


def format_equation(ast: EquationAst) -> str:
    a, b = ast.interval
    return (f"{format_lhs(ast.lhs_terms)} = {format_expr(ast.rhs)}\n"
            f"@base {_fraction(ast.base)} @interval [{_fraction(a)}, {_fraction(b)}]")


def to_text(obj) -> str:
    """Canonical text of any printable value"""
    if isinstance(obj, EquationAst):
        return format_equation(obj)
    if isinstance(obj, LhsTerm):
        return format_lhs([obj])
    if isinstance(obj, GenPoly):
        return format_genpoly(obj)
    if isinstance(obj, IntPoly):
        return format_intpoly(obj)
    if isinstance(obj, FracOperator):
        return format_operator(obj)
    if isinstance(obj, ExpPoly):
        return format_exppoly(obj)
    return format_expr(obj)
