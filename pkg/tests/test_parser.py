"""
Equation language: lexer, parser, printer and binding
"""
import random
from fractions import Fraction

import numpy as np
import pytest

from algebra.coeffs import GaussianRational
from algebra.genpoly import GenPoly
from algebra.intpoly import IntPoly
from core.exceptions import (
    EquationSyntaxError, MultipleUnknownsError, NegativeOrderError, ParseError, UnboundSymbolError,
)
from eqparser import parse, parse_equation, parse_exppoly, parse_genpoly, to_text
from eqparser.ast import BinOp, Call, EquationAst, LhsTerm, Neg, Num, Pow, Sym, Var
from eqparser.lexer import TokenType, tokenize
from eqparser.parser import parse_expression
from eqparser.printer import (
    format_equation, format_expr, format_exppoly, format_genpoly, format_intpoly, format_operator,
)
from operators.fractional import FracOperator
from operators.grid import GridFunction
from pipeline.models import Equation
from solver.exppoly import ExpPoly
from tests.conftest import EXAMPLE_REDUCED, EXAMPLE_TEXT
from tests.test_solver import EXAMPLE_Y

F = Fraction


# Lexer

def test_tokenize_kinds():
    tokens = tokenize("2.5 x + 3i @base")
    assert [t.type for t in tokens] == [
        TokenType.NUMBER, TokenType.IDENT, TokenType.OP, TokenType.IMAG, TokenType.DIRECTIVE, TokenType.EOF]
    assert tokens[0].value == F(5, 2)
    assert tokens[3].value == 3


def test_tokenize_exponent_notation():
    assert tokenize("2.5e1")[0].value == 25


def test_tokenize_rejects_unknown_character():
    with pytest.raises(EquationSyntaxError) as info:
        tokenize("x = $")
    assert (info.value.line, info.value.column) == (1, 5)


# Parser

def test_example_equation(example_operator, example_rhs):
    equation = parse_equation(EXAMPLE_TEXT)
    assert isinstance(equation, Equation)
    assert equation.T == example_operator
    assert equation.rhs == example_rhs
    assert equation.interval == (0, 1)


def test_optional_argument_and_explicit_product():
    a = parse("2 * I^{1/2} x(t) + x(t) = 1")
    b = parse("2 I^{1/2} x + x = 1")
    assert a == b


def test_literals():
    ast = parse("(-5/2+3i) I^{1/2} x + 2.5 x + 1/2i I^{1/4} x = 1")
    coeffs = [term.coeff for term in ast.lhs_terms]
    assert coeffs == [GaussianRational(F(-5, 2), 3), GaussianRational(F(5, 2)), GaussianRational(0, F(1, 2))]


def test_signs_on_lhs():
    ast = parse("-I^{1/2} x - 3 x = 1")
    assert [term.coeff for term in ast.lhs_terms] == [-1, -3]


def test_directive_defaults():
    assert parse("x = 1").interval == (0, 1)
    ast = parse("@base 1 I^{1/2} x = 1")
    assert ast.base == 1
    assert ast.interval == (1, 2)
    ast = parse("I^{1/2} x = 1\n@interval [1/2, 3/2]")
    assert ast.base == F(1, 2)
    assert ast.interval == (F(1, 2), F(3, 2))


@pytest.mark.parametrize("text", [
    "@base 0 @base 1 x = 1",
    "@interval [1, 1] x = 1",
    "@speed 3 x = 1",
])
def test_bad_directives(text):
    with pytest.raises(EquationSyntaxError):
        parse(text)


def test_syntax_error_position():
    with pytest.raises(EquationSyntaxError) as info:
        parse("I^{1/2} x + = 1")
    error = info.value
    assert (error.line, error.column) == (1, 13)
    assert "'I'" in error.expected
    assert "line 1, column 13" in str(error)


def test_syntax_error_at_end_of_second_line():
    with pytest.raises(EquationSyntaxError) as info:
        parse("I^{1/2} x\n= exp(t) +")
    assert (info.value.line, info.value.column) == (2, 11)
    assert TokenType.NUMBER in info.value.expected


def test_negative_order():
    with pytest.raises(NegativeOrderError):
        parse("I^{-1/2} x = 1")


@pytest.mark.parametrize("text", ["I^{1/2} y + z = 1", "I^{1/2} y = I^{1/2} z"])
def test_multiple_unknowns(text):
    with pytest.raises(MultipleUnknownsError):
        parse(text)


def test_integral_on_rhs():
    with pytest.raises(EquationSyntaxError):
        parse("I^{1/2} y = I^{1/2} y")


def test_power_needs_integer_exponent():
    with pytest.raises(EquationSyntaxError):
        parse("x = t^{1/2}")


def test_precedence():
    assert parse_expression("1 + 2 t^2") == BinOp("+", Num(GaussianRational(1)),
                                                  BinOp("*", Num(GaussianRational(2)), Pow(Var(), 2)))
    assert parse_expression("-t^2") == Neg(Pow(Var(), 2))
    assert parse_expression("t / 2 / 3") == BinOp("/", BinOp("/", Var(), Num(GaussianRational(2))),
                                                  Num(GaussianRational(3)))


# Printer

def test_format_operator(example_operator):
    assert format_operator(example_operator) == EXAMPLE_TEXT.split(" = ")[0]
    assert format_operator(FracOperator.identity()) == "x"
    assert format_operator(FracOperator(0, ())) == "0"
    assert format_operator(FracOperator(0, ((F(-5, 2), F(1, 2)),)), "y") == "-5/2 I^{1/2} y"


def test_format_exppoly():
    assert format_exppoly(EXAMPLE_Y) == \
        "(1/27378000) exp(t/81) + (71/9734400 + (1/3993600) t) exp(t/16) - (1/18000) exp(t)"


def test_format_algebra():
    p = GenPoly(((GaussianRational(F(-5, 2), 3), F(3, 4)), (864, F(0))))
    assert format_genpoly(p) == "(-5/2+3i) X^{3/4} + 864"
    assert format_intpoly(IntPoly(EXAMPLE_REDUCED)) == "X^{3} - 113 X^{2} + 2848 X - 20736"


# Algebra text round trips

def test_parse_genpoly_literal():
    p = parse_genpoly("(-2.5+3i) X^{3/4} + 864")
    assert p == GenPoly(((GaussianRational(F(-5, 2), 3), F(3, 4)), (864, F(0))))
    assert p.exact


@pytest.mark.parametrize("text, terms", [
    ("0", ()),
    ("X", ((1, F(1)),)),
    ("-X^2 + 2*X - 1/2", ((-1, F(2)), (2, F(1)), (F(-1, 2), F(0)))),
    ("3i X^{1/3} + X^{1/3}", ((GaussianRational(1, 3), F(1, 3)),)),
])
def test_parse_genpoly_forms(text, terms):
    assert parse_genpoly(text) == GenPoly(terms)


@pytest.mark.parametrize("text", ["X^{1/2} +", "X^1/2", "Y", "2 X X"])
def test_parse_genpoly_rejects(text):
    with pytest.raises(EquationSyntaxError):
        parse_genpoly(text)


def _random_rational(rng: random.Random, low: int, high: int) -> Fraction:
    return F(rng.randint(low, high), rng.choice([1, 2, 3, 4]))


def test_genpoly_print_parse_roundtrip():
    rng = random.Random(11)
    for _ in range(200):
        terms = tuple((GaussianRational(_random_rational(rng, -9, 9), rng.choice([0, 0, _random_rational(rng, -5, 5)])),
                       _random_rational(rng, 0, 12)) for _ in range(rng.randint(0, 5)))
        p = GenPoly(terms)
        text = format_genpoly(p)
        assert parse_genpoly(text) == p, text


def test_float_genpoly_print_parse_roundtrip():
    rng = random.Random(12)
    for _ in range(200):
        terms = tuple((complex(rng.uniform(-5, 5), rng.choice([0.0, rng.uniform(-5, 5)])),
                       _random_rational(rng, 0, 12)) for _ in range(rng.randint(1, 5)))
        p = GenPoly(terms)
        text = format_genpoly(p)
        back = parse_genpoly(text, exact=False)
        assert not back.exact
        assert back == p, text


def test_float_coefficients_print_shortest():
    p = GenPoly(((0.1, F(1, 2)), (1e-05 + 2.5j, F(0))))
    assert format_genpoly(p) == "0.1 X^{1/2} + (1e-05+2.5i)"


def test_exppoly_print_parse_roundtrip():
    assert parse_exppoly(format_exppoly(EXAMPLE_Y)) == EXAMPLE_Y
    rng = random.Random(13)
    for _ in range(200):
        terms = []
        for _ in range(rng.randint(0, 3)):
            lam = GaussianRational(_random_rational(rng, -6, 6), rng.choice([0, 0, _random_rational(rng, -3, 3)]))
            poly = tuple(GaussianRational(_random_rational(rng, -9, 9), rng.choice([0, 1]))
                         for _ in range(rng.randint(1, 3)))
            terms.append((lam, poly))
        e = ExpPoly(tuple(terms))
        text = format_exppoly(e)
        assert parse_exppoly(text) == e, text


def test_float_exppoly_print_parse_roundtrip():
    rng = random.Random(14)
    for _ in range(200):
        terms = []
        for _ in range(rng.randint(1, 3)):
            lam = complex(rng.uniform(-3, 3), rng.choice([0.0, rng.uniform(-3, 3)]))
            poly = tuple(complex(rng.uniform(-5, 5), rng.choice([0.0, rng.uniform(-1, 1)]))
                         for _ in range(rng.randint(1, 3)))
            terms.append((lam, poly))
        e = ExpPoly(tuple(terms))
        text = format_exppoly(e)
        back = parse_exppoly(text, exact=False)
        assert not back.exact
        assert back == e, text


def test_equation_text_roundtrip():
    ast = parse(EXAMPLE_TEXT)
    text = to_text(ast)
    assert text == EXAMPLE_TEXT + "\n@base 0 @interval [0, 1]"
    assert parse(text) == ast


def _random_expr(rng: random.Random, depth: int):
    if depth == 0 or rng.random() < 0.25:
        kind = rng.randrange(3)
        if kind == 0:
            return Num(GaussianRational(F(rng.randint(0, 9), rng.choice([1, 1, 2, 3]))))
        return Var() if kind == 1 else Sym(rng.choice(["f", "g"]))
    kind = rng.randrange(4)
    if kind == 0:
        operand = _random_expr(rng, depth - 1)
        return operand if isinstance(operand, Num) else Neg(operand)
    if kind == 1:
        return Pow(_random_expr(rng, depth - 1), rng.randint(0, 3))
    if kind == 2:
        return Call(rng.choice(["exp", "sin", "cosh"]), _random_expr(rng, depth - 1))
    op = rng.choice("+-*/")
    left = _random_expr(rng, depth - 1)
    if op == "/":
        # a literal after '/' would merge with a literal before it
        right = rng.choice([Var(), Sym("f"), Call("cos", Var())])
    else:
        right = _random_expr(rng, depth - 1)
    return BinOp(op, left, right)


def test_expression_print_parse_roundtrip():
    rng = random.Random(7)
    for _ in range(300):
        tree = _random_expr(rng, 4)
        text = format_expr(tree)
        assert parse_expression(text) == tree, text


def _random_coeff(rng: random.Random) -> GaussianRational:
    while True:
        c = GaussianRational(_random_rational(rng, -9, 9), rng.choice([0, 0, _random_rational(rng, -5, 5)]))
        if c != 0:
            return c


def _random_equation(rng: random.Random) -> EquationAst:
    unknown = rng.choice(["x", "u", "y"])
    terms = tuple(LhsTerm(_random_coeff(rng), rng.choice([F(0), _random_rational(rng, 0, 9)]), unknown)
                  for _ in range(rng.randint(1, 4)))
    a = _random_rational(rng, -4, 4)
    b = a + F(rng.randint(1, 5), rng.choice([1, 2]))
    return EquationAst(terms, _random_expr(rng, 3), a, (a, b))


def test_equation_print_parse_roundtrip():
    rng = random.Random(8)
    for _ in range(300):
        ast = _random_equation(rng)
        text = format_equation(ast)
        assert parse(text) == ast, text


# Binding

def test_elementary_functions():
    equation = parse_equation("x = sin(2*t) + cos(t) - sinh(t) / 2")
    t = np.linspace(0, 1, 11)
    expected = np.sin(2 * t) + np.cos(t) - np.sinh(t) / 2
    assert np.allclose(equation.rhs.evaluate(t), expected, atol=1e-14)


def test_shifted_exponential():
    equation = parse_equation("x = exp(t/2 + 1)")
    t = np.linspace(0, 1, 5)
    assert np.allclose(equation.rhs.evaluate(t), np.exp(t / 2 + 1), rtol=1e-14)


@pytest.mark.parametrize("text", ["x = 1 / t", "x = exp(t^2)", "x = t / 0"])
def test_unsupported_closed_forms(text):
    with pytest.raises(ParseError):
        parse_equation(text)


def test_unbound_symbol():
    with pytest.raises(UnboundSymbolError):
        parse_equation("I^{1/2} x = f")


def test_unknown_on_rhs():
    with pytest.raises(UnboundSymbolError):
        parse_equation("I^{1/2} x = x + 1")


def test_grid_binding():
    f = GridFunction.from_function(0, 1, 64, np.cos)
    equation = parse_equation("I^{1/2} x = 2 f + t", {"f": f})
    assert isinstance(equation.rhs, GridFunction)
    assert equation.rhs.n == 64
    assert np.allclose(equation.rhs.values, 2 * np.cos(f.t) + f.t)


def test_grid_bindings_must_share_grid():
    f = GridFunction.from_function(0, 1, 64, np.cos)
    g = GridFunction.from_function(0, 1, 32, np.sin)
    with pytest.raises(ParseError):
        parse_equation("x = f + g", {"f": f, "g": g})
