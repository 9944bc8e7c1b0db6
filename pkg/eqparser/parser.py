"""
Recursive-descent parser for the equation language.

    document  := directive* equation directive*
    directive := "@base" signed | "@interval" "[" signed "," signed "]"
    equation  := lhs "=" expr
    lhs       := ["+"|"-"] term (("+"|"-") term)*
    term      := [coeff ["*"]] ["I" "^" "{" rational "}"] ident ["(" "t" ")"]
    expr      := ["+"|"-"] product (("+"|"-") product)*
    product   := unary (("*"|"/") unary | unary)*
    unary     := "-" unary | "+" unary | power
    power     := primary ["^" (integer | "{" integer "}")]
    primary   := literal | "t" | func "(" expr ")" | ident ["(" "t" ")"] | "(" expr ")"

    poly      := ["+"|"-"] mono (("+"|"-") mono)*
    mono      := [coeff ["*"]] [X ["^" ("{" rational "}" | integer)]]   (coefficient or X)

Literals: `3`, `2.5`, `5/2`, `3i`, `1/2i` (i/2), `(-5/2+3i)`.
"""
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from core.exceptions import EquationSyntaxError, MultipleUnknownsError, NegativeOrderError
from algebra.coeffs import GaussianRational
from algebra.genpoly import GenPoly
from .ast import BinOp, Call, EquationAst, Expr, FUNCTIONS, LhsTerm, Neg, Num, Pow, Sym, Var
from .lexer import Token, TokenType, tokenize

VARIABLE = "t"
INTEGRAL = "I"
RESERVED = set(FUNCTIONS) | {VARIABLE, INTEGRAL}

_PRIMARY_START = [TokenType.NUMBER, TokenType.IMAG, TokenType.IDENT, "'('"]


class Parser:
    """Parse one equation document into an EquationAst"""

    def __init__(self, text: str):
        self.tokens: List[Token] = tokenize(text)
        self.pos = 0
        self.unknown: Optional[str] = None

    # Token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.current
        if token.type != TokenType.EOF:
            self.pos += 1
        return token

    def at_op(self, *ops: str) -> bool:
        return self.current.type == TokenType.OP and self.current.text in ops

    def error(self, message: str, expected: Iterable[str], token: Optional[Token] = None) -> EquationSyntaxError:
        token = token or self.current
        return EquationSyntaxError(message, token.line, token.column, expected)

    def expect_op(self, op: str) -> Token:
        if not self.at_op(op):
            raise self.error(f"unexpected {self.current.describe()}", [f"'{op}'"])
        return self.advance()

    def expect(self, token_type: str) -> Token:
        if self.current.type != token_type:
            raise self.error(f"unexpected {self.current.describe()}", [token_type])
        return self.advance()

    # Document

    def parse(self) -> EquationAst:
        directives = {}
        self._directives(directives)
        terms = self._lhs()
        self.unknown = terms[0].unknown
        self.expect_op("=")
        rhs = self._expr()
        self._directives(directives)
        if self.current.type != TokenType.EOF:
            raise self.error(f"unexpected {self.current.describe()}",
                             [TokenType.EOF, TokenType.DIRECTIVE, "'+'", "'-'", "'*'", "'/'"])

        base = directives.get("base")
        interval = directives.get("interval")
        if interval is None:
            base = Fraction(0) if base is None else base
            interval = (base, base + 1)
        elif base is None:
            base = interval[0]
        return EquationAst(tuple(terms), rhs, base, interval)

    def _directives(self, seen: dict):
        while self.current.type == TokenType.DIRECTIVE:
            token = self.advance()
            name = token.text
            if name in seen:
                raise self.error(f"duplicate directive @{name}", ["'='", TokenType.EOF], token)
            if name == "base":
                seen["base"] = self._signed_rational()
            elif name == "interval":
                self.expect_op("[")
                a = self._signed_rational()
                self.expect_op(",")
                b = self._signed_rational()
                self.expect_op("]")
                if not b > a:
                    raise self.error(f"empty interval [{a}, {b}]", ["upper end above lower end"], token)
                seen["interval"] = (a, b)
            else:
                raise self.error(f"unknown directive @{name}", ["@base", "@interval"], token)

    def _signed_rational(self) -> Fraction:
        sign = -1 if self.at_op("-") else 1
        if self.at_op("-", "+"):
            self.advance()
        return sign * self._rational()

    def _rational(self) -> Fraction:
        value = self.expect(TokenType.NUMBER).value
        if self.at_op("/"):
            self.advance()
            denominator = self.expect(TokenType.NUMBER).value
            if denominator == 0:
                raise self.error("zero denominator", [TokenType.NUMBER], self.tokens[self.pos - 1])
            value = value / denominator
        return value

    # Left-hand side

    def _lhs(self) -> List[LhsTerm]:
        terms = []
        sign = 1
        if self.at_op("+", "-"):
            sign = -1 if self.advance().text == "-" else 1
        terms.append(self._term(sign))
        while self.at_op("+", "-"):
            sign = -1 if self.advance().text == "-" else 1
            terms.append(self._term(sign))

        unknowns = []
        for term in terms:
            if term.unknown not in unknowns:
                unknowns.append(term.unknown)
        if len(unknowns) > 1:
            raise MultipleUnknownsError(f"left-hand side has several unknowns: {', '.join(unknowns)}")
        return terms

    def _term(self, sign: int) -> LhsTerm:
        coeff = GaussianRational(1)
        if self.current.type in (TokenType.NUMBER, TokenType.IMAG) or self.at_op("("):
            coeff = self._literal()
            if self.at_op("*"):
                self.advance()

        order = Fraction(0)
        if self.current.type == TokenType.IDENT and self.current.text == INTEGRAL and self.peek().text == "^":
            self.advance()
            self.advance()
            self.expect_op("{")
            if self.at_op("-"):
                raise NegativeOrderError(
                    f"line {self.current.line}, column {self.current.column}: integral orders must be nonnegative")
            order = self._rational()
            self.expect_op("}")

        token = self.current
        if token.type != TokenType.IDENT or token.text in RESERVED:
            raise self.error(f"unexpected {token.describe()}", ["unknown function name"]
                             + ([] if order else ["'I'"]))
        self.advance()
        self._optional_argument()
        return LhsTerm(coeff * sign, order, token.text)

    def _optional_argument(self):
        """Consume a trailing (t)"""
        if self.at_op("(") and self.peek().text == VARIABLE and self.peek(2).text == ")":
            self.advance()
            self.advance()
            self.advance()

    # Literals

    def _literal(self) -> GaussianRational:
        token = self.current
        if self.at_op("("):
            value = self._complex_literal()
            if value is None:
                raise self.error("coefficient must be a number", [TokenType.NUMBER, TokenType.IMAG], token)
            return value
        return self._real_or_imag()

    def _real_or_imag(self) -> GaussianRational:
        """NUMBER, IMAG, NUMBER/NUMBER or NUMBER/IMAG"""
        token = self.current
        if token.type == TokenType.IMAG:
            self.advance()
            return GaussianRational(0, token.value)
        value = self.expect(TokenType.NUMBER).value
        if self.at_op("/") and self.peek().type in (TokenType.NUMBER, TokenType.IMAG):
            self.advance()
            denominator = self.advance()
            if denominator.value == 0:
                raise self.error("zero denominator", [TokenType.NUMBER], denominator)
            if denominator.type == TokenType.IMAG:
                return GaussianRational(0, value / denominator.value)
            return GaussianRational(value / denominator.value)
        return GaussianRational(value)

    def _complex_literal(self) -> Optional[GaussianRational]:
        """'(' [-] real [(+|-) imag] ')' or '(' [-] imag ')'; None (and no input consumed) otherwise"""
        start = self.pos
        try:
            self.expect_op("(")
            sign = 1
            if self.at_op("-"):
                self.advance()
                sign = -1
            value = self._real_or_imag() * sign
            if self.at_op("+", "-") and value.im == 0:
                sign = -1 if self.advance().text == "-" else 1
                imag = self._real_or_imag()
                if imag.re != 0:
                    raise self.error("", [])
                value = value + imag * sign
            self.expect_op(")")
            return value
        except EquationSyntaxError:
            self.pos = start
            return None

    # Generalized polynomials

    def genpoly(self, var: str) -> List[Tuple[GaussianRational, Fraction]]:
        """poly := ["+"|"-"] mono (("+"|"-") mono)*"""
        terms = []
        sign = 1
        if self.at_op("+", "-"):
            sign = -1 if self.advance().text == "-" else 1
        terms.append(self._mono(sign, var))
        while self.at_op("+", "-"):
            sign = -1 if self.advance().text == "-" else 1
            terms.append(self._mono(sign, var))
        if self.current.type != TokenType.EOF:
            raise self.error(f"unexpected {self.current.describe()}", [TokenType.EOF, "'+'", "'-'"])
        return terms

    def _mono(self, sign: int, var: str) -> Tuple[GaussianRational, Fraction]:
        """One (coefficient, exponent) pair; a bare coefficient has exponent 0"""
        coeff = None
        if self.current.type in (TokenType.NUMBER, TokenType.IMAG) or self.at_op("("):
            coeff = self._literal()
            if self.at_op("*"):
                self.advance()
        exponent = Fraction(0)
        if self.current.type == TokenType.IDENT and self.current.text == var:
            self.advance()
            exponent = Fraction(1)
            if self.at_op("^"):
                self.advance()
                if self.at_op("{"):
                    self.advance()
                    exponent = self._rational()
                    self.expect_op("}")
                else:
                    token = self.expect(TokenType.NUMBER)
                    if token.value.denominator != 1:
                        raise self.error("unbraced exponents must be integers", ["'{'", "integer"], token)
                    exponent = token.value
        elif coeff is None:
            raise self.error(f"unexpected {self.current.describe()}",
                             [TokenType.NUMBER, TokenType.IMAG, "'('", f"'{var}'"])
        return (GaussianRational(1) if coeff is None else coeff) * sign, exponent

    # Right-hand side

    def _expr(self) -> Expr:
        node = self._product()
        while self.at_op("+", "-"):
            op = self.advance().text
            node = BinOp(op, node, self._product())
        return node

    def _product(self) -> Expr:
        node = self._unary()
        while True:
            if self.at_op("*", "/"):
                op = self.advance().text
                node = BinOp(op, node, self._unary(fold=op != "/"))
            elif self._starts_primary():
                node = BinOp("*", node, self._unary())
            else:
                return node

    def _starts_primary(self) -> bool:
        return self.current.type in (TokenType.NUMBER, TokenType.IMAG, TokenType.IDENT) or self.at_op("(")

    def _unary(self, fold: bool = True) -> Expr:
        if self.at_op("-"):
            self.advance()
            operand = self._unary(fold)
            if isinstance(operand, Num):
                return Num(-operand.value)
            return Neg(operand)
        if self.at_op("+"):
            self.advance()
            return self._unary(fold)
        return self._power(fold)

    def _power(self, fold: bool) -> Expr:
        node = self._primary(fold)
        if self.at_op("^"):
            self.advance()
            braced = self.at_op("{")
            if braced:
                self.advance()
            token = self.current
            if token.type != TokenType.NUMBER or token.value.denominator != 1:
                raise self.error("powers of expressions take nonnegative integer exponents",
                                 ["integer"], token)
            self.advance()
            if braced:
                self.expect_op("}")
            node = Pow(node, int(token.value))
        return node

    def _primary(self, fold: bool) -> Expr:
        token = self.current
        if token.type in (TokenType.NUMBER, TokenType.IMAG):
            if fold:
                return Num(self._real_or_imag())
            self.advance()
            return Num(GaussianRational(0, token.value) if token.type == TokenType.IMAG
                       else GaussianRational(token.value))

        if token.type == TokenType.IDENT:
            self.advance()
            if token.text == VARIABLE:
                return Var()
            if token.text in FUNCTIONS:
                self.expect_op("(")
                arg = self._expr()
                self.expect_op(")")
                return Call(token.text, arg)
            if token.text == INTEGRAL and self.at_op("^"):
                self.pos -= 1
                term = self._term(1)
                if self.unknown is not None and term.unknown != self.unknown:
                    raise MultipleUnknownsError(
                        f"unknowns {self.unknown} and {term.unknown} both appear under integrals")
                raise self.error("integral terms belong on the left-hand side", _PRIMARY_START, token)
            self._optional_argument()
            return Sym(token.text)

        if self.at_op("("):
            literal = self._complex_literal()
            if literal is not None:
                return Num(literal)
            self.advance()
            node = self._expr()
            self.expect_op(")")
            return node

        raise self.error(f"unexpected {token.describe()}", _PRIMARY_START)


def parse(text: str) -> EquationAst:
    """Parse equation text.

    Raises:
        EquationSyntaxError: malformed input, with line, column and expected tokens
        MultipleUnknownsError: more than one unknown on the left-hand side
        NegativeOrderError: an integral order below zero
    """
    return Parser(text).parse()


def parse_expression(text: str) -> Expr:
    """Parse a bare right-hand side expression"""
    parser = Parser(text)
    node = parser._expr()
    if parser.current.type != TokenType.EOF:
        raise parser.error(f"unexpected {parser.current.describe()}", [TokenType.EOF])
    return node


def parse_genpoly(text: str, var: str = "X", exact: bool = True) -> GenPoly:
    """Parse generalized polynomial text such as `(-2.5+3i) X^{3/4} + 864`.

    Decimals are read exactly; exact=False returns a floating-mode polynomial.
    """
    terms = Parser(text).genpoly(var)
    if not exact:
        terms = [(complex(c), e) for c, e in terms]
    return GenPoly(tuple(terms))
