"""
Tokenizer for the equation language
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from core.exceptions import EquationSyntaxError


class TokenType:
    """Token kinds"""
    NUMBER = "number"
    IMAG = "imaginary number"
    IDENT = "identifier"
    DIRECTIVE = "directive"
    OP = "operator"
    EOF = "end of input"


OPERATORS = "+-*/^=(){}[],"

_NUMBER = re.compile(r"(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Token:
    type: str
    text: str
    line: int
    column: int
    value: Optional[Fraction] = None

    def describe(self) -> str:
        return self.type if self.type == TokenType.EOF else f"'{self.text}'"


def tokenize(text: str) -> List[Token]:
    """Split source text into tokens; whitespace and newlines only separate.

    A number immediately followed by `i` is an imaginary literal. Decimals are
    read as exact fractions.
    """
    tokens: List[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        ch = text[pos]
        column = pos - line_start + 1
        if ch == "\n":
            pos += 1
            line += 1
            line_start = pos
            continue
        if ch.isspace():
            pos += 1
            continue

        match = _NUMBER.match(text, pos)
        if match:
            literal = match.group(0)
            value = Fraction(literal)
            end = match.end()
            if end < len(text) and text[end] == "i" and not (end + 1 < len(text) and _is_word(text[end + 1])):
                tokens.append(Token(TokenType.IMAG, literal + "i", line, column, value))
                pos = end + 1
            else:
                tokens.append(Token(TokenType.NUMBER, literal, line, column, value))
                pos = end
            continue

        if ch == "@":
            match = _IDENT.match(text, pos + 1)
            if not match:
                raise EquationSyntaxError("directive name missing after '@'", line, column, ["base", "interval"])
            tokens.append(Token(TokenType.DIRECTIVE, match.group(0), line, column))
            pos = match.end()
            continue

        match = _IDENT.match(text, pos)
        if match:
            tokens.append(Token(TokenType.IDENT, match.group(0), line, column))
            pos = match.end()
            continue

        if ch in OPERATORS:
            tokens.append(Token(TokenType.OP, ch, line, column))
            pos += 1
            continue

        raise EquationSyntaxError(f"unexpected character {ch!r}", line, column,
                                  [TokenType.NUMBER, TokenType.IDENT, TokenType.OP])

    tokens.append(Token(TokenType.EOF, "", line, pos - line_start + 1))
    return tokens


def _is_word(ch: str) -> bool:
    return ch.isalnum() or ch == "_"
