"""
Exception hierarchy for the fractional equation solver
"""
from typing import Iterable, Optional, Any


class FracReduceError(Exception):
    """Base class for all solver errors"""


# Algebra

class AlgebraError(FracReduceError):
    """Generalized polynomial arithmetic failure"""


class NegativeExponentError(AlgebraError):
    """Exponent below zero in a generalized polynomial"""


class ZeroPolynomialError(AlgebraError):
    """Operation undefined on the zero polynomial"""


class IncompatibleDenominatorError(AlgebraError):
    """Substitution variable does not clear all exponent denominators"""


class ExponentOverflowError(AlgebraError):
    """Exponent numerator or denominator beyond the dense representation caps"""


# Root finding

class RootFindingError(FracReduceError):
    """Root finder failure"""


class NonConvergenceError(RootFindingError):
    """Iteration budget exhausted before the roots reproduced the polynomial"""


# Operators

class OperatorError(FracReduceError):
    """Numerical operator failure"""


class PoleError(OperatorError):
    """Gamma evaluated at a nonpositive integer"""


class OrderOutOfRangeError(OperatorError):
    """Fractional order outside the supported range"""


class BaseMismatchError(OperatorError):
    """Operator base point differs from the grid base point"""


class DomainError(OperatorError):
    """Argument outside the safe evaluation domain"""


class GridFormatError(OperatorError):
    """Grid data file is malformed or not uniformly spaced"""


# Solver

class SolverError(FracReduceError):
    """Integer-order equation solver failure"""


class FirstKindUnsupportedError(SolverError):
    """Equation has no identity term"""


class SingularStepError(SolverError):
    """Volterra stepping hit a vanishing diagonal"""


class DegenerateLeadingError(SolverError):
    """Leading coefficient of the differentiated system vanishes"""


class IllConditionedError(SolverError):
    """Linear system for integration constants is ill-conditioned"""


class VerificationError(SolverError):
    """Closed-form solution failed its symbolic check"""


# Pipeline

class PipelineError(FracReduceError):
    """End-to-end solve failure"""


class NoSolutionError(PipelineError):
    """The fractional equation has no integrable solution"""


class ResidualAboveToleranceError(NoSolutionError):
    """Candidate solution rejected by the residual check"""

    def __init__(self, message: str, report: Optional[Any] = None):
        super().__init__(message)
        self.report = report


# Parsing

class ParseError(FracReduceError):
    """Equation text could not be turned into an equation"""


class EquationSyntaxError(ParseError):
    """Syntax error with position and the tokens that would have been accepted"""

    def __init__(self, message: str, line: int, column: int, expected: Iterable[str] = ()):
        self.line = line
        self.column = column
        self.expected = sorted(set(expected))
        hint = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"line {line}, column {column}: {message}{hint}")


class MultipleUnknownsError(ParseError):
    """More than one unknown function on the left-hand side"""


class NegativeOrderError(ParseError):
    """Integral order below zero"""


class UnboundSymbolError(ParseError):
    """Right-hand side symbol without a data binding"""
