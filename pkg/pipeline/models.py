"""
Pipeline models: equations, reports and the report schema
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field

from core.config.models import SolveMethod
from core.exceptions import BaseMismatchError, DomainError
from operators.fractional import FracOperator
from operators.grid import GridFunction
from solver.closed_form import FracExpSum
from solver.exppoly import ExpPoly
from solver.models import IntOrderEquation

Rhs = Union[ExpPoly, GridFunction]


@dataclass(frozen=True)
class Equation:
    """Fractional integral equation T x = rhs on [a, b]"""
    T: FracOperator
    rhs: Rhs
    interval: Tuple[Any, Any]

    def __post_init__(self):
        a, b = self.interval
        if not float(b) > float(a):
            raise DomainError(f"interval [{a}, {b}] needs b > a")
        if abs(float(self.T.base) - float(a)) > 1e-12 * max(1.0, abs(float(a))):
            raise BaseMismatchError(f"operator base {self.T.base} differs from interval start {a}")
        if isinstance(self.rhs, GridFunction):
            if abs(self.rhs.a - float(a)) > 1e-12 * max(1.0, abs(float(a))) or \
                    abs(self.rhs.b - float(b)) > 1e-12 * max(1.0, abs(float(b))):
                raise DomainError("sampled right-hand side does not cover the equation interval")

    @property
    def a(self):
        return self.interval[0]

    @property
    def b(self):
        return self.interval[1]

    def rhs_on(self, n: int) -> GridFunction:
        """Right-hand side sampled on the n-interval grid"""
        if isinstance(self.rhs, GridFunction):
            if self.rhs.n != n:
                raise DomainError(f"sampled right-hand side has n={self.rhs.n}, requested n={n}")
            return self.rhs
        return GridFunction.from_function(float(self.a), float(self.b), n, self.rhs.evaluate)

    def with_rhs(self, rhs: Rhs) -> "Equation":
        return Equation(self.T, rhs, self.interval)


@dataclass(frozen=True)
class Reduction:
    """T_hat with T T_hat = I^strip R', R' having an identity term"""
    t_hat: FracOperator
    reduced: FracOperator
    strip: int
    equation_coeffs: Tuple[Any, ...]
    q: int
    integrality_defect: float
    exact: bool
    minimal: bool


@dataclass
class SolveReport:
    """Outcome of one solve"""
    method: SolveMethod
    t_hat: FracOperator
    reduced_equation: IntOrderEquation
    strip: int
    residual_sup: float
    tol: float
    grid_n: int
    accepted: bool
    solution_grid: GridFunction
    y_closed: Optional[ExpPoly] = None
    x_closed: Optional[FracExpSum] = None
    x_exppoly: Optional[ExpPoly] = None
    closed_form: Optional[str] = None
    # solution stepped on the original equation after the reduced route failed
    direct_fallback: bool = False
    diagnostics: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    residual_sup: float
    observed_order: Optional[float]


class SolutionRecord(BaseModel):
    closed_form: Optional[str] = None
    csv_path: Optional[str] = None


class SolveReportRecord(BaseModel):
    """JSON shape of a solve report"""
    method: SolveMethod
    accepted: bool
    residual_sup: float
    tol: float
    grid_n: int = Field(ge=1)
    t_hat: List[Tuple[float, float, int, int]]
    reduced_coeffs: List[Tuple[float, float]]
    solution: SolutionRecord = Field(default_factory=SolutionRecord)
    direct_fallback: bool = False
    diagnostics: List[str] = Field(default_factory=list)

    @classmethod
    def from_report(cls, report: SolveReport, csv_path: Optional[str] = None) -> "SolveReportRecord":
        t_hat = []
        for c, r in report.t_hat.terms:
            z = complex(c)
            r = Fraction(r)
            t_hat.append((z.real, z.imag, r.numerator, r.denominator))
        # full T T_hat polynomial: R' followed by the stripped I^strip factor
        coeffs = list(report.reduced_equation.coeffs) + [0] * report.strip
        reduced = [(complex(c).real, complex(c).imag) for c in coeffs]
        return cls(
            method=report.method,
            accepted=report.accepted,
            residual_sup=report.residual_sup,
            tol=report.tol,
            grid_n=report.grid_n,
            t_hat=t_hat,
            reduced_coeffs=reduced,
            solution=SolutionRecord(closed_form=report.closed_form, csv_path=csv_path),
            direct_fallback=report.direct_fallback,
            diagnostics=list(report.diagnostics),
        )

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)
