"""
Solve execution engine: checking and computing methods with residual certification
"""
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from core.config.manager import get_config
from core.config.models import SolveMethod, SolverConfig
from core.exceptions import (
    DomainError, IllConditionedError, NoSolutionError, NonConvergenceError,
    ResidualAboveToleranceError, SingularStepError, VerificationError,
)
from algebra.coeffs import is_exact, magnitude
from operators.fractional import FracOperator, apply_operator, start_exponents_for
from operators.grid import GridFunction, grid_derivative
from solver.closed_form import FracExpSum, apply_operator_exppoly
from solver.exppoly import ExpPoly
from solver.models import IntOrderEquation
from solver.ode import solve_closed
from solver.volterra import solve_volterra
from eqparser.printer import format_exppoly, format_operator
from .models import ConvergenceRow, Equation, Reduction, SolveReport
from .oracle import solve_direct
from .reduction import reduce

# relative size below which a residual counts as exhausted floating point
SATURATION = 1e-12

# failures of the reduced route that direct stepping can recover from
NUMERICAL_FAILURES = (
    DomainError, IllConditionedError, NonConvergenceError, VerificationError,
    SingularStepError, NoSolutionError,
)


class EquationSolver:
    """Common machinery of both solution methods"""

    method: SolveMethod = SolveMethod.COMPUTING

    def __init__(self, config: Optional[SolverConfig] = None):
        self.config = config or get_config().solver

    def solve(self, eq: Equation) -> SolveReport:
        """
        Solve and certify.

        Args:
            eq: the fractional integral equation

        Returns:
            Accepted SolveReport

        Raises:
            NoSolutionError: right-hand side outside the range of the stripped integral
            ResidualAboveToleranceError: candidate failed the residual check (carries the report)
        """
        report = self.run(eq)
        if not report.accepted:
            raise ResidualAboveToleranceError(
                f"residual {report.residual_sup:.3e} exceeds tolerance {report.tol:.3e}", report)
        return report

    def run(self, eq: Equation) -> SolveReport:
        """Solve and measure the residual without enforcing the tolerance.

        Second-kind equations whose reduced route fails numerically or is rejected by
        the residual check are stepped directly instead; the report says so.
        """
        red = reduce(eq, self.config.minimal, self.config)
        n = eq.rhs.n if isinstance(eq.rhs, GridFunction) else self.config.grid_n
        diagnostics = [
            f"mode: {'exact' if red.exact else 'floating'}",
            f"q = {red.q}, stripped I^{red.strip}",
        ]
        if not red.exact:
            diagnostics.append(f"integrality defect {red.integrality_defect:.3e}")
        if isinstance(eq.rhs, GridFunction) and n != self.config.grid_n:
            diagnostics.append(f"grid size taken from the sampled right-hand side: n={n}")

        logger.info(f"Solving with the {self.method.value} method on n={n}")
        second_kind = eq.T.identity_coeff != 0
        try:
            report = self._solve_reduced(eq, red, n, diagnostics)
        except NUMERICAL_FAILURES as e:
            if not second_kind:
                raise
            reduced_eq = IntOrderEquation(red.equation_coeffs, eq.T.base, eq.rhs)
            report = self._direct_report(eq, red, reduced_eq, n, diagnostics, f"reduced route failed: {e}")

        start = self.start_exponents(eq.T, red.t_hat)
        self._certify(eq, report, start)
        if not report.accepted and second_kind and not report.direct_fallback:
            reason = (f"reduced route rejected: residual {report.residual_sup:.3e} "
                      f"above tolerance {report.tol:.3e}{self._amplification(red, eq)}")
            report = self._direct_report(eq, red, report.reduced_equation, n, diagnostics, reason)
            self._certify(eq, report, start)
        logger.info(f"Residual {report.residual_sup:.3e} (tolerance {report.tol:.3e}): "
                    f"{'accepted' if report.accepted else 'rejected'}")
        return report

    def _certify(self, eq: Equation, report: SolveReport, start: Sequence) -> None:
        report.residual_sup, report.tol, note = certify(eq, report.solution_grid, self.config, start)
        if note:
            report.diagnostics.append(note)
        report.accepted = bool(np.isfinite(report.residual_sup) and report.residual_sup <= report.tol)

    def _direct_report(self, eq: Equation, red: Reduction, reduced_eq: IntOrderEquation, n: int,
                       diagnostics: List[str], reason: str) -> SolveReport:
        logger.warning(f"{reason}; stepping the original equation directly")
        diagnostics.append(f"{reason}; solution from direct stepping of the original equation")
        report = self._report(red, reduced_eq, solve_direct(eq, n), n, diagnostics)
        report.direct_fallback = True
        return report

    @staticmethod
    def _amplification(red: Reduction, eq: Equation) -> str:
        """Growth factor of the fastest homogeneous mode of the reduced equation, if it is large"""
        coeffs = [complex(c) for c in reversed(red.equation_coeffs)]
        if len(coeffs) < 2:
            return ""
        roots = np.roots(coeffs)
        if not roots.size:
            return ""
        rate = float(np.max(roots.real)) * (float(eq.b) - float(eq.a))
        if rate < 20:
            return ""
        return f"; the reduced equation carries a mode growing by exp({rate:.1f})"

    def start_exponents(self, T: FracOperator, t_hat: FracOperator) -> Tuple:
        if not self.config.start_correction:
            return ()
        a, b = T.common_denominator(), t_hat.common_denominator()
        return start_exponents_for(a * b // math.gcd(a, b))

    def _solve_reduced(self, eq: Equation, red: Reduction, n: int, diagnostics: List[str]) -> SolveReport:
        raise NotImplementedError

    def _report(self, red: Reduction, reduced_eq: IntOrderEquation, x: GridFunction, n: int,
                diagnostics: List[str], **closed) -> SolveReport:
        return SolveReport(
            method=self.method,
            t_hat=red.t_hat,
            reduced_equation=reduced_eq,
            strip=red.strip,
            residual_sup=float("nan"),
            tol=self.config.tol,
            grid_n=n,
            accepted=False,
            solution_grid=x,
            diagnostics=diagnostics,
            **closed,
        )

    # Range of I^strip

    def _strip_exppoly(self, w: ExpPoly, s: int, base) -> ExpPoly:
        """D^s w after checking w^(j)(base) = 0 for j < s"""
        scale = max(1.0, w.scale())
        deriv = w
        for j in range(s):
            value = deriv.value(base)
            exact_zero = is_exact(value) and value == 0
            if not exact_zero and magnitude(value) > self.config.range_tol * scale:
                raise NoSolutionError(
                    f"right-hand side is not in the range of I^{s}: derivative {j} at the base point is {complex(value):.6g}")
            deriv = deriv.derivative()
        return deriv

    def _strip_sum(self, h: FracExpSum, s: int, grid: GridFunction) -> GridFunction:
        """Samples of D^s h after checking the lower derivatives vanish at the base point"""
        with np.errstate(all='ignore'):
            scale = max(1.0, float(np.max(np.abs(h.evaluate(grid.t[1:], self.config.ml_bound)))))
        for j in range(s):
            value = complex(h.shift_order(-j).evaluate(grid.a, self.config.ml_bound))
            if not np.isfinite(value) or abs(value) > self.config.range_tol * scale:
                raise NoSolutionError(
                    f"right-hand side is not in the range of I^{s}: derivative {j} at the base point is {value:.6g}")
        values = h.shift_order(-s).evaluate(grid.t, self.config.ml_bound)
        if not np.isfinite(values[0]):
            raise NoSolutionError("the reduced right-hand side is unbounded at the base point")
        return grid.with_values(values)

    def _strip_grid(self, h: GridFunction, s: int, diagnostics: List[str]) -> GridFunction:
        """Finite-difference D^s h after checking the lower derivatives vanish at t_0"""
        if s == 0:
            return h
        deriv = h
        for j in range(s):
            scale = max(1.0, deriv.sup_norm())
            limit = self.config.range_tol if j == 0 else max(self.config.range_tol, np.sqrt(h.h))
            if abs(deriv.values[0]) > limit * scale:
                raise NoSolutionError(
                    f"sampled right-hand side is not in the range of I^{s}: "
                    f"derivative {j} at the base point is {complex(deriv.values[0]):.6g}")
            deriv = grid_derivative(deriv, 1)
        diagnostics.append(f"right-hand side differentiated {s} times by finite differences")
        return deriv


class CheckingSolver(EquationSolver):
    """Solve (T_hat T) x = T_hat w, then keep the candidate only if T x = w"""

    method = SolveMethod.CHECKING

    def _solve_reduced(self, eq: Equation, red: Reduction, n: int, diagnostics: List[str]) -> SolveReport:
        grid = GridFunction.zeros(float(eq.a), float(eq.b), n)
        if isinstance(eq.rhs, ExpPoly):
            h = apply_operator_exppoly(red.t_hat, eq.rhs)
            g = self._strip_sum(h, red.strip, grid)
        else:
            start = self.start_exponents(eq.T, red.t_hat)
            h = apply_operator(red.t_hat, eq.rhs_on(n), start)
            g = self._strip_grid(h, red.strip, diagnostics)

        reduced_eq = IntOrderEquation(red.equation_coeffs, eq.T.base, g)
        x = solve_volterra(reduced_eq)
        return self._report(red, reduced_eq, x, n, diagnostics)


class ComputingSolver(EquationSolver):
    """Solve (T T_hat) y = w, then x = T_hat y"""

    method = SolveMethod.COMPUTING

    def _solve_reduced(self, eq: Equation, red: Reduction, n: int, diagnostics: List[str]) -> SolveReport:
        base = eq.T.base
        if isinstance(eq.rhs, ExpPoly):
            g = self._strip_exppoly(eq.rhs, red.strip, base)
            reduced_eq = IntOrderEquation(red.equation_coeffs, base, g)
            try:
                y = solve_closed(reduced_eq, self.config.root_tol, self.config.condition_limit)
            except (IllConditionedError, VerificationError, NonConvergenceError, DomainError) as e:
                logger.warning(f"Closed-form solve failed ({e}); stepping the reduced equation instead")
                diagnostics.append(f"closed form unavailable: {e}")
            else:
                return self._closed_report(eq, red, reduced_eq, y, n, diagnostics)
            g_grid = GridFunction.from_function(float(eq.a), float(eq.b), n, g.evaluate)
            reduced_eq = reduced_eq.with_rhs(g_grid)
        else:
            g_grid = self._strip_grid(eq.rhs_on(n), red.strip, diagnostics)
            reduced_eq = IntOrderEquation(red.equation_coeffs, base, g_grid)

        y = solve_volterra(reduced_eq)
        start = self.start_exponents(eq.T, red.t_hat)
        x = y if red.t_hat.is_identity else apply_operator(red.t_hat, y, start)
        return self._report(red, reduced_eq, x, n, diagnostics)

    def _closed_report(self, eq: Equation, red: Reduction, reduced_eq: IntOrderEquation, y: ExpPoly,
                       n: int, diagnostics: List[str]) -> SolveReport:
        grid = GridFunction.zeros(float(eq.a), float(eq.b), n)
        if red.t_hat.is_identity:
            x = grid.with_values(y.evaluate(grid.t))
            text = f"x(t) = {format_exppoly(y)}"
            return self._report(red, reduced_eq, x, n, diagnostics, y_closed=y, x_exppoly=y, closed_form=text)

        x_sum = apply_operator_exppoly(red.t_hat, y)
        values = x_sum.evaluate(grid.t, self.config.ml_bound)
        if not np.all(np.isfinite(values)):
            raise NoSolutionError("the candidate solution is unbounded at the base point")
        text = f"x(t) = {format_operator(red.t_hat, 'y')}, y(t) = {format_exppoly(y)}"
        return self._report(red, reduced_eq, grid.with_values(values), n, diagnostics,
                            y_closed=y, x_closed=x_sum, closed_form=text)


def solver_for(method: SolveMethod, config: Optional[SolverConfig] = None) -> EquationSolver:
    return CheckingSolver(config) if SolveMethod(method) == SolveMethod.CHECKING else ComputingSolver(config)


def solve_checking(eq: Equation, config: Optional[SolverConfig] = None) -> SolveReport:
    return CheckingSolver(config).solve(eq)


def solve_computing(eq: Equation, config: Optional[SolverConfig] = None) -> SolveReport:
    return ComputingSolver(config).solve(eq)


def residual(eq: Equation, x: GridFunction, start_exponents: Sequence = ()) -> float:
    """sup over t_1..t_n of |T x - w|; t_0 is excluded where weakly singular terms live"""
    w = eq.rhs_on(x.n)
    if isinstance(eq.rhs, GridFunction) and not w.same_grid(x):
        raise DomainError("solution and right-hand side live on different grids")
    lhs = apply_operator(eq.T, x, start_exponents)
    return (lhs - w).sup_norm(skip_start=True)


def quadrature_error(T: FracOperator, x: GridFunction, start_exponents: Sequence = ()) -> float:
    """Richardson estimate of the error of applying T to x on its grid"""
    if x.n % 2 or x.n < 32:
        return 0.0
    fine = apply_operator(T, x, start_exponents).values[::2]
    coarse = apply_operator(T, x.coarsen(), start_exponents).values
    return float(np.max(np.abs(fine[1:] - coarse[1:]))) / 3.0


def convergence_study(eq: Equation, n_list: Sequence[int], config: Optional[SolverConfig] = None,
                      method: Optional[SolveMethod] = None) -> List[ConvergenceRow]:
    """Residuals over a sequence of grids with the observed order between neighbours.

    The order is omitted for the first grid and whenever the residual has reached
    floating-point level.
    """
    config = config or get_config().solver
    method = method or config.method
    if isinstance(eq.rhs, ExpPoly):
        floor = SATURATION * max(1.0, eq.rhs.scale())
    else:
        floor = SATURATION * max(1.0, eq.rhs.sup_norm())

    rows: List[ConvergenceRow] = []
    previous = None
    for n in n_list:
        report = solver_for(method, config.model_copy(update={"grid_n": int(n)})).run(eq)
        order = None
        if previous is not None and report.residual_sup > floor and previous[1] > floor:
            order = float(np.log(previous[1] / report.residual_sup) / np.log(n / previous[0]))
        rows.append(ConvergenceRow(int(n), report.residual_sup, order))
        logger.debug(f"n={n}: residual {report.residual_sup:.3e}, order {order}")
        previous = (n, report.residual_sup)
    return rows


def certified_tolerance(config: SolverConfig, estimate: float, rhs_norm: float) -> Tuple[float, Optional[str]]:
    """
    Acceptance threshold for a residual.

    The configured tolerance is widened to ten times the quadrature error estimate,
    but never beyond max_widening * tol * max(1, |w|).

    Returns:
        (tolerance, diagnostic or None)
    """
    ceiling = config.tol * config.max_widening * max(1.0, rhs_norm)
    widened = 10 * estimate if np.isfinite(estimate) else np.inf
    if widened <= config.tol:
        return config.tol, None
    if widened > ceiling:
        return ceiling, (f"quadrature error estimate {estimate:.3e} is beyond the widening limit; "
                         f"tolerance capped at {ceiling:.3e}")
    return widened, f"tolerance widened to {widened:.3e} by the quadrature error estimate"


def certify(eq: Equation, x: GridFunction, config: SolverConfig,
            start_exponents: Sequence = ()) -> Tuple[float, float, Optional[str]]:
    """Residual of x with the tolerance it is judged against: (residual, tolerance, note)"""
    w = eq.rhs_on(x.n)
    rhs_norm = w.sup_norm()
    estimate = quadrature_error(eq.T, x, start_exponents)
    tol, note = certified_tolerance(config, estimate, rhs_norm if np.isfinite(rhs_norm) else 0.0)
    return residual(eq, x, start_exponents), tol, note
