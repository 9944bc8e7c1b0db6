"""
Reduction of a fractional operator to integer order through its conjugate
"""
from typing import Union

from loguru import logger

from core.config.models import SolverConfig
from core.exceptions import ZeroPolynomialError
from algebra.conjugate import ConjugateResult, conjugate, expand_to_operator_coeffs
from algebra.genpoly import GenPoly
from operators.fractional import FracOperator
from .models import Equation, Reduction


def operator_to_genpoly(T: FracOperator) -> GenPoly:
    """c I^r  <->  c X^r"""
    return GenPoly(tuple(T.terms))


def genpoly_to_operator(p: GenPoly, base) -> FracOperator:
    return FracOperator(base, tuple(p.terms))


def conjugate_of(T: FracOperator, minimal: bool = True, cfg: SolverConfig = None) -> ConjugateResult:
    cfg = cfg or SolverConfig()
    if T.is_zero:
        raise ZeroPolynomialError("cannot reduce the zero operator")
    return conjugate(operator_to_genpoly(T), minimal, cfg.root_tol, cfg.zero_tol, cfg.defect_tol)


def reduce(eq: Union[Equation, FracOperator], minimal: bool = True, cfg: SolverConfig = None) -> Reduction:
    """Build T_hat with T T_hat = T_hat T of integer orders only.

    The product is split as I^strip R' where R' has a nonzero identity term; strip is
    the lowest order of T T_hat (the ceiling of the lowest order of T for the minimal
    conjugate). A right-hand side must lie in the range of I^strip for the equation to
    be solvable.

    Args:
        eq: equation or bare operator
        minimal: orbit-minimal conjugate when true, per-root conjugate otherwise
        cfg: tolerances

    Returns:
        Reduction
    """
    T = eq.T if isinstance(eq, Equation) else eq
    res = conjugate_of(T, minimal, cfg)
    t_hat = genpoly_to_operator(res.p_hat, T.base)
    reduced = FracOperator(T.base, tuple(expand_to_operator_coeffs(res, "reduced")))
    strip = res.reduced.trailing_zeros()
    core = res.reduced.shift_down(strip)
    logger.info(
        f"Reduced with q={res.q}: conjugate of degree {res.p_hat.leading_exponent}, "
        f"integer operator of order {res.reduced.degree}, strip I^{strip}"
        f"{'' if res.exact else f', defect {res.integrality_defect:.2e}'}")
    return Reduction(
        t_hat=t_hat,
        reduced=reduced,
        strip=strip,
        equation_coeffs=tuple(core.coeffs),
        q=res.q,
        integrality_defect=res.integrality_defect,
        exact=res.exact,
        minimal=minimal,
    )
