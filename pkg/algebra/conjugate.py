"""
Conjugate generalized polynomials: given p, build p_hat with p * p_hat ordinary
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np
from loguru import logger

from core.exceptions import AlgebraError, ZeroPolynomialError
from .coeffs import Coeff, ONE, ZERO, root_of_unity
from .genpoly import GenPoly, common_denominator, substitute_down, substitute_up
from .intpoly import IntPoly
from .rootfind import DEFAULT_TOL, find_roots, cluster_orbits, rational_roots


@dataclass(frozen=True)
class ConjugateResult:
    """Outcome of a conjugate construction.

    reduced is p * p_hat as a polynomial in X. integrality_defect is the largest
    coefficient magnitude that p * p_hat put on non-integer exponents before those
    terms were dropped; it is 0 in exact mode.
    """
    p: GenPoly
    p_hat: GenPoly
    reduced: IntPoly
    q: int
    integrality_defect: float
    exact: bool
    minimal: bool

    @property
    def degree(self) -> int:
        return self.reduced.degree

    @property
    def p_hat_degree(self) -> Fraction:
        return self.p_hat.leading_exponent


# Exact constructions (no roots needed)

def _power_sums(monic: List[Coeff], count: int) -> List[Coeff]:
    """Newton identities: power sums p_1..p_count of the roots of a monic polynomial"""
    n = len(monic) - 1
    e = [ONE] + [(-1) ** i * monic[i] for i in range(1, n + 1)]
    sums = [ZERO]
    for k in range(1, count + 1):
        acc = ZERO
        for i in range(1, min(k - 1, n) + 1):
            acc = acc + (-1) ** (i - 1) * e[i] * sums[k - i]
        if k <= n:
            acc = acc + (-1) ** (k - 1) * k * e[k]
        sums.append(acc)
    return sums


def _q_power_polynomial(core: IntPoly, q: int) -> IntPoly:
    """lead * prod (X - r**q) over the roots r of core, computed exactly from its coefficients"""
    n = core.degree
    lead = core.leading
    if n == 0:
        return IntPoly((lead,))
    monic = [c / lead for c in core.coeffs]
    p = _power_sums(monic, q * n)
    s = [None] + [p[q * m] for m in range(1, n + 1)]
    elem = [ONE]
    for m in range(1, n + 1):
        acc = ZERO
        for i in range(1, m + 1):
            acc = acc + (-1) ** (i - 1) * elem[m - i] * s[i]
        elem.append(acc / m)
    return IntPoly(tuple(lead * (-1) ** m * elem[m] for m in range(n + 1)))


def _exact_quotient(numerator: IntPoly, denominator: IntPoly) -> IntPoly:
    quotient, remainder = numerator.divmod(denominator)
    if not remainder.is_zero:
        raise AlgebraError("conjugate construction left a nonzero remainder")
    return quotient


def _naive_core_exact(core: IntPoly, q: int) -> Tuple[IntPoly, IntPoly]:
    reduced = _q_power_polynomial(core, q)
    return _exact_quotient(reduced.compose_power(q), core), reduced


def _minimal_core_exact(core: IntPoly, q: int, orbits) -> Tuple[IntPoly, IntPoly]:
    reduced = IntPoly((core.leading,))
    for orbit in orbits.orbits:
        reduced = reduced * IntPoly((ONE, -orbit.q_power)) ** orbit.max_multiplicity
    return _exact_quotient(reduced.compose_power(q), core), reduced


# Floating constructions

def _naive_core_float(core: IntPoly, q: int, tol: float) -> IntPoly:
    values = []
    for root in find_roots(core.as_float(), tol).roots:
        r = complex(root.value)
        for j in range(1, q):
            values.extend([r * root_of_unity(q, j)] * root.multiplicity)
    return IntPoly(tuple(np.poly(np.array(values, dtype=complex)))) if values else IntPoly((1 + 0j,))


def _minimal_core_float(orbits) -> IntPoly:
    values = []
    for orbit in orbits.orbits:
        m = orbit.max_multiplicity
        for j, k in enumerate(orbit.members):
            values.extend([orbit.member_value(j)] * (m - k))
    return IntPoly(tuple(np.poly(np.array(values, dtype=complex)))) if values else IntPoly((1 + 0j,))


def _split_zero_roots(p: GenPoly, q: int) -> Tuple[IntPoly, IntPoly, int]:
    poly = substitute_down(p, q)
    k = poly.trailing_zeros()
    return poly, poly.shift_down(k), k


def _assemble(p: GenPoly, q: int, poly: IntPoly, p_hat_y: IntPoly, reduced_exact: IntPoly,
              exact: bool, minimal: bool, zero_tol: float, defect_tol: float) -> ConjugateResult:
    if exact:
        if poly * p_hat_y != reduced_exact.compose_power(q):
            raise AlgebraError("exact conjugate product is not ordinary")
        return ConjugateResult(p, substitute_up(p_hat_y, q), reduced_exact, q, 0.0, True, minimal)

    real_input = all(complex(c).imag == 0 for c in p.coefficients)
    product = (poly.as_float() * p_hat_y).ascending()
    defect = max((abs(c) for i, c in enumerate(product) if i % q), default=0.0)
    reduced = IntPoly.from_ascending([c for i, c in enumerate(product) if i % q == 0])
    coeffs_hat = list(p_hat_y.coeffs)
    if real_input:
        coeffs_hat = [complex(c.real, 0.0) for c in coeffs_hat]
        reduced = IntPoly(tuple(complex(c.real, 0.0) for c in reduced.coeffs))
    reduced = reduced.chop(zero_tol)
    p_hat = substitute_up(IntPoly(tuple(coeffs_hat)).chop(zero_tol), q)

    scale = max(1.0, p.scale())
    if defect > defect_tol * scale:
        logger.warning(f"Integrality defect {defect:.3e} above {defect_tol:.1e} relative to |p|={scale:.3e}")
    else:
        logger.debug(f"Integrality defect {defect:.3e}")
    return ConjugateResult(p, p_hat, reduced, q, float(defect), False, minimal)


def _zero_factors(k: int, q: int, minimal: bool) -> Tuple[int, int]:
    """Powers of Y in p_hat and of X in the reduced polynomial coming from the root 0"""
    if minimal:
        power_x = math.ceil(k / q)
        return q * power_x - k, power_x
    return k * (q - 1), k


def conjugate_naive(p: GenPoly, tol: float = DEFAULT_TOL, zero_tol: float = 1e-12,
                    defect_tol: float = 1e-8) -> ConjugateResult:
    """p_hat as the product over every root r of p(Y**q) of (Y - r xi^j), j = 1..q-1.

    In exact mode the product is formed without roots: the polynomial with roots r**q
    comes from Newton's identities and p_hat(Y) = reduced(Y**q) / p(Y**q).

    Args:
        p: nonzero generalized polynomial
        tol: root clustering tolerance (floating mode)

    Returns:
        ConjugateResult with reduced of degree q * (leading exponent of p)
    """
    if p.is_zero:
        raise ZeroPolynomialError("conjugate of the zero polynomial")
    q = common_denominator(p)
    poly, core, k = _split_zero_roots(p, q)
    y_power, x_power = _zero_factors(k, q, minimal=False)

    if p.exact:
        p_hat_core, reduced_core = _naive_core_exact(core, q)
        p_hat_y = p_hat_core * IntPoly.monomial(y_power)
        reduced = reduced_core * IntPoly.monomial(x_power)
        return _assemble(p, q, poly, p_hat_y, reduced, True, False, zero_tol, defect_tol)

    p_hat_y = _naive_core_float(core, q, tol) * IntPoly.monomial(y_power, 1 + 0j)
    return _assemble(p, q, poly, p_hat_y, IntPoly(), False, False, zero_tol, defect_tol)


def conjugate_minimal(p: GenPoly, tol: float = DEFAULT_TOL, zero_tol: float = 1e-12,
                      defect_tol: float = 1e-8) -> ConjugateResult:
    """p_hat from xi-orbits: factor (Y - y0 xi^j) with multiplicity m - k_j per orbit.

    Exact when p is exact and p(Y**q) splits over the rationals. When the roots are
    not rational but no two of them share an orbit, the minimal and naive products
    coincide and the exact naive construction is returned. Otherwise the result is
    computed in floating point.
    """
    if p.is_zero:
        raise ZeroPolynomialError("conjugate of the zero polynomial")
    q = common_denominator(p)
    poly, core, k = _split_zero_roots(p, q)
    y_power, x_power = _zero_factors(k, q, minimal=True)

    if p.exact:
        roots = rational_roots(core) if core.degree >= 1 else None
        if roots is not None or core.degree == 0:
            if core.degree == 0:
                p_hat_core, reduced_core = IntPoly((ONE,)), IntPoly((core.leading,))
            else:
                p_hat_core, reduced_core = _minimal_core_exact(core, q, cluster_orbits(roots, q, tol))
            p_hat_y = p_hat_core * IntPoly.monomial(y_power)
            reduced = reduced_core * IntPoly.monomial(x_power)
            return _assemble(p, q, poly, p_hat_y, reduced, True, True, zero_tol, defect_tol)

        orbits = cluster_orbits(find_roots(core.as_float(), tol), q, tol)
        if not orbits.has_merged:
            p_hat_core, reduced_core = _naive_core_exact(core, q)
            p_hat_y = p_hat_core * IntPoly.monomial(y_power)
            reduced = reduced_core * IntPoly.monomial(x_power)
            return _assemble(p, q, poly, p_hat_y, reduced, True, True, zero_tol, defect_tol)
        logger.warning("Roots are not rational and share orbits; minimal conjugate computed in floating point")
    else:
        orbits = cluster_orbits(find_roots(core, tol), q, tol) if core.degree >= 1 else None

    p_hat_core = _minimal_core_float(orbits) if orbits is not None else IntPoly((1 + 0j,))
    p_hat_y = p_hat_core * IntPoly.monomial(y_power, 1 + 0j)
    return _assemble(p, q, poly, p_hat_y, IntPoly(), False, True, zero_tol, defect_tol)


def conjugate(p: GenPoly, minimal: bool = True, tol: float = DEFAULT_TOL, zero_tol: float = 1e-12,
              defect_tol: float = 1e-8) -> ConjugateResult:
    if minimal:
        return conjugate_minimal(p, tol, zero_tol, defect_tol)
    return conjugate_naive(p, tol, zero_tol, defect_tol)


def expand_to_operator_coeffs(res: ConjugateResult, which: str = "p_hat") -> List[Tuple[Coeff, Fraction]]:
    """Expanded (coefficient, order) list, descending, for p_hat or for the reduced polynomial"""
    if which == "p_hat":
        return list(res.p_hat.terms)
    if which == "reduced":
        d = res.reduced.degree
        return [(c, Fraction(d - i)) for i, c in enumerate(res.reduced.coeffs) if c != 0]
    raise ValueError(f"unknown expansion target {which!r}")
