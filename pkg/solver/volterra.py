"""
Second-kind Volterra stepping for integer-order integral equations on a grid
"""
from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np
from loguru import logger
from scipy import special as sp

from core.exceptions import FirstKindUnsupportedError, SingularStepError
from operators.fractional import product_weights
from operators.grid import GridFunction
from .models import IntOrderEquation

SINGULAR_TOL = 1e-14


def combined_kernel(terms: Sequence[Tuple[complex, Fraction]], h: float, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Sum of product-trapezoid weights of c * I^r over the given terms (r > 0).

    Returns:
        (start weights A[k] on x_0, Toeplitz weights B[m] on x_{k-m})
    """
    start = np.zeros(n + 1, dtype=complex)
    toeplitz = np.zeros(n + 1, dtype=complex)
    for c, r in terms:
        w0, b = product_weights(Fraction(r), n)
        factor = complex(c) * h ** float(r) * sp.rgamma(float(r) + 2)
        start += factor * w0
        toeplitz += factor * b
    return start, toeplitz


def step_second_kind(identity: complex, start: np.ndarray, toeplitz: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Forward substitution for identity * x_k + A[k] x_0 + sum_{i=1..k} B[k-i] x_i = rhs_k"""
    n = len(rhs) - 1
    x = np.zeros(n + 1, dtype=complex)
    x[0] = rhs[0] / identity
    diag = identity + toeplitz[0]
    scale = max(abs(identity), abs(toeplitz[0]), 1e-300)
    if abs(diag) <= SINGULAR_TOL * scale:
        raise SingularStepError(f"diagonal coefficient {diag:.3e} vanishes")
    # B reversed so that the history sum is a single dot product
    reversed_b = toeplitz[::-1]
    for k in range(1, n + 1):
        history = np.dot(reversed_b[n - k + 1:n], x[1:k]) if k > 1 else 0.0
        x[k] = (rhs[k] - start[k] * x[0] - history) / diag
    return x


def solve_volterra(eq: IntOrderEquation) -> GridFunction:
    """Discrete solution of c_0 I^n x + ... + c_n x = f on f's grid.

    The product-trapezoid discretization is satisfied exactly at every node.
    """
    if not isinstance(eq.rhs, GridFunction):
        raise TypeError("Volterra stepping needs a sampled right-hand side")
    f = eq.rhs
    n_order = eq.order
    c_n = complex(eq.identity_coeff)
    if c_n == 0:
        raise FirstKindUnsupportedError("no identity term: first-kind equations are not stepped numerically")

    terms = [(eq.coeffs[n_order - j], Fraction(j)) for j in range(1, n_order + 1) if eq.coeffs[n_order - j] != 0]
    start, toeplitz = combined_kernel(terms, f.h, f.n)
    x = step_second_kind(c_n, start, toeplitz, f.values)
    logger.debug(f"Volterra stepping done: order {n_order}, n={f.n}")
    return f.with_values(x)
