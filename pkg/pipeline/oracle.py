"""
Direct discretization of the original fractional equation, used as an independent reference
"""
from fractions import Fraction

import numpy as np
from loguru import logger
from scipy import special as sp

from core.exceptions import FirstKindUnsupportedError, SingularStepError
from operators.fractional import product_weights
from operators.grid import GridFunction
from .models import Equation


def solve_direct(eq: Equation, n: int) -> GridFunction:
    """Step c_0 x + sum_i c_i I^{r_i} x = w node by node, each integral with its own weights.

    No conjugate operator is involved, so agreement with the reduction pipeline is an
    end-to-end check of both.
    """
    T = eq.T
    identity = complex(T.identity_coeff)
    if identity == 0:
        raise FirstKindUnsupportedError("direct stepping needs an identity term")

    w = eq.rhs_on(n).values
    h = (float(eq.b) - float(eq.a)) / n
    kernels = []
    for c, r in T.terms:
        if r == 0:
            continue
        w0, b = product_weights(Fraction(r), n)
        kernels.append((complex(c) * h ** float(r) * sp.rgamma(float(r) + 2), w0, b))

    diag = identity + sum(factor * b[0] for factor, _, b in kernels)
    if abs(diag) <= 1e-14 * max(1.0, abs(identity)):
        raise SingularStepError("direct stepping hits a vanishing diagonal")

    x = np.zeros(n + 1, dtype=complex)
    x[0] = w[0] / identity
    for k in range(1, n + 1):
        acc = w[k]
        for factor, w0, b in kernels:
            # b[k-1], ..., b[1] against x_1, ..., x_{k-1}
            history = w0[k] * x[0] + np.dot(b[k - 1:0:-1], x[1:k])
            acc -= factor * history
        x[k] = acc / diag
    logger.debug(f"Direct stepping done: {len(kernels)} integral terms, n={n}")
    return GridFunction(float(eq.a), float(eq.b), n, x)
