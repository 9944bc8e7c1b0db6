"""
Small dense linear solves, exact over Gaussian rationals or in floating point
"""
from typing import List, Sequence, Tuple

import numpy as np
from loguru import logger

from core.exceptions import IllConditionedError
from .coeffs import Coeff, unify


def condition_number(matrix: Sequence[Sequence]) -> float:
    a = np.array([[complex(v) for v in row] for row in matrix], dtype=complex)
    if a.size == 0:
        return 1.0
    return float(np.linalg.cond(a))


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence,
                 condition_limit: float = 1e12) -> Tuple[List[Coeff], bool]:
    """Solve matrix @ x = rhs.

    Exact elimination when every entry is exact, numpy otherwise. Both modes refuse
    systems whose 2-norm condition estimate exceeds condition_limit.

    Returns:
        (solution, exact flag)
    """
    n = len(rhs)
    if n == 0:
        return [], True
    cond = condition_number(matrix)
    logger.debug(f"Linear system of size {n}, condition {cond:.3e}")
    if not np.isfinite(cond) or cond > condition_limit:
        raise IllConditionedError(f"condition estimate {cond:.3e} exceeds {condition_limit:.1e}")

    flat, exact = unify([v for row in matrix for v in row] + list(rhs))
    if not exact:
        a = np.array(flat[:n * n], dtype=complex).reshape(n, n)
        b = np.array(flat[n * n:], dtype=complex)
        return [complex(v) for v in np.linalg.solve(a, b)], False

    rows = [flat[i * n:(i + 1) * n] + [flat[n * n + i]] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            raise IllConditionedError("singular system")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [v - factor * w for v, w in zip(rows[r], rows[col])]
    return [row[n] for row in rows], True
