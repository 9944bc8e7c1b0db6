"""
Shared fixtures: the quartic-root example equation and solver settings
"""
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core.config.models import SolverConfig  # noqa: E402
from operators.fractional import FracOperator  # noqa: E402
from solver.exppoly import ExpPoly  # noqa: E402

EXAMPLE_TEXT = "I^{1} x + 5 I^{3/4} x + 2 I^{1/2} x - 20 I^{1/4} x - 24 x = exp(t)"

# T_hat of the example, orders 2, 7/4, ..., 0
EXAMPLE_T_HAT = (1, -5, 23, -85, 190, -440, 672, -720, 864)
EXAMPLE_REDUCED = (1, -113, 2848, -20736)


@pytest.fixture
def example_text():
    return EXAMPLE_TEXT


@pytest.fixture
def example_operator():
    return FracOperator(0, (
        (1, Fraction(1)),
        (5, Fraction(3, 4)),
        (2, Fraction(1, 2)),
        (-20, Fraction(1, 4)),
        (-24, Fraction(0)),
    ))


@pytest.fixture
def example_rhs():
    return ExpPoly.exp(1)


@pytest.fixture
def solver_config():
    return SolverConfig(grid_n=512)
