"""
Riemann-Liouville operators on grids and the special functions behind their closed forms
"""
from .grid import GridFunction, grid_derivative
from .fractional import FracOperator, apply_operator, frac_integral, gl_frac_derivative, rl_frac_derivative
from .special import gamma, mittag_leffler, prabhakar

__all__ = [
    'GridFunction', 'grid_derivative', 'FracOperator', 'apply_operator', 'frac_integral',
    'gl_frac_derivative', 'rl_frac_derivative', 'gamma', 'mittag_leffler', 'prabhakar',
]
