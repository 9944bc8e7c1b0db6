"""
End-to-end solving of fractional integral equations
"""
from .models import Equation, Reduction, SolveReport
from .reduction import reduce
from .executor import solve_checking, solve_computing, residual, convergence_study

__all__ = ['Equation', 'Reduction', 'SolveReport', 'reduce', 'solve_checking', 'solve_computing',
           'residual', 'convergence_study']
