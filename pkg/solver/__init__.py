"""
Integer-order integral equations: closed-form and stepping solvers
"""
from .exppoly import ExpPoly
from .models import IntOrderEquation
from .ode import initial_conditions, solve_closed, solve_ode_closed
from .volterra import solve_volterra

__all__ = ['ExpPoly', 'IntOrderEquation', 'initial_conditions', 'solve_closed', 'solve_ode_closed', 'solve_volterra']
