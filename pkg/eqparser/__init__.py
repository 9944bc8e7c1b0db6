"""
Equation language: parser, printer and binding to solver inputs
"""
from .parser import parse, parse_genpoly
from .printer import to_text
from .binding import bind, parse_equation, parse_exppoly

__all__ = ['parse', 'parse_genpoly', 'to_text', 'bind', 'parse_equation', 'parse_exppoly']
