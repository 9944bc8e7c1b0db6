"""
Generalized polynomials with rational exponents and their conjugates
"""
from .coeffs import GaussianRational, Coeff
from .intpoly import IntPoly
from .genpoly import GenPoly, make_genpoly, substitute_down, substitute_up
from .rootfind import RootSet, OrbitSet, find_roots, cluster_orbits
from .conjugate import ConjugateResult, conjugate, conjugate_naive, conjugate_minimal

__all__ = [
    'GaussianRational', 'Coeff', 'IntPoly', 'GenPoly', 'make_genpoly', 'substitute_down', 'substitute_up',
    'RootSet', 'OrbitSet', 'find_roots', 'cluster_orbits',
    'ConjugateResult', 'conjugate', 'conjugate_naive', 'conjugate_minimal',
]
