"""
Polynomial roots with multiplicities and their grouping into root-of-unity orbits
"""
import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from core.exceptions import ZeroPolynomialError, NonConvergenceError
from .coeffs import Coeff, GaussianRational, ZERO, root_of_unity
from .intpoly import IntPoly, exact_rational_coeffs

DEFAULT_TOL = 1e-7
MAX_ITERATIONS = 500
# Above this the divisor enumeration of the rational-root test gets expensive.
RATIONAL_SEARCH_LIMIT = 10 ** 12


@dataclass(frozen=True)
class Root:
    """Root value with multiplicity"""
    value: Coeff
    multiplicity: int


@dataclass(frozen=True)
class RootSet:
    """All roots of a polynomial; exact when every value is a GaussianRational"""
    roots: Tuple[Root, ...]
    exact: bool

    @property
    def degree(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    def values(self) -> List[Coeff]:
        """Roots repeated by multiplicity"""
        out = []
        for r in self.roots:
            out.extend([r.value] * r.multiplicity)
        return out

    def multiplicity_of(self, value, tol: float = DEFAULT_TOL) -> int:
        z = complex(value)
        for r in self.roots:
            if abs(complex(r.value) - z) <= tol * max(1.0, abs(z)):
                return r.multiplicity
        return 0


@dataclass(frozen=True)
class Orbit:
    """Roots related by powers of xi = exp(2*pi*i/q).

    members[j] is the multiplicity of representative * xi**j (0 when absent).
    The zero orbit holds the root 0 alone, at phase 0.
    """
    representative: Coeff
    members: Tuple[int, ...]
    q: int
    q_power: Coeff = None

    @property
    def is_zero(self) -> bool:
        return self.representative == 0

    @property
    def max_multiplicity(self) -> int:
        return max(self.members)

    @property
    def root_count(self) -> int:
        return sum(1 for k in self.members if k > 0)

    def member_value(self, j: int) -> complex:
        return complex(self.representative) * root_of_unity(self.q, j)


@dataclass(frozen=True)
class OrbitSet:
    orbits: Tuple[Orbit, ...]
    q: int

    @property
    def has_merged(self) -> bool:
        """True when some nonzero orbit holds more than one distinct root"""
        return any(o.root_count > 1 for o in self.orbits if not o.is_zero)


# Exact rational path

def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _integer_coeffs(coeffs: Sequence[GaussianRational]) -> List[int]:
    lcm = 1
    for c in coeffs:
        den = c.re.denominator
        lcm = lcm * den // math.gcd(lcm, den)
    return [int(c.re * lcm) for c in coeffs]


def _synthetic_divide(coeffs: List[Fraction], r: Fraction) -> Tuple[List[Fraction], Fraction]:
    out = [coeffs[0]]
    for c in coeffs[1:]:
        out.append(c + out[-1] * r)
    return out[:-1], out[-1]


def rational_roots(poly: IntPoly) -> Optional[RootSet]:
    """Exact factorization over the rationals.

    Returns None when the polynomial has non-rational roots or the coefficients
    are too large for the candidate search.
    """
    if not exact_rational_coeffs(poly) or poly.degree < 1:
        return None
    coeffs = [Fraction(c) for c in _integer_coeffs(list(poly.coeffs))]
    found: Dict[Fraction, int] = {}

    k = 0
    while coeffs[-1] == 0:
        coeffs.pop()
        k += 1
    if k:
        found[Fraction(0)] = k

    while len(coeffs) > 1:
        lead, const = int(coeffs[0]), int(coeffs[-1])
        if abs(lead) > RATIONAL_SEARCH_LIMIT or abs(const) > RATIONAL_SEARCH_LIMIT:
            return None
        hit = None
        for num in _divisors(const):
            for den in _divisors(lead):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    quotient, rem = _synthetic_divide(coeffs, cand)
                    if rem == 0:
                        hit = (cand, quotient)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            return None
        root, quotient = hit
        found[root] = found.get(root, 0) + 1
        # keep integer coefficients for the next divisor search
        coeffs = [Fraction(c) for c in _integer_coeffs([GaussianRational(c) for c in quotient])]

    roots = tuple(Root(GaussianRational(v), m) for v, m in sorted(found.items()))
    return RootSet(roots, exact=True)


# Floating path

def _aberth(coeffs: np.ndarray, seeds: np.ndarray, max_iter: int) -> np.ndarray:
    """Simultaneous Aberth-Ehrlich iteration on the full polynomial (no deflation)"""
    z = seeds.astype(complex)
    n = len(z)
    dcoeffs = np.polyder(coeffs)
    # separate coincident seeds so the pairwise sums stay finite
    for i in range(n):
        for j in range(i):
            if z[i] == z[j]:
                z[i] += 1e-8 * max(1.0, abs(z[i])) * cmath.exp(1j * (i + 1))

    best, best_value = z.copy(), np.inf
    for _ in range(max_iter):
        pz = np.polyval(coeffs, z)
        value = np.max(np.abs(pz))
        if value < best_value:
            best, best_value = z.copy(), value
        dpz = np.polyval(dcoeffs, z)
        with np.errstate(divide='ignore', invalid='ignore'):
            ratio = np.where(dpz != 0, pz / dpz, 0)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0)
            s = inv.sum(axis=1)
            step = ratio / (1 - ratio * s)
        step = np.where(np.isfinite(step), step, 0)
        z = z - step
        if np.all(np.abs(step) <= 1e-15 * np.maximum(1.0, np.abs(z))):
            break

    pz = np.polyval(coeffs, z)
    if np.max(np.abs(pz)) <= best_value:
        return z
    return best


def _cluster(values: np.ndarray, tol: float) -> List[Tuple[complex, int]]:
    """Single-linkage clustering; cluster value is the member mean"""
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i):
            scale = max(1.0, abs(values[i]), abs(values[j]))
            if abs(values[i] - values[j]) <= tol * scale:
                parent[find(i)] = find(j)

    groups: Dict[int, List[complex]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(values[i])
    clusters = [(complex(np.mean(g)), len(g)) for g in groups.values()]
    clusters.sort(key=lambda c: (c[0].real, c[0].imag))
    return clusters


def _reconstruct(roots: List[Tuple[complex, int]]) -> np.ndarray:
    flat = []
    for v, m in roots:
        flat.extend([v] * m)
    return np.poly(np.array(flat, dtype=complex)) if flat else np.array([1.0 + 0j])


def find_roots(poly: IntPoly, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITERATIONS) -> RootSet:
    """All roots of an ordinary polynomial with multiplicities.

    Exact rational coefficients go through the rational-root test first; otherwise
    (or when that fails) roots are found by Aberth iteration seeded from the companion
    matrix eigenvalues and clustered within tol * max(1, |root|).

    Args:
        poly: nonzero polynomial
        tol: relative clustering tolerance
        max_iter: Aberth iteration budget

    Returns:
        RootSet whose multiplicities sum to the degree
    """
    if poly.is_zero:
        raise ZeroPolynomialError("roots of the zero polynomial")
    if poly.degree == 0:
        return RootSet((), exact=poly.exact)

    exact_set = rational_roots(poly)
    if exact_set is not None:
        logger.debug(f"Rational factorization found {len(exact_set.roots)} distinct roots")
        return exact_set

    k = poly.trailing_zeros()
    core = poly.shift_down(k)
    coeffs = core.to_numpy()
    monic = coeffs / coeffs[0]

    clusters: List[Tuple[complex, int]] = []
    if core.degree >= 1:
        if core.degree == 1:
            polished = np.array([-monic[1]])
        else:
            seeds = np.roots(monic)
            polished = _aberth(monic, seeds, max_iter)
        clusters = _cluster(polished, tol)

        rebuilt = _reconstruct(clusters)
        error = float(np.max(np.abs(rebuilt - monic)))
        scale = max(1.0, float(np.max(np.abs(monic))))
        if not np.isfinite(error) or error > tol * scale:
            raise NonConvergenceError(
                f"roots reproduce the polynomial only to {error:.3e} (limit {tol * scale:.3e})")
        logger.debug(f"Aberth roots: {len(clusters)} clusters, reconstruction error {error:.3e}")

    roots = []
    if k:
        roots.append(Root(0j, k))
    roots.extend(Root(v, m) for v, m in clusters)
    return RootSet(tuple(roots), exact=False)


def _phase(value: complex) -> float:
    angle = cmath.phase(value)
    return angle + 2 * math.pi if angle < 0 else angle


def cluster_orbits(roots: RootSet, q: int, tol: float = DEFAULT_TOL) -> OrbitSet:
    """Group roots whose ratio is within tol of a q-th root of unity.

    Exact root sets are grouped by equal q-th powers, which is the same relation
    without tolerance. The representative of an orbit is the member with the
    smallest argument in [0, 2*pi); zero roots form their own orbit.
    """
    if q < 1:
        raise ValueError(f"q must be positive, got {q}")

    zero_mult = sum(r.multiplicity for r in roots.roots if r.value == 0)
    nonzero = [r for r in roots.roots if r.value != 0]

    n = len(nonzero)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i):
            if roots.exact:
                related = nonzero[i].value ** q == nonzero[j].value ** q
            else:
                ratio = complex(nonzero[i].value) / complex(nonzero[j].value)
                step = round(q * _phase(ratio) / (2 * math.pi)) % q
                related = abs(ratio - cmath.exp(2j * math.pi * step / q)) <= tol
            if related:
                parent[find(i)] = find(j)

    groups: Dict[int, List[Root]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(nonzero[i])

    orbits = []
    if zero_mult:
        zero = ZERO if roots.exact else 0j
        orbits.append(Orbit(zero, (zero_mult,) + (0,) * (q - 1), q, zero))
    for members in groups.values():
        rep = min(members, key=lambda r: _phase(complex(r.value)))
        base = _phase(complex(rep.value))
        mults = [0] * q
        for r in members:
            j = round(q * (_phase(complex(r.value)) - base) / (2 * math.pi)) % q
            mults[j] += r.multiplicity
        q_power = rep.value ** q if roots.exact else complex(rep.value) ** q
        orbits.append(Orbit(rep.value, tuple(mults), q, q_power))

    orbits.sort(key=lambda o: (abs(complex(o.representative)), _phase(complex(o.representative)) if not o.is_zero else 0.0))
    logger.debug(f"{len(orbits)} orbits for q={q}")
    return OrbitSet(tuple(orbits), q)
