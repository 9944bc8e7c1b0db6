"""
Special functions: Gamma, Mittag-Leffler and the three-parameter (Prabhakar) series
"""
import math
from typing import Union

import numpy as np
from scipy import special as sp

from core.exceptions import PoleError, DomainError

ArrayLike = Union[complex, float, np.ndarray]

DEFAULT_BOUND = 50.0
MAX_TERMS = 5000
# largest accepted relative rounding loss of a series value
CANCELLATION_LIMIT = 1e-5
EPS = np.finfo(float).eps


def gamma(x) -> float:
    """Gamma function; PoleError at nonpositive integers"""
    xf = float(x)
    if xf <= 0 and xf == math.floor(xf):
        raise PoleError(f"Gamma has a pole at {x}")
    return float(sp.gamma(xf))


def safe_radius(alpha: float, bound: float = DEFAULT_BOUND) -> float:
    """Largest |z| for which the power series is evaluated.

    The terms peak near exp(|z|**(1/alpha)), so the radius shrinks with alpha below 1
    to keep that peak (and the cancellation it causes) bounded by exp(bound).
    """
    return bound ** min(float(alpha), 1.0)


def _compensation(s: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Rounding error of s + t"""
    u = s + t
    return np.where(np.abs(s) >= np.abs(t), (s - u) + t, (t - u) + s)


def _series(alpha: float, beta: float, gamma_: float, z: np.ndarray) -> np.ndarray:
    """sum_k (gamma)_k / k! * z^k / Gamma(alpha k + beta), vectorized over z.

    Raises DomainError where the rounding carried by the largest terms exceeds
    CANCELLATION_LIMIT relative to the value.
    """
    total = np.zeros_like(z, dtype=complex)
    carry = np.zeros_like(z, dtype=complex)   # Neumaier compensation, per component
    coef = np.ones_like(z, dtype=complex)   # (gamma)_k z^k / k!
    peak = np.zeros(z.shape)
    small = np.zeros(z.shape, dtype=int)
    done = np.zeros(z.shape, dtype=bool)
    for k in range(MAX_TERMS):
        term = np.where(done, 0, coef * sp.rgamma(alpha * k + beta))
        peak = np.maximum(peak, np.abs(term))
        carry += _compensation(total.real, term.real) + 1j * _compensation(total.imag, term.imag)
        total = total + term
        if alpha * k + beta > 1:
            tiny = np.abs(term) < 1e-16 * np.abs(total)
            # an exactly zero series (z = 0 with 1/Gamma(beta) = 0) has converged too
            tiny |= (term == 0) & (total == 0)
            small = np.where(tiny, small + 1, 0)
            done |= small >= 3
            if done.all():
                return _checked(total + carry, peak, z, abs(float(sp.rgamma(beta))))
        coef = coef * (gamma_ + k) * z / (k + 1)
    raise DomainError(f"series did not converge within {MAX_TERMS} terms")


def _checked(value: np.ndarray, peak: np.ndarray, z: np.ndarray, leading: float) -> np.ndarray:
    # each term carries about max(1, |z|) roundings from the coefficient recursion;
    # the leading term sets the scale where the function crosses zero
    lost = peak * EPS * np.maximum(1.0, np.abs(z))
    bad = lost > CANCELLATION_LIMIT * np.maximum(np.abs(value), leading)
    if np.any(bad):
        worst = z[bad][np.argmax(np.abs(z[bad]))]
        raise DomainError(f"power series cancels at z = {complex(worst):.4g}: "
                          f"terms reach {np.max(peak[bad]):.3e} against a value of {np.min(np.abs(value[bad])):.3e}")
    return value


def _evaluate(alpha: float, beta: float, gamma_: float, z: np.ndarray) -> np.ndarray:
    """Series value; for alpha = 1 arguments in the left half plane use Kummer's transformation
    E^{gamma}_{1,beta}(z) = exp(z) E^{beta-gamma}_{1,beta}(-z)"""
    if alpha != 1.0:
        return _series(alpha, beta, gamma_, z)
    flat = z.reshape(-1)
    left = flat.real < 0
    out = np.empty(flat.shape, dtype=complex)
    if np.any(~left):
        out[~left] = _series(1.0, beta, gamma_, flat[~left])
    if np.any(left):
        out[left] = np.exp(flat[left]) * _series(1.0, beta, beta - gamma_, -flat[left])
    return out.reshape(z.shape)


def _prepare(alpha, beta, z, bound):
    if float(alpha) <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    arr = np.asarray(z, dtype=complex)
    radius = safe_radius(alpha, bound)
    if arr.size and np.max(np.abs(arr)) > radius:
        raise DomainError(
            f"|z| = {np.max(np.abs(arr)):.4g} beyond the series bound {radius:.4g} for alpha={float(alpha)}")
    return arr


def mittag_leffler(alpha, beta, z: ArrayLike, bound: float = DEFAULT_BOUND) -> ArrayLike:
    """Two-parameter Mittag-Leffler function E_{alpha,beta}(z) by its power series.

    Args:
        alpha: positive order
        beta: positive second parameter
        z: scalar or array argument
        bound: series bound; |z| must not exceed bound**min(alpha, 1)

    Returns:
        complex scalar or array shaped like z
    """
    if float(beta) <= 0:
        raise DomainError(f"beta must be positive, got {beta}")
    arr = _prepare(alpha, beta, z, bound)
    out = _evaluate(float(alpha), float(beta), 1.0, arr)
    return complex(out) if np.ndim(z) == 0 else out


def prabhakar(alpha, beta, gamma_, z: ArrayLike, bound: float = DEFAULT_BOUND) -> ArrayLike:
    """Three-parameter Mittag-Leffler function E^{gamma}_{alpha,beta}(z).

    beta may be zero or negative: 1/Gamma vanishes at its poles, which is the
    continuation used for Riemann-Liouville derivatives of exponential terms.
    """
    arr = _prepare(alpha, beta, z, bound)
    out = _evaluate(float(alpha), float(beta), float(gamma_), arr)
    return complex(out) if np.ndim(z) == 0 else out


def exp_moment_integral(m: int, beta, lam, s: ArrayLike, bound: float = DEFAULT_BOUND) -> ArrayLike:
    """Riemann-Liouville integral of order beta of u**m * exp(lam*u), evaluated at u = s.

    Equals m! * s**(m+beta) * E^{m+1}_{1, m+1+beta}(lam*s). Negative beta gives the
    Riemann-Liouville derivative of order -beta; values at s = 0 with m + beta < 0
    are infinite unless -beta is an integer (classical derivative).
    """
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < 0):
        raise DomainError("the moment integral needs s >= 0")
    if m < 0:
        raise DomainError(f"polynomial degree must be nonnegative, got {m}")
    beta = float(beta)
    lam = complex(lam)
    if beta <= 0 and beta == math.floor(beta):
        # Leibniz rule for the j-th derivative of s^m exp(lam s)
        j = int(-beta)
        out = np.zeros(s_arr.shape, dtype=complex)
        for i in range(min(j, m) + 1):
            c = math.comb(j, i) * math.perm(m, i) * lam ** (j - i)
            out = out + c * s_arr ** (m - i)
        out = out * np.exp(lam * s_arr)
    else:
        series = prabhakar(1.0, m + 1 + beta, m + 1, complex(lam) * s_arr, bound)
        with np.errstate(divide='ignore', invalid='ignore'):
            power = np.power(s_arr, m + beta)
        out = math.factorial(m) * power * series
    return complex(out) if np.ndim(s) == 0 else np.asarray(out, dtype=complex)


def frac_integral_exp_closed(alpha, lam, t: ArrayLike, bound: float = DEFAULT_BOUND) -> ArrayLike:
    """I_0^alpha [exp(lam s)](t) = t**alpha * E_{1,1+alpha}(lam t)"""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise DomainError("closed form needs t >= 0")
    if float(alpha) < 0:
        raise DomainError(f"order must be nonnegative, got {alpha}")
    return exp_moment_integral(0, alpha, lam, t, bound)
