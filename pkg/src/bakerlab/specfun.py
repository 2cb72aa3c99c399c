"""Special functions used throughout the package.

Provides the regularized incomplete beta function, its inverse, and the
four-index multinomial coefficient that weights the order-statistic joint
CDF sums.  The beta routines are vectorized over the argument; parameters
``a`` and ``b`` may be scalars or arrays of matching shape.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy import special as sp

from .errors import ConvergenceError, DomainError

#: Tolerance on |I_{a,b}(p) - q| accepted by :func:`inv_inc_beta`.
INVERSE_TOL = 1e-12
#: Iteration cap for the bracketed Newton refinement of the inverse.
INVERSE_MAX_ITER = 200


def _validate_shape_params(a, b) -> None:
    if np.any(np.asarray(a) <= 0.0) or np.any(np.asarray(b) <= 0.0):
        raise DomainError(f"beta parameters must be positive, got a={a}, b={b}")


def _validate_unit(p, name: str) -> np.ndarray:
    arr = np.asarray(p, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 1.0) or np.any(np.isnan(arr)):
        raise DomainError(f"{name} must lie in [0, 1], got {p}")
    return arr


def inc_beta(a, b, p):
    """Regularized incomplete beta function I_{a,b}(p).

    I_{a,b}(0) = 0 and I_{a,b}(1) = 1; the function is nondecreasing in
    ``p``.  For integer orders it is the CDF of the corresponding order
    statistic of a uniform sample, e.g. I_{n,1}(t) = t**n.

    Parameters
    ----------
    a, b : float or array_like
        Positive shape parameters.
    p : float or array_like
        Evaluation point(s) in [0, 1].

    Returns
    -------
    float or ndarray
    """
    _validate_shape_params(a, b)
    arr = _validate_unit(p, "p")
    out = sp.betainc(a, b, arr)
    return float(out) if np.isscalar(p) or arr.ndim == 0 else out


def inv_inc_beta(a, b, q):
    """Inverse of the regularized incomplete beta: p with I_{a,b}(p) = q.

    The scipy inverse is used as the starting point and then polished by
    bracketed Newton steps until |I_{a,b}(p) - q| <= 1e-12 (bisection is
    taken whenever a Newton step leaves the bracket).  Endpoints map
    exactly: 0 -> 0 and 1 -> 1.

    Raises
    ------
    DomainError
        If q is outside [0, 1] or the shape parameters are not positive.
    ConvergenceError
        If the tolerance is not met within the iteration cap.
    """
    _validate_shape_params(a, b)
    q_arr = _validate_unit(q, "q")
    scalar = np.isscalar(q) or q_arr.ndim == 0

    q_arr = np.atleast_1d(q_arr).astype(float)
    a_arr = np.broadcast_to(np.asarray(a, dtype=float), q_arr.shape)
    b_arr = np.broadcast_to(np.asarray(b, dtype=float), q_arr.shape)

    p = sp.betaincinv(a_arr, b_arr, q_arr)
    p = np.clip(p, 0.0, 1.0)
    # Exact endpoint mapping regardless of the backend's rounding.
    p = np.where(q_arr == 0.0, 0.0, p)
    p = np.where(q_arr == 1.0, 1.0, p)

    lo = np.zeros_like(p)
    hi = np.ones_like(p)
    log_norm = sp.betaln(a_arr, b_arr)

    resid = sp.betainc(a_arr, b_arr, p) - q_arr
    for _ in range(INVERSE_MAX_ITER):
        bad = np.abs(resid) > INVERSE_TOL
        if not np.any(bad):
            break
        lo = np.where(bad & (resid < 0.0), p, lo)
        hi = np.where(bad & (resid > 0.0), p, hi)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            log_pdf = (
                (a_arr - 1.0) * np.log(p)
                + (b_arr - 1.0) * np.log1p(-p)
                - log_norm
            )
            step = resid * np.exp(-log_pdf)
        candidate = p - step
        inside = np.isfinite(candidate) & (candidate > lo) & (candidate < hi)
        candidate = np.where(inside, candidate, 0.5 * (lo + hi))
        p = np.where(bad, candidate, p)
        resid = sp.betainc(a_arr, b_arr, p) - q_arr
    else:
        raise ConvergenceError(
            f"inverse incomplete beta did not reach {INVERSE_TOL} "
            f"within {INVERSE_MAX_ITER} iterations",
            estimates=(float(np.max(np.abs(resid))),),
        )

    return float(p[0]) if scalar else p.reshape(np.shape(q))


def _validate_multinom_index(n: int, k: int, i: int, j: int) -> None:
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"need 1 <= i, j <= n, got i={i}, j={j}, n={n}")
    if not (max(0, i + j - n) <= k <= min(i, j)):
        raise DomainError(
            f"k={k} outside [max(0, i+j-n), min(i, j)] = "
            f"[{max(0, i + j - n)}, {min(i, j)}] for n={n}, i={i}, j={j}"
        )


def multinom_coeff(n: int, k: int, i: int, j: int) -> int:
    """Four-index multinomial coefficient n! / (k! (i-k)! (j-k)! (n-i-j+k)!).

    Counts the arrangements of ``n`` sample points over the four quadrant
    cells with occupancies (k, i-k, j-k, n-i-j+k).  Exact integer
    arithmetic for any ``n``; use :func:`log_multinom_coeff` when a float
    is needed at large ``n``.
    """
    _validate_multinom_index(n, k, i, j)
    return math.factorial(n) // (
        math.factorial(k)
        * math.factorial(i - k)
        * math.factorial(j - k)
        * math.factorial(n - i - j + k)
    )


@lru_cache(maxsize=None)
def _log_factorials(n: int) -> tuple:
    """Precomputed table of log(m!) for m = 0..n."""
    return tuple(math.lgamma(m + 1) for m in range(n + 1))


def log_multinom_coeff(n: int, k: int, i: int, j: int) -> float:
    """Natural log of :func:`multinom_coeff`, via a log-gamma table."""
    _validate_multinom_index(n, k, i, j)
    lf = _log_factorials(n)
    return lf[n] - lf[k] - lf[i - k] - lf[j - k] - lf[n - i - j + k]


def multinom_coeff_float(n: int, k: int, i: int, j: int) -> float:
    """Coefficient as a float: exact-integer route for n <= 20, log space above."""
    if n <= 20:
        return float(multinom_coeff(n, k, i, j))
    return math.exp(log_multinom_coeff(n, k, i, j))


def harmonic_number(n: int) -> float:
    """H_n = sum_{k=1}^{n} 1/k."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return sum(1.0 / k for k in range(1, n + 1))
