"""Univariate marginal distributions and order-statistic marginals.

The built-in marginals are Uniform(0,1) and Exponential(1) — the two used
by the correlation tables — plus a ``QuantileTable`` type that admits any
continuous marginal given on a quantile grid (e.g. from a CSV file).

All CDFs and quantiles are vectorized numpy ufuncs of their argument.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError


class Marginal:
    """Continuous univariate marginal: CDF, quantile, first two moments.

    ``quantile_weight`` is the derivative of the quantile function, used
    as the Jacobian when correlation integrals are transformed to the
    unit square.
    """

    def cdf(self, x):
        raise NotImplementedError

    def quantile(self, u):
        raise NotImplementedError

    def quantile_weight(self, u):
        raise NotImplementedError

    @property
    def mean(self) -> float:
        raise NotImplementedError

    @property
    def variance(self) -> float:
        raise NotImplementedError

    def moments(self) -> tuple:
        """(mean, variance)."""
        return (self.mean, self.variance)

    def support(self) -> tuple:
        """(lower, upper) endpoints; upper may be a finite cap for the quadrature."""
        return (self.quantile(0.0), self.quantile(1.0))


def _check_unit(u):
    arr = np.asarray(u, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 1.0) or np.any(np.isnan(arr)):
        raise DomainError(f"probability argument must lie in [0, 1], got {u}")
    return arr


class Uniform01(Marginal):
    """Uniform(0, 1)."""

    def cdf(self, x):
        return np.clip(np.asarray(x, dtype=float), 0.0, 1.0)

    def quantile(self, u):
        return _check_unit(u)

    def quantile_weight(self, u):
        return np.ones_like(np.asarray(u, dtype=float))

    @property
    def mean(self) -> float:
        return 0.5

    @property
    def variance(self) -> float:
        return 1.0 / 12.0

    def __repr__(self) -> str:
        return "Uniform01()"


class ExponentialRate1(Marginal):
    """Exponential with rate 1 on [0, inf).

    ``quantile(1.0)`` returns a declared finite cap chosen so that
    ``cdf(cap) == 1.0`` in double precision; only endpoint-free quadrature
    rules and margin-recovery checks ever request it.
    """

    UPPER_CAP = 746.0

    def cdf(self, x):
        arr = np.asarray(x, dtype=float)
        return np.where(arr <= 0.0, 0.0, -np.expm1(-np.maximum(arr, 0.0)))

    def quantile(self, u):
        arr = _check_unit(u)
        with np.errstate(divide="ignore"):
            q = -np.log1p(-arr)
        return np.where(arr == 1.0, self.UPPER_CAP, q)

    def quantile_weight(self, u):
        arr = _check_unit(u)
        with np.errstate(divide="ignore"):
            return 1.0 / (1.0 - arr)

    @property
    def mean(self) -> float:
        return 1.0

    @property
    def variance(self) -> float:
        return 1.0

    def __repr__(self) -> str:
        return "ExponentialRate1()"


class QuantileTable(Marginal):
    """Marginal defined by a strictly increasing (probability, value) grid.

    The CDF and quantile are the piecewise-linear interpolants of the grid
    and its inverse.  Moments are computed by trapezoid quadrature of the
    quantile function, which requires at least 64 grid points.
    """

    MIN_MOMENT_POINTS = 64

    def __init__(self, probs, values):
        probs = np.asarray(probs, dtype=float)
        values = np.asarray(values, dtype=float)
        if probs.ndim != 1 or probs.shape != values.shape or probs.size < 2:
            raise DomainError("quantile table needs two equal-length 1-D columns")
        if np.any(np.diff(probs) <= 0.0) or np.any(np.diff(values) <= 0.0):
            raise DomainError("quantile table columns must be strictly increasing")
        if probs[0] < 0.0 or probs[-1] > 1.0:
            raise DomainError("probabilities must lie in [0, 1]")
        self._probs = probs
        self._values = values

    @classmethod
    def from_csv(cls, path) -> "QuantileTable":
        """Load a table from CSV with mandatory header row ``p,value``."""
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise DomainError(f"{path}: empty file") from None
            if [c.strip().lower() for c in header[:2]] != ["p", "value"]:
                raise DomainError(f"{path}: header row 'p,value' required")
            rows = [(float(r[0]), float(r[1])) for r in reader if r]
        if not rows:
            raise DomainError(f"{path}: no data rows")
        probs, values = zip(*rows)
        return cls(np.array(probs), np.array(values))

    def cdf(self, x):
        return np.interp(np.asarray(x, dtype=float), self._values, self._probs,
                         left=0.0, right=1.0)

    def quantile(self, u):
        arr = _check_unit(u)
        return np.interp(arr, self._probs, self._values)

    def quantile_weight(self, u):
        arr = _check_unit(u)
        slopes = np.diff(self._values) / np.diff(self._probs)
        idx = np.clip(np.searchsorted(self._probs, arr, side="right") - 1,
                      0, slopes.size - 1)
        return slopes[idx]

    def _moment_integrals(self) -> tuple:
        if self._probs.size < self.MIN_MOMENT_POINTS:
            raise DomainError(
                f"quantile grid too coarse for moments: "
                f"{self._probs.size} < {self.MIN_MOMENT_POINTS} points"
            )
        mean = np.trapz(self._values, self._probs)
        second = np.trapz(self._values**2, self._probs)
        return float(mean), float(second - mean**2)

    @property
    def mean(self) -> float:
        return self._moment_integrals()[0]

    @property
    def variance(self) -> float:
        return self._moment_integrals()[1]

    def __repr__(self) -> str:
        return f"QuantileTable(<{self._probs.size} points>)"


@dataclass(frozen=True)
class OrderStatMarginal:
    """Distribution of the k-th smallest of n iid draws from ``base``."""

    base: Marginal
    k: int
    n: int

    def __post_init__(self):
        if not (1 <= self.k <= self.n):
            raise DomainError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")

    def cdf(self, x):
        return os_cdf(self.base, self.k, self.n, x)


def os_cdf(base: Marginal, k: int, n: int, x):
    """CDF of the k-th order statistic of n iid draws from ``base``.

    Evaluated as the regularized incomplete beta I_{k,n-k+1}(F(x)) rather
    than the explicit binomial sum; the beta route stays stable when
    (1 - F)**(n-i) would cancel catastrophically near F -> 1.
    """
    if not (1 <= k <= n):
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    return specfun.inc_beta(k, n - k + 1, base.cdf(x))
