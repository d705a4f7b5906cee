"""Power function distribution primitives and marginal transforms.

The power function distribution PFD(a) lives on [0, 1] with CDF x**a; the
a = 1 case is uniform.  This module holds the distribution object itself,
the quantile-based marginal transforms (power, exponential, Pareto), the
empirical-CDF rank transform used to bring raw series onto the (0, 1)
scale, and the Kolmogorov-Smirnov distance used as the goodness-of-fit
gate for every sampler in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np
from scipy.stats import rankdata

from .errors import DomainError

__all__ = [
    "PfdLaw",
    "QuantileSpec",
    "EmpiricalCdf",
    "pareto_reciprocal",
    "prh_transform",
    "ecdf_transform",
    "ks_statistic",
    "ks_critical_value",
]

# Asymptotic two-sided Kolmogorov constants; distance thresholds are c / sqrt(n).
_KS_CONSTANTS = {0.05: 1.36, 0.01: 1.63}

# Closed unit interval shrunk by one representable step on each side.
_UNIT_LO = np.finfo(float).tiny
_UNIT_HI = np.nextafter(1.0, 0.0)


def clip_open_unit(x: np.ndarray) -> np.ndarray:
    """Clamp values into the open interval (0, 1) by one float step."""
    return np.clip(x, _UNIT_LO, _UNIT_HI)


@dataclass(frozen=True)
class PfdLaw:
    """Power function distribution with shape ``alpha`` > 0: CDF x**alpha on [0, 1]."""

    alpha: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError(f"alpha must be a positive finite real, got {self.alpha}")

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < 0) or np.any(x > 1):
            raise DomainError("cdf argument must lie in [0, 1]")
        return x**self.alpha

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0) or np.any(x >= 1):
            raise DomainError("pdf argument must lie in the open interval (0, 1)")
        return self.alpha * x ** (self.alpha - 1.0)

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        if np.any(u < 0) or np.any(u > 1):
            raise DomainError("quantile argument must lie in [0, 1]")
        return u ** (1.0 / self.alpha)

    def mean(self) -> float:
        return self.alpha / (self.alpha + 1.0)

    def variance(self) -> float:
        a = self.alpha
        return a / ((a + 1.0) ** 2 * (a + 2.0))

    def mean_var(self) -> tuple[float, float]:
        return self.mean(), self.variance()

    def sample(self, gen: np.random.Generator, size: int | None = None):
        """Inversion sampling; advances ``gen``, deterministic given its state."""
        u = gen.random(size)
        return clip_open_unit(u ** (1.0 / self.alpha))


def pareto_reciprocal(x):
    """Map values in (0, 1] to [1, inf) by y = 1/x.

    A PFD(a) draw maps to a Pareto(a, 1) draw.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("reciprocal transform requires strictly positive input")
    return 1.0 / x


@dataclass(frozen=True)
class QuantileSpec:
    """A named quantile function F0^{-1} for marginal transforms.

    Families:
      power(shape a):       F0(x) = x**a on (0, 1),  quantile u**(1/a)
      exponential(rate r):  quantile -log(1 - u) / r
      pareto(shape a):      scale fixed at 1, quantile (1 - u)**(-1/a)
    """

    family: Literal["power", "exponential", "pareto"]
    parameter: float

    def __post_init__(self) -> None:
        if self.family not in ("power", "exponential", "pareto"):
            raise ValueError(f"unknown quantile family {self.family!r}")
        if not (np.isfinite(self.parameter) and self.parameter > 0):
            raise ValueError("quantile family parameter must be a positive finite real")

    @property
    def diverges_at_one(self) -> bool:
        return self.family in ("exponential", "pareto")

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        if np.any(u < 0) or np.any(u > 1):
            raise DomainError("quantile argument must lie in [0, 1]")
        if self.family == "power":
            return u ** (1.0 / self.parameter)
        if np.any(u == 1.0):
            raise DomainError(f"{self.family} quantile diverges at u = 1")
        if self.family == "exponential":
            return -np.log1p(-u) / self.parameter
        return (1.0 - u) ** (-1.0 / self.parameter)

    def cdf(self, y):
        y = np.asarray(y, dtype=float)
        if self.family == "power":
            if np.any(y < 0) or np.any(y > 1):
                raise DomainError("power cdf argument must lie in [0, 1]")
            return y**self.parameter
        if np.any(y < 0):
            raise DomainError("cdf argument must be nonnegative")
        if self.family == "exponential":
            return -np.expm1(-self.parameter * y)
        return np.where(y < 1.0, 0.0, 1.0 - y ** (-self.parameter))


def prh_transform(values, spec: QuantileSpec) -> np.ndarray:
    """Apply a quantile function elementwise to a (0, 1)-valued path.

    The map is strictly increasing, so ranks (and ascent/descent patterns)
    of the input are preserved exactly.
    """
    values = np.asarray(values, dtype=float)
    if np.any(values <= 0) or np.any(values >= 1):
        if spec.diverges_at_one and np.any(values >= 1):
            raise DomainError(f"{spec.family} quantile diverges at 1; path touches the boundary")
        if np.any(values < 0) or np.any(values > 1):
            raise DomainError("path values must lie in [0, 1]")
    return spec.quantile(values)


def ecdf_transform(series) -> np.ndarray:
    """Rank transform a series onto (0, 1): rank r (average ranks for ties) -> r/(m+1).

    The m+1 denominator keeps the output strictly inside the open interval,
    where the PFD machinery is nondegenerate.  Output depends on the input
    only through ranks.
    """
    series = np.asarray(series, dtype=float)
    if series.ndim != 1:
        raise ValueError("series must be one-dimensional")
    m = series.shape[0]
    if m < 2:
        raise ValueError(f"series must have at least 2 values, got {m}")
    if not np.all(np.isfinite(series)):
        raise ValueError("series values must be finite")
    return rankdata(series, method="average") / (m + 1.0)


@dataclass(frozen=True)
class EmpiricalCdf:
    """Right-continuous empirical distribution function of a stored sample."""

    sorted_values: np.ndarray
    m: int

    @classmethod
    def from_sample(cls, values) -> "EmpiricalCdf":
        values = np.sort(np.asarray(values, dtype=float))
        if values.size < 1:
            raise ValueError("empirical CDF needs at least one observation")
        return cls(sorted_values=values, m=int(values.size))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.searchsorted(self.sorted_values, x, side="right") / self.m


def ks_statistic(sample, cdf: Callable[[np.ndarray], np.ndarray]) -> float:
    """Two-sided Kolmogorov-Smirnov distance between a sample and a CDF.

    D = sup_x |F_m(x) - F(x)|, evaluated via the usual one-sided step
    discrepancies at the sorted sample points.
    """
    x = np.sort(np.asarray(sample, dtype=float))
    n = x.size
    if n == 0:
        raise ValueError("sample must be nonempty")
    f = np.asarray(cdf(x), dtype=float)
    grid = np.arange(1, n + 1, dtype=float) / n
    d_plus = np.max(grid - f)
    d_minus = np.max(f - (grid - 1.0 / n))
    return float(max(d_plus, d_minus))


def ks_critical_value(n: int, level: float = 0.05) -> float:
    """Fixed-level KS distance threshold c(level)/sqrt(n); levels 0.05 and 0.01 only."""
    if level not in _KS_CONSTANTS:
        raise ValueError(f"supported levels are {sorted(_KS_CONSTANTS)}, got {level}")
    if n < 1:
        raise ValueError("n must be positive")
    return _KS_CONSTANTS[level] / np.sqrt(n)
