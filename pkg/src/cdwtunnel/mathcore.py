"""Special functions and series shared by the current and rate models.

Everything here works on dimensionless numbers; unit handling is left to the
callers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, SeriesConvergenceError

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class SeriesControl:
    """Truncation controls for the infinite sums."""

    rel_tolerance: float = 1e-12
    max_terms: int = 1_000_000

    def __post_init__(self):
        if not 0.0 < self.rel_tolerance < 1.0:
            raise DomainError(f"rel_tolerance must lie in (0, 1), got {self.rel_tolerance!r}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise DomainError(f"max_terms must be a positive integer, got {self.max_terms!r}")


DEFAULT_SERIES = SeriesControl()


class SeriesSum(NamedTuple):
    value: float
    n_terms: int


def erf(x: float) -> float:
    """Error function, (2/sqrt(pi)) * integral of exp(-t^2) from 0 to x."""
    # math.erf is the C library erf: odd, monotone, ~1 ulp accurate.
    return math.erf(x)


def truncated_gaussian_integral(a: float, b: float) -> float:
    """Integral of exp(-a*x^2) over [0, b], via erf.

    ``b`` may be ``math.inf``, which gives the half-line value sqrt(pi/a)/2.
    """
    if not a > 0.0:
        raise DomainError(f"Gaussian coefficient must be positive, got {a!r}")
    if not b >= 0.0:
        raise DomainError(f"upper limit must be nonnegative, got {b!r}")
    return 0.5 * math.sqrt(math.pi / a) * erf(b * math.sqrt(a))


def log_cosh_times_exp(c, d):
    """Return ln(cosh(c) * exp(d)) without forming the product.

    Accepts scalars or arrays.
    """
    c = np.asarray(c, dtype=float)
    ac = np.abs(c)
    out = ac + np.log1p(np.exp(-2.0 * ac)) - _LN2 + np.asarray(d, dtype=float)
    return float(out) if out.ndim == 0 else out


def exp_series_sum(s: float, x: float, ctl: SeriesControl = DEFAULT_SERIES) -> SeriesSum:
    """Sum n^(-s) * x^n for n >= 1 (the polylogarithm Li_s(x) on 0 < x < 1).

    Summation stops once the next term falls below
    ``ctl.rel_tolerance`` times the running sum.

    Raises
    ------
    DomainError
        If x is outside (0, 1) or s is not positive.
    SeriesConvergenceError
        If ``ctl.max_terms`` terms are used before the stopping rule fires.
    """
    if not 0.0 < x < 1.0:
        raise DomainError(f"series argument must lie in (0, 1), got {x!r}")
    if not s > 0.0:
        raise DomainError(f"series exponent must be positive, got {s!r}")

    total = 0.0
    power = 1.0
    n = 0
    while n < ctl.max_terms:
        n += 1
        power *= x
        total += power / n**s
        upcoming = power * x / (n + 1) ** s
        if upcoming < ctl.rel_tolerance * total:
            return SeriesSum(total, n)
    raise SeriesConvergenceError(
        f"series with s={s}, x={x} not converged after {n} terms", total, n
    )
