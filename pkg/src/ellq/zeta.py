"""Certified evaluation of power sums sum_{j>=start} j^(-s).

The estimate is the plain partial sum through index N plus the integral of
t^(-s) over [N, infinity).  For real exponents the monotone integral test
brackets the dropped tail between the integrals from N+1 and N, so the
midpoint carries a certified error of half the bracket width, at most
N^(-s)/2.  For complex exponents the same comparison gives
|tail - integral| <= |s|/2 * (N^(-sigma-1) + N^(-sigma)/sigma) via the mean
value theorem applied on each unit interval.  Both bounds are elementary
and need no derivative expansions of the summand.
"""

from __future__ import annotations

import functools
import math

import numpy as np

from .bounded import BoundedValue
from .errors import ConvergenceTooSlow, ToleranceNotMet

DEFAULT_TERM_CAP = 1 << 26
MIN_RE_MARGIN = 1e-3

_CHUNK = 1 << 22


def _partial_sum_real(t: float, start: int, stop: int) -> float:
    """sum_{j=start}^{stop} j^(-t) for real t, chunked."""
    total = 0.0
    lo = start
    while lo <= stop:
        hi = min(lo + _CHUNK - 1, stop)
        j = np.arange(lo, hi + 1, dtype=np.float64)
        total += float(np.sum(j ** (-t)))
        lo = hi + 1
    return total


def _partial_sum_complex(s: complex, start: int, stop: int) -> complex:
    total = 0.0 + 0.0j
    lo = start
    while lo <= stop:
        hi = min(lo + _CHUNK - 1, stop)
        j = np.arange(lo, hi + 1, dtype=np.float64)
        total += complex(np.sum(np.exp(-s * np.log(j))))
        lo = hi + 1
    return total


def _required_terms(s: complex, tol: float) -> int:
    sigma = s.real
    if s.imag == 0.0:
        # half the integral bracket width: <= N^(-sigma)/2
        return max(2, math.ceil((0.5 / tol) ** (1.0 / sigma)))
    coeff = abs(s) * 0.5 * (1.0 + 1.0 / sigma)
    return max(2, math.ceil((coeff / tol) ** (1.0 / sigma)))


def _tail_correction(s: complex, n: int) -> tuple[complex, float]:
    """Integral estimate and certified bound for sum_{j>n} j^(-s)."""
    sigma = s.real
    if s.imag == 0.0:
        t = s.real
        upper = n ** (1.0 - t) / (t - 1.0)
        lower = (n + 1) ** (1.0 - t) / (t - 1.0)
        return complex(0.5 * (upper + lower)), 0.5 * (upper - lower)
    integral = n ** complex(1.0 - s.real, -s.imag) / (s - 1.0)
    err = abs(s) * 0.5 * (n ** (-sigma - 1.0) + n ** (-sigma) / sigma)
    return integral, err


@functools.lru_cache(maxsize=4096)
def _power_tail_sum(s: complex, start: int, tol: float, n_cap: int) -> BoundedValue:
    """Certified sum_{j>=start} j^(-s); requires Re(s) > 1.

    Raises ToleranceNotMet when the cap does not admit the tolerance.
    Memoized; BoundedValue is immutable so sharing is safe.
    """
    sigma = s.real
    if sigma <= 1.0:
        raise ToleranceNotMet(
            f"power sum with Re(s) = {sigma} <= 1 diverges or is not certifiable")
    n = max(_required_terms(s, tol), start - 1)
    if n > n_cap:
        raise ToleranceNotMet(
            f"tolerance {tol} at Re(s) = {sigma} needs {n} terms, cap is {n_cap}",
            required_n=n)
    if s.imag == 0.0:
        partial = _partial_sum_real(s.real, start, n)
    else:
        partial = _partial_sum_complex(s, start, n)
    correction, err = _tail_correction(s, n)
    if err > tol:
        # the closed-form n underestimates only by rounding; bump once
        raise ToleranceNotMet(
            f"internal bound {err} above tolerance {tol} at n = {n}", required_n=2 * n)
    return BoundedValue(complex(partial) + correction, err)


def zeta_tail(s: complex, start: int, tol: float,
              n_cap: int = DEFAULT_TERM_CAP) -> BoundedValue:
    """Certified sum_{j>=start} j^(-s) for Re(s) > 1."""
    if start < 1:
        raise ValueError(f"start must be >= 1, got {start}")
    if not (tol > 0.0):
        raise ValueError(f"tolerance must be positive, got {tol}")
    return _power_tail_sum(complex(s), int(start), float(tol), int(n_cap))


def zeta(s: complex, tol: float, n_cap: int = DEFAULT_TERM_CAP,
         min_margin: float = MIN_RE_MARGIN) -> BoundedValue:
    """Riemann zeta on Re(s) >= 1 + min_margin via certified partial sums.

    Raises ConvergenceTooSlow when Re(s) is below the margin or the required
    number of terms exceeds n_cap; the exception reports the required count.
    """
    s = complex(s)
    if not (tol > 0.0):
        raise ValueError(f"tolerance must be positive, got {tol}")
    if s.real < 1.0 + min_margin:
        required = _required_terms(s, tol) if s.real > 1.0 else None
        raise ConvergenceTooSlow(
            f"Re(s) = {s.real} is below the margin {1.0 + min_margin}",
            required_n=required)
    try:
        return _power_tail_sum(s, 1, float(tol), int(n_cap))
    except ToleranceNotMet as exc:
        raise ConvergenceTooSlow(str(exc), required_n=exc.required_n) from exc
