"""Scalar estimates carrying certified truncation-error bounds.

A BoundedValue packages an estimate together with a bound on the distance
to the exact value of the underlying infinite expression, assuming exact
arithmetic on the computed partial sums.  Floating-point roundoff is a
second-order effect at the scales this package targets and is deliberately
excluded from the guarantee (see README, "Error-bound semantics").
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class BoundedValue:
    """An estimate of a scalar together with a certified truncation bound.

    estimate     -- computed approximation (complex; real values have 0j part)
    error_bound  -- guaranteed bound on |true - estimate|, truncation only
    """

    estimate: complex
    error_bound: float

    def __post_init__(self):
        if not (self.error_bound >= 0.0):
            raise ValueError(f"error bound must be nonnegative, got {self.error_bound}")

    @classmethod
    def exact(cls, value: complex) -> "BoundedValue":
        return cls(complex(value), 0.0)

    @property
    def real_estimate(self) -> float:
        return self.estimate.real

    def abs_upper(self) -> float:
        """Certified upper bound on |true value|."""
        return abs(self.estimate) + self.error_bound

    def abs_lower(self) -> float:
        """Certified lower bound on |true value|."""
        return max(abs(self.estimate) - self.error_bound, 0.0)

    def __add__(self, other: "BoundedValue | complex | float") -> "BoundedValue":
        if isinstance(other, BoundedValue):
            return BoundedValue(self.estimate + other.estimate,
                                self.error_bound + other.error_bound)
        return BoundedValue(self.estimate + complex(other), self.error_bound)

    __radd__ = __add__

    def __sub__(self, other: "BoundedValue | complex | float") -> "BoundedValue":
        if isinstance(other, BoundedValue):
            return BoundedValue(self.estimate - other.estimate,
                                self.error_bound + other.error_bound)
        return BoundedValue(self.estimate - complex(other), self.error_bound)

    def __mul__(self, other: "BoundedValue | complex | float") -> "BoundedValue":
        if isinstance(other, BoundedValue):
            # |ab - (a+da)(b+db)| <= |a| db + |b| da + da db
            err = (abs(self.estimate) * other.error_bound
                   + abs(other.estimate) * self.error_bound
                   + self.error_bound * other.error_bound)
            return BoundedValue(self.estimate * other.estimate, err)
        c = complex(other)
        return BoundedValue(self.estimate * c, abs(c) * self.error_bound)

    __rmul__ = __mul__

    def scaled(self, c: complex) -> "BoundedValue":
        return self * c


def sqrt_of_nonneg(value: BoundedValue) -> BoundedValue:
    """Square root of a BoundedValue known to enclose a nonnegative real.

    The enclosure [lo, hi] of the argument maps to [sqrt(lo), sqrt(hi)];
    the returned error bound covers the wider half of that bracket (which
    stays finite even when the enclosure touches zero).
    """
    v = value.estimate.real
    lo = max(v - value.error_bound, 0.0)
    hi = max(v + value.error_bound, 0.0)
    est = math.sqrt(max(v, 0.0))
    err = max(math.sqrt(hi) - est, est - math.sqrt(lo))
    return BoundedValue(est, err)


def root_of_nonneg(value: BoundedValue, p: float) -> BoundedValue:
    """p-th root (p >= 1) of a BoundedValue enclosing a nonnegative real."""
    v = value.estimate.real
    lo = max(v - value.error_bound, 0.0)
    hi = max(v + value.error_bound, 0.0)
    est = max(v, 0.0) ** (1.0 / p)
    err = max(hi ** (1.0 / p) - est, est - lo ** (1.0 / p))
    return BoundedValue(est, err)


def reciprocal_of_positive(value: BoundedValue) -> BoundedValue:
    """1 / value for a BoundedValue certifiably enclosing a positive real.

    Raises ZeroDivisionError when the enclosure is not strictly positive.
    """
    v = value.estimate.real
    lo = v - value.error_bound
    if lo <= 0.0:
        raise ZeroDivisionError("enclosure is not certifiably positive")
    hi = v + value.error_bound
    est = 1.0 / v
    err = max(1.0 / lo - est, est - 1.0 / hi)
    return BoundedValue(est, err)
