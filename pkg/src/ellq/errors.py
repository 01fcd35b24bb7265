"""Exception taxonomy shared by all ellq modules."""

from __future__ import annotations


class EllqError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(EllqError):
    """Malformed argument, schema violation, or broken invariant."""


class InvalidExponent(InvalidInput):
    """An exponent p < 1 where a norm exponent >= 1 is required."""


class NotInSpace(EllqError):
    """Membership of a sequence in the requested lp space is not certifiable."""


class ToleranceNotMet(EllqError):
    """The requested truncation tolerance is unreachable within the term cap."""

    def __init__(self, message: str, required_n: int | None = None):
        super().__init__(message)
        self.required_n = required_n


class ConvergenceTooSlow(EllqError):
    """Series convergence too slow for the requested tolerance and cap."""

    def __init__(self, message: str, required_n: int | None = None):
        super().__init__(message)
        self.required_n = required_n


class UnsupportedRepresentation(EllqError):
    """Operation defined only for finite-support sequences."""


class InvalidArity(InvalidInput):
    """Tuple length outside the admissible range."""


class TooLarge(EllqError):
    """Exhaustive enumeration would exceed the configured work cap."""


class UnsupportedNorm(EllqError):
    """Solver path requires a different norm exponent (typically q = 2)."""


class Infeasible(EllqError):
    """No solution within tolerance; carries the least-squares residual."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class CertifiedInfeasible(EllqError):
    """A dual vector proves no solution exists at any norm."""


class UndefinedRatio(EllqError):
    """Riesz ratio of the form 0/0, or denominator not certifiably positive."""


class NotConverged(EllqError):
    """Iterative solver stagnated before reaching its cap."""


class InvalidBase(InvalidInput):
    """Triangular system base sequence vanishes on a required index."""


class OutsideHalfPlane(InvalidInput):
    """Dirichlet point with real part outside the admissible half-plane."""
