"""Canonical systems: the triangular (Helly-style) family whose prefix
minimum norms diverge, and Dirichlet-series interpolation, whose q = 2
inner-product matrix is zeta evaluated at pairwise sums of the points.

Both families share the certified zeta evaluator from ellq.zeta, re-exported
here as part of the public surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bounded import BoundedValue, reciprocal_of_positive
from .errors import InvalidBase, InvalidInput, OutsideHalfPlane, ToleranceNotMet
from .sequences import (
    ConjugatePair,
    FiniteSupport,
    PowerLaw,
    SeqRep,
    TailRestriction,
    lp_norm,
    make_conjugate,
    seqrep_from_json,
)
from .solver import LinearSystem
from .zeta import zeta, zeta_tail

__all__ = [
    "HellySpec", "DirichletSpec", "zeta", "zeta_tail", "geometric_base",
    "helly_system", "helly_explicit_solution", "helly_lower_bound",
    "dirichlet_system", "helly_spec_from_json", "dirichlet_spec_from_json",
]


@dataclass(frozen=True)
class HellySpec:
    """Triangular system data: row i is the base sequence cut below index i,
    with right-hand side 1.  The base must not vanish on indices 1..r."""

    base: SeqRep
    pair: ConjugatePair
    r: int

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 1:
            raise InvalidInput(f"row count must be an integer >= 1, got {self.r!r}")
        for i in range(1, self.r + 1):
            if self.base.value_at(i) == 0:
                raise InvalidBase(f"base sequence vanishes at index {i}")

    def to_json(self) -> dict:
        p = "inf" if math.isinf(self.pair.p) else self.pair.p
        return {"base": self.base.to_json(), "p": p, "r": self.r}


def helly_spec_from_json(obj) -> HellySpec:
    try:
        base = seqrep_from_json(obj["base"])
        p = math.inf if obj["p"] == "inf" else float(obj["p"])
        r = int(obj["r"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed triangular-system spec: {exc}") from exc
    return HellySpec(base, make_conjugate(p), r)


@dataclass(frozen=True)
class DirichletSpec:
    """Interpolation data: prescribe value b_i for the Dirichlet series
    sum_n x_n n^(-s_i) at points with Re(s_i) > 1/2 (points may repeat)."""

    points: tuple[complex, ...]
    values: tuple[complex, ...]

    def __post_init__(self):
        points = tuple(complex(s) for s in self.points)
        values = tuple(complex(b) for b in self.values)
        if len(points) != len(values) or not points:
            raise InvalidInput("need matching nonempty point and value lists")
        for s in points:
            if not (s.real > 0.5):
                raise OutsideHalfPlane(f"point {s} has Re(s) <= 1/2")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "values", values)

    def to_json(self) -> dict:
        return {"points": [[s.real, s.imag] for s in self.points],
                "values": [[b.real, b.imag] for b in self.values]}


def dirichlet_spec_from_json(obj) -> DirichletSpec:
    try:
        points = tuple(complex(re, im) for re, im in obj["points"])
        values = tuple(complex(re, im) for re, im in obj["values"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed interpolation spec: {exc}") from exc
    return DirichletSpec(points, values)


def geometric_base(ratio: float = 0.5, depth: int = 64) -> FiniteSupport:
    """The sequence ratio^j truncated at ``depth`` as a finite-support rep.

    The representation kinds have no geometric generator, so the classic
    base a_j = ratio^j is materialized up to a depth where the dropped tail
    is negligible: relative error of any tail norm from index r is about
    |ratio|^(2(depth - r + 1)), below double precision noise for
    r <= depth - 30 at ratio 1/2.
    """
    if not (0 < abs(ratio) < 1):
        raise InvalidInput(f"ratio must satisfy 0 < |ratio| < 1, got {ratio}")
    if not isinstance(depth, int) or depth < 1:
        raise InvalidInput(f"depth must be an integer >= 1, got {depth!r}")
    return FiniteSupport(tuple((j, complex(ratio) ** j) for j in range(1, depth + 1)))


def helly_system(spec: HellySpec) -> LinearSystem:
    """Rows a_i = base cut below i, right-hand sides all 1.

    Any two consecutive equations force x_i = 0, so the infinite family has
    no solution even though every finite prefix does; prefix minimum norms
    grow like the reciprocal tail norm of the base.
    """
    rows = tuple((TailRestriction(spec.base, i), 1.0 + 0.0j)
                 for i in range(1, spec.r + 1))
    field_tag = "real" if spec.base.is_real() else "complex"
    return LinearSystem(spec.pair, rows, field_tag)


def helly_explicit_solution(spec: HellySpec, r: int) -> FiniteSupport:
    """The single-coordinate solution of the first r equations: value
    1/base_r at index r, zero elsewhere; its q-norm is 1/|base_r|."""
    if not (1 <= r <= spec.r):
        raise InvalidInput(f"prefix length {r} outside 1..{spec.r}")
    value = spec.base.value_at(r)
    return FiniteSupport(((r, 1.0 / value),))


def helly_lower_bound(spec: HellySpec, r: int, tol: float) -> BoundedValue:
    """Certified 1 / ||row_r||_p, a lower bound on the q-norm of every
    solution of the first r equations; diverges as r grows."""
    if not (1 <= r <= spec.r):
        raise InvalidInput(f"prefix length {r} outside 1..{spec.r}")
    tol = float(tol)
    if not (tol > 0.0):
        raise InvalidInput(f"tolerance must be positive, got {tol}")
    row = TailRestriction(spec.base, r)
    inner_tol = tol
    for _ in range(6):
        norm = lp_norm(row, spec.pair.p, inner_tol)
        try:
            bound = reciprocal_of_positive(norm)
        except ZeroDivisionError:
            inner_tol *= 0.1
            continue
        if bound.error_bound <= tol:
            return bound
        inner_tol *= 0.5 * min(tol / bound.error_bound, 0.5)
    raise ToleranceNotMet(f"reciprocal tail norm did not certify to {tol}")


def dirichlet_system(spec: DirichletSpec) -> LinearSystem:
    """q = 2 system with rows j^(-s_i); the inner-product matrix entries are
    zeta(s_i + conj(s_k)), finite because Re(s_i + conj(s_k)) > 1."""
    rows = tuple((PowerLaw(s), b) for s, b in zip(spec.points, spec.values))
    real = all(s.imag == 0.0 for s in spec.points) and all(
        b.imag == 0.0 for b in spec.values)
    return LinearSystem(make_conjugate(2.0), rows, "real" if real else "complex")
