"""Multiplicative polynomials of bounded degree in infinitely many variables.

A polynomial here is determined by per-degree coefficient sequences a_1..a_D;
the coefficient attached to the monomial x_{j_1}^{d_1} ... x_{j_k}^{d_k} is
the product a_{d_1, j_1} ... a_{d_k, j_k}.  Composite coefficients are never
stored, only derived, so evaluation collapses to products of sequence
pairings.  Two independent evaluators are provided: the product form (sums
of products of pairings, one per degree tuple) and an exact brute-force
monomial enumeration for finite-support points.  Their agreement is the
library's main self-check.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .bounded import BoundedValue
from .errors import (
    InvalidArity,
    InvalidInput,
    NotInSpace,
    ToleranceNotMet,
    TooLarge,
    UnsupportedRepresentation,
)
from .sequences import (
    ConjugatePair,
    FiniteSupport,
    SeqRep,
    holder_pairing,
    lp_norm,
    make_conjugate,
    power_coordinates,
    seqrep_from_json,
)

DegreeTuple = tuple[int, ...]

BRUTE_FORCE_CAP = 10 ** 7


def enumerate_degree_tuples(d_max: int, k: int) -> list[DegreeTuple]:
    """All k-tuples of positive integers with sum <= d_max, lexicographic.

    The count is binomial(d_max, k); the union over k = 1..d_max has
    2^d_max - 1 elements.
    """
    if not isinstance(d_max, int) or not isinstance(k, int):
        raise InvalidArity(f"degree bound and arity must be integers, got {d_max!r}, {k!r}")
    if k < 1 or k > d_max:
        raise InvalidArity(f"arity must satisfy 1 <= k <= {d_max}, got {k}")
    out: list[DegreeTuple] = []

    def build(prefix: tuple[int, ...], remaining: int, slots: int):
        if slots == 0:
            out.append(prefix)
            return
        for first in range(1, remaining - (slots - 1) + 1):
            build(prefix + (first,), remaining - first, slots - 1)

    build((), d_max, k)
    return out


@dataclass(frozen=True)
class MultiplicativePolynomial:
    """Degree bound, ambient exponent q with degree_bound < q <= inf, and
    the per-degree coefficient sequences a_1..a_D (index d-1)."""

    degree_bound: int
    q: float
    coeffs: tuple[SeqRep, ...]

    def __post_init__(self):
        if not isinstance(self.degree_bound, int) or self.degree_bound < 1:
            raise InvalidInput(f"degree bound must be an integer >= 1, got {self.degree_bound!r}")
        q = float(self.q)
        if not (q > self.degree_bound):
            raise InvalidInput(
                f"ambient exponent must exceed the degree bound, got q = {q} <= {self.degree_bound}")
        object.__setattr__(self, "q", q)
        if len(self.coeffs) != self.degree_bound:
            raise InvalidInput(
                f"need {self.degree_bound} coefficient sequences, got {len(self.coeffs)}")
        for a in self.coeffs:
            if not isinstance(a, SeqRep):
                raise InvalidInput(f"coefficient must be a sequence, got {a!r}")

    @classmethod
    def from_coeff_map(cls, degree_bound: int, q: float,
                       mapping: dict[int, SeqRep]) -> "MultiplicativePolynomial":
        """Build from a degree -> sequence map; missing degrees become zero."""
        coeffs = tuple(mapping.get(d, FiniteSupport(())) for d in range(1, degree_bound + 1))
        return cls(degree_bound, q, coeffs)

    def coeff(self, d: int) -> SeqRep:
        return self.coeffs[d - 1]

    def dual_exponent(self, d: int) -> float:
        """Exponent p with the coefficient space pairing against l^(q/d)."""
        if math.isinf(self.q):
            return 1.0
        return self.q / (self.q - d)

    def dual_pair(self, d: int) -> ConjugatePair:
        return make_conjugate(self.dual_exponent(d))

    def to_json(self) -> dict:
        q = "inf" if math.isinf(self.q) else self.q
        return {"D": self.degree_bound, "q": q,
                "coeffs": {str(d): self.coeff(d).to_json()
                           for d in range(1, self.degree_bound + 1)}}


def polynomial_from_json(obj) -> MultiplicativePolynomial:
    try:
        d_max = int(obj["D"])
        q = math.inf if obj["q"] == "inf" else float(obj["q"])
        mapping = {int(d): seqrep_from_json(enc) for d, enc in obj["coeffs"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed polynomial encoding: {exc}") from exc
    for d in mapping:
        if d < 1 or d > d_max:
            raise InvalidInput(f"coefficient degree {d} outside 1..{d_max}")
    return MultiplicativePolynomial.from_coeff_map(d_max, q, mapping)


@dataclass(frozen=True)
class DegreeMembership:
    degree: int
    exponent: float
    certified: bool
    norm_bound: float | None


@dataclass(frozen=True)
class MembershipReport:
    entries: tuple[DegreeMembership, ...]

    @property
    def all_certified(self) -> bool:
        return all(e.certified for e in self.entries)


def membership_check(poly: MultiplicativePolynomial,
                     norm_tol: float = 1e-6) -> MembershipReport:
    """Certify or refute membership of each a_d in l^(q/(q-d)).

    A refuted degree is reported, not raised.  For certified members the
    entry records an upper bound on the coefficient norm when one is
    computable at the given tolerance.
    """
    entries = []
    for d in range(1, poly.degree_bound + 1):
        a = poly.coeff(d)
        p = poly.dual_exponent(d)
        certified = a.in_lp(p)
        bound = None
        if certified:
            try:
                bound = lp_norm(a, p, norm_tol).abs_upper()
            except ToleranceNotMet:
                bound = None
        entries.append(DegreeMembership(d, p, certified, bound))
    return MembershipReport(tuple(entries))


def _pairings_by_degree(poly: MultiplicativePolynomial, x: SeqRep,
                        inner_tol: float) -> dict[int, BoundedValue]:
    """One certified pairing (a_d, x^d) per degree with a nonzero coefficient."""
    out: dict[int, BoundedValue] = {}
    for d in range(1, poly.degree_bound + 1):
        a = poly.coeff(d)
        if a.is_zero():
            out[d] = BoundedValue.exact(0.0)
            continue
        x_pow = x if d == 1 else power_coordinates(x, d)
        out[d] = holder_pairing(a, x_pow, poly.dual_pair(d), inner_tol)
    return out


def eval_product_form(poly: MultiplicativePolynomial, x: SeqRep,
                      tol: float) -> BoundedValue:
    """Evaluate via sums over degree tuples of products of pairings.

    The tolerance is split across the 2^D - 1 tuple terms; within a term the
    factor errors propagate through the product using the other factors'
    certified magnitudes.  Terms are accumulated in lexicographic tuple
    order, so results are deterministic.
    """
    tol = float(tol)
    if not (tol > 0.0):
        raise InvalidInput(f"tolerance must be positive, got {tol}")
    if not x.in_lp(poly.q):
        raise NotInSpace(f"evaluation point not certifiable in l^{poly.q}")
    d_max = poly.degree_bound
    tuple_count = (1 << d_max) - 1
    inner_tol = tol / (tuple_count * max(d_max, 1))
    for _ in range(4):
        pairings = _pairings_by_degree(poly, x, inner_tol)
        total = BoundedValue.exact(0.0)
        for k in range(1, d_max + 1):
            for deg_tuple in enumerate_degree_tuples(d_max, k):
                term = BoundedValue.exact(1.0)
                for d in deg_tuple:
                    term = term * pairings[d]
                total = total + term
        if total.error_bound <= tol:
            return total
        inner_tol *= 0.5 * min(tol / total.error_bound, 0.1)
    raise ToleranceNotMet(f"product-form evaluation did not certify to {tol}")


def eval_bruteforce(poly: MultiplicativePolynomial, x: SeqRep,
                    cap: int = BRUTE_FORCE_CAP) -> complex:
    """Exact monomial-by-monomial evaluation at a finite-support point.

    Sums the formal series directly: every degree tuple and every index
    tuple over the support contributes its derived product coefficient
    times the monomial value.  Monomials with several representations are
    summed once per representation, matching the formal series.  Cost is
    sum_k |tuples_k| * m^k and is refused above the cap.
    """
    simplified = x.simplify()
    if not isinstance(simplified, FiniteSupport):
        raise UnsupportedRepresentation("brute-force evaluation needs finite support")
    support = [j for j, _ in simplified.entries]
    values = {j: v for j, v in simplified.entries}
    m = len(support)
    d_max = poly.degree_bound
    cost = 0
    for k in range(1, d_max + 1):
        cost += math.comb(d_max, k) * (m ** k)
        if cost > cap:
            raise TooLarge(f"brute-force enumeration needs {cost} > {cap} monomials")
    total = 0.0 + 0.0j
    for k in range(1, d_max + 1):
        for deg_tuple in enumerate_degree_tuples(d_max, k):
            coeff_seqs = [poly.coeff(d) for d in deg_tuple]
            for index_tuple in itertools.product(support, repeat=k):
                term = 1.0 + 0.0j
                for d, a, j in zip(deg_tuple, coeff_seqs, index_tuple):
                    term *= a.value_at(j) * values[j] ** d
                total += term
    return total
