"""Sequence representations with certified lp norms, tails, and pairings.

Four representation kinds cover every sequence this package computes with:

* FiniteSupport    -- finitely many nonzero coordinates, all norms exact;
* PowerLaw         -- a_j = j^(-s) for a complex exponent s;
* TailRestriction  -- a base sequence with coordinates below a start index
                      zeroed (the rows of triangular systems);
* Combination      -- finite linear combinations of the above.

Membership in lp is *certified*, never assumed: a PowerLaw lies in lp only
when Re(s) * p > 1 (sup norms need Re(s) > 0), and operations on sequences
whose membership cannot be certified raise NotInSpace instead of returning
an uncertified number.  All values are immutable and every operation is a
pure function, so concurrent use needs no coordination.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .bounded import BoundedValue, root_of_nonneg, sqrt_of_nonneg
from .errors import (
    InvalidExponent,
    InvalidInput,
    NotInSpace,
    ToleranceNotMet,
    UnsupportedRepresentation,
)
from .zeta import zeta_tail

# Truncation index schedule for partial-sum fallbacks: double from 64 until
# the certified tail bound meets the tolerance, hard-capped.
HEAD_START = 64
TERM_CAP = 1 << 26

# Nested combinations are flattened up to this depth on construction so that
# pairing cost stays proportional to the number of leaf terms.
COMBINATION_FLATTEN_DEPTH = 4


def _check_exponent(p: float) -> float:
    try:
        p = float(p)
    except (TypeError, ValueError) as exc:
        raise InvalidExponent(f"norm exponent must be a number, got {p!r}") from exc
    if math.isnan(p) or p < 1.0:
        raise InvalidExponent(f"norm exponent must satisfy p >= 1, got {p}")
    return p


def _check_tol(tol: float) -> float:
    tol = float(tol)
    if not (tol > 0.0):
        raise InvalidInput(f"tolerance must be positive, got {tol}")
    return tol


@dataclass(frozen=True)
class ConjugatePair:
    """Exponents (p, q) with 1/p + 1/q = 1, including (1, inf) and (inf, 1).

    q is always derived from p; the pair cannot be constructed inconsistent.
    """

    p: float
    q: float = field(init=False)

    def __post_init__(self):
        p = _check_exponent(self.p)
        if p == 1.0:
            q = math.inf
        elif math.isinf(p):
            q = 1.0
        else:
            q = p / (p - 1.0)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)


def make_conjugate(p: float) -> ConjugatePair:
    """Conjugate pair (p, q) with 1/p + 1/q = 1; p = 1 gives q = inf."""
    return ConjugatePair(p)


class SeqRep:
    """Base class for sequence representations (see module docstring)."""

    # -- pointwise access -------------------------------------------------
    def value_at(self, j: int) -> complex:
        raise NotImplementedError

    def values_range(self, lo: int, hi: int) -> np.ndarray:
        """Dense complex values for indices lo..hi inclusive (1-based)."""
        raise NotImplementedError

    def values(self, n: int) -> np.ndarray:
        return self.values_range(1, n)

    # -- structure ---------------------------------------------------------
    def max_support(self) -> int | None:
        """Largest support index, 0 for the zero sequence, None if infinite."""
        raise NotImplementedError

    def support_items(self):
        """Iterate (index, value) over the support; finite reps only."""
        raise UnsupportedRepresentation(
            f"{type(self).__name__} has no finite support to iterate")

    def is_zero(self) -> bool:
        return self.max_support() == 0

    def as_power_tail(self) -> tuple[complex, int] | None:
        """(s, start) when the sequence is j^(-s) cut below start, else None."""
        return None

    def simplify(self) -> "SeqRep":
        return self

    def conjugate(self) -> "SeqRep":
        raise NotImplementedError

    def is_real(self) -> bool:
        raise NotImplementedError

    # -- certified analysis -------------------------------------------------
    def in_lp(self, p: float) -> bool:
        """True when membership in lp is certifiable from the representation."""
        raise NotImplementedError

    def tail_bound(self, p: float, n: int) -> float:
        """Upper bound on the lp norm of the coordinates with index > n."""
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class FiniteSupport(SeqRep):
    """Sorted nonzero coordinates; duplicates merge by addition."""

    entries: tuple[tuple[int, complex], ...]

    def __post_init__(self):
        merged: dict[int, complex] = {}
        for j, v in self.entries:
            if not isinstance(j, int) or isinstance(j, bool) or j < 1:
                raise InvalidInput(f"support index must be an integer >= 1, got {j!r}")
            merged[j] = merged.get(j, 0.0 + 0.0j) + complex(v)
        canonical = tuple(sorted((j, v) for j, v in merged.items() if v != 0))
        object.__setattr__(self, "entries", canonical)
        object.__setattr__(self, "_lookup", dict(canonical))

    @classmethod
    def from_pairs(cls, pairs) -> "FiniteSupport":
        return cls(tuple((int(j), complex(v)) for j, v in pairs))

    def value_at(self, j: int) -> complex:
        return self._lookup.get(j, 0.0 + 0.0j)

    def values_range(self, lo: int, hi: int) -> np.ndarray:
        out = np.zeros(max(hi - lo + 1, 0), dtype=np.complex128)
        for j, v in self.entries:
            if lo <= j <= hi:
                out[j - lo] = v
        return out

    def max_support(self) -> int:
        return self.entries[-1][0] if self.entries else 0

    def support_items(self):
        return iter(self.entries)

    def conjugate(self) -> "FiniteSupport":
        return FiniteSupport(tuple((j, v.conjugate()) for j, v in self.entries))

    def is_real(self) -> bool:
        return all(v.imag == 0.0 for _, v in self.entries)

    def in_lp(self, p: float) -> bool:
        return True

    def tail_bound(self, p: float, n: int) -> float:
        tail = [abs(v) for j, v in self.entries if j > n]
        if not tail:
            return 0.0
        if math.isinf(p):
            return max(tail)
        return float(sum(t ** p for t in tail) ** (1.0 / p))

    def to_json(self) -> dict:
        return {"kind": "sparse",
                "entries": [[j, v.real, v.imag] for j, v in self.entries]}


@dataclass(frozen=True)
class PowerLaw(SeqRep):
    """a_j = j^(-s).  Certified in lp exactly when Re(s) * p > 1."""

    s: complex

    def __post_init__(self):
        object.__setattr__(self, "s", complex(self.s))

    def value_at(self, j: int) -> complex:
        if self.s.imag == 0.0:
            return complex(float(j) ** (-self.s.real))
        return cmath.exp(-self.s * math.log(j))

    def values_range(self, lo: int, hi: int) -> np.ndarray:
        j = np.arange(lo, hi + 1, dtype=np.float64)
        if self.s.imag == 0.0:
            return (j ** (-self.s.real)).astype(np.complex128)
        return np.exp(-self.s * np.log(j))

    def max_support(self) -> None:
        return None

    def as_power_tail(self) -> tuple[complex, int]:
        return (self.s, 1)

    def conjugate(self) -> "PowerLaw":
        return PowerLaw(self.s.conjugate())

    def is_real(self) -> bool:
        return self.s.imag == 0.0

    def in_lp(self, p: float) -> bool:
        if math.isinf(p):
            return self.s.real > 0.0
        return self.s.real * p > 1.0

    def tail_bound(self, p: float, n: int) -> float:
        sigma = self.s.real
        if math.isinf(p):
            if sigma <= 0.0:
                raise NotInSpace(f"j^(-s) with Re(s) = {sigma} is unbounded")
            return float(n + 1) ** (-sigma)
        t = sigma * p
        if t <= 1.0:
            raise NotInSpace(f"j^(-s) with Re(s) * p = {t} <= 1 is not in lp")
        n = max(n, 1)
        return float((n ** (1.0 - t) / (t - 1.0)) ** (1.0 / p))

    def to_json(self) -> dict:
        return {"kind": "powerlaw", "s": [self.s.real, self.s.imag]}


@dataclass(frozen=True)
class TailRestriction(SeqRep):
    """Base sequence with every coordinate below ``start`` set to zero."""

    base: SeqRep
    start: int

    def __post_init__(self):
        if not isinstance(self.start, int) or self.start < 1:
            raise InvalidInput(f"start index must be an integer >= 1, got {self.start!r}")

    def value_at(self, j: int) -> complex:
        return self.base.value_at(j) if j >= self.start else 0.0 + 0.0j

    def values_range(self, lo: int, hi: int) -> np.ndarray:
        out = self.base.values_range(lo, hi)
        if lo < self.start:
            out[: min(self.start - lo, len(out))] = 0.0
        return out

    def max_support(self) -> int | None:
        ms = self.base.max_support()
        if ms is None:
            return None
        live = [j for j, _ in self.base.support_items() if j >= self.start]
        return max(live) if live else 0

    def support_items(self):
        return ((j, v) for j, v in self.base.support_items() if j >= self.start)

    def as_power_tail(self) -> tuple[complex, int] | None:
        inner = self.base.as_power_tail()
        if inner is None:
            return None
        s, inner_start = inner
        return (s, max(inner_start, self.start))

    def simplify(self) -> SeqRep:
        base = self.base.simplify()
        if self.start == 1:
            return base
        if isinstance(base, FiniteSupport):
            return FiniteSupport(tuple((j, v) for j, v in base.entries if j >= self.start))
        if isinstance(base, TailRestriction):
            return TailRestriction(base.base, max(base.start, self.start)).simplify()
        if isinstance(base, Combination):
            # restriction distributes exactly over linear combinations
            return Combination(tuple(
                (c, TailRestriction(t, self.start)) for c, t in base.terms)).simplify()
        return TailRestriction(base, self.start)

    def conjugate(self) -> "TailRestriction":
        return TailRestriction(self.base.conjugate(), self.start)

    def is_real(self) -> bool:
        return self.base.is_real()

    def in_lp(self, p: float) -> bool:
        return self.base.in_lp(p)

    def tail_bound(self, p: float, n: int) -> float:
        return self.base.tail_bound(p, max(n, self.start - 1))

    def to_json(self) -> dict:
        return {"kind": "tail", "base": self.base.to_json(), "start": self.start}


@dataclass(frozen=True)
class Combination(SeqRep):
    """Finite linear combination sum_i c_i * term_i."""

    terms: tuple[tuple[complex, SeqRep], ...]

    def __post_init__(self):
        flat: list[tuple[complex, SeqRep]] = []

        def expand(coeff: complex, term: SeqRep, depth: int):
            if isinstance(term, Combination) and depth < COMBINATION_FLATTEN_DEPTH:
                for c, t in term.terms:
                    expand(coeff * c, t, depth + 1)
            else:
                flat.append((coeff, term))

        for c, t in self.terms:
            if not isinstance(t, SeqRep):
                raise InvalidInput(f"combination term must be a sequence, got {t!r}")
            c = complex(c)
            if c != 0 and not t.is_zero():
                expand(c, t, 0)
        object.__setattr__(self, "terms", tuple(flat))

    def value_at(self, j: int) -> complex:
        return sum((c * t.value_at(j) for c, t in self.terms), 0.0 + 0.0j)

    def values_range(self, lo: int, hi: int) -> np.ndarray:
        out = np.zeros(max(hi - lo + 1, 0), dtype=np.complex128)
        for c, t in self.terms:
            out += c * t.values_range(lo, hi)
        return out

    def max_support(self) -> int | None:
        worst = 0
        for _, t in self.terms:
            ms = t.max_support()
            if ms is None:
                return None
            worst = max(worst, ms)
        return worst

    def support_items(self):
        if self.max_support() is None:
            raise UnsupportedRepresentation("combination contains generator terms")
        acc: dict[int, complex] = {}
        for c, t in self.terms:
            for j, v in t.support_items():
                acc[j] = acc.get(j, 0.0 + 0.0j) + c * v
        return iter(sorted((j, v) for j, v in acc.items() if v != 0))

    def simplify(self) -> SeqRep:
        finite: dict[int, complex] = {}
        tails: dict[tuple[complex, int], complex] = {}
        other: list[tuple[complex, SeqRep]] = []
        for c, raw in self.terms:
            t = raw.simplify()
            ms = t.max_support()
            if ms is not None:
                for j, v in t.support_items():
                    finite[j] = finite.get(j, 0.0 + 0.0j) + c * v
                continue
            pt = t.as_power_tail()
            if pt is not None:
                tails[pt] = tails.get(pt, 0.0 + 0.0j) + c
            else:
                other.append((c, t))
        parts: list[tuple[complex, SeqRep]] = []
        fs = FiniteSupport.from_pairs(finite.items())
        if not fs.is_zero():
            parts.append((1.0 + 0.0j, fs))
        for (s, start), c in sorted(tails.items(), key=lambda kv: (kv[0][0].real,
                                                                   kv[0][0].imag,
                                                                   kv[0][1])):
            if c != 0:
                pl: SeqRep = PowerLaw(s)
                if start > 1:
                    pl = TailRestriction(pl, start)
                parts.append((c, pl))
        parts.extend(other)
        if not parts:
            return FiniteSupport(())
        if len(parts) == 1 and parts[0][0] == 1:
            return parts[0][1]
        return Combination(tuple(parts))

    def conjugate(self) -> "Combination":
        return Combination(tuple((c.conjugate(), t.conjugate()) for c, t in self.terms))

    def is_real(self) -> bool:
        return all(c.imag == 0.0 and t.is_real() for c, t in self.terms)

    def in_lp(self, p: float) -> bool:
        return all(t.in_lp(p) for _, t in self.terms)

    def tail_bound(self, p: float, n: int) -> float:
        return float(sum(abs(c) * t.tail_bound(p, n) for c, t in self.terms))

    def to_json(self) -> dict:
        return {"kind": "combo",
                "terms": [[[c.real, c.imag], t.to_json()] for c, t in self.terms]}


def seqrep_from_json(obj) -> SeqRep:
    """Parse the wire encoding of a sequence representation."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InvalidInput(f"sequence encoding must be an object with a 'kind': {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "sparse":
            return FiniteSupport(tuple(
                (int(j), complex(re, im)) for j, re, im in obj["entries"]))
        if kind == "powerlaw":
            re, im = obj["s"]
            return PowerLaw(complex(re, im))
        if kind == "tail":
            return TailRestriction(seqrep_from_json(obj["base"]), int(obj["start"]))
        if kind == "combo":
            return Combination(tuple(
                (complex(c[0], c[1]), seqrep_from_json(t)) for c, t in obj["terms"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed {kind!r} sequence encoding: {exc}") from exc
    raise InvalidInput(f"unknown sequence kind {kind!r}")


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------

def _sup_norm(a: SeqRep) -> BoundedValue:
    ms = a.max_support()
    if ms is not None:
        return BoundedValue.exact(max((abs(v) for _, v in a.support_items()), default=0.0))
    pt = a.as_power_tail()
    if pt is not None:
        s, start = pt
        return BoundedValue.exact(float(start) ** (-s.real))
    # combination of generators: triangle-inequality upper bound U, returned
    # with error_bound = U so the enclosure [0, 2U] certifiably contains the
    # supremum (which lies in [0, U]); the estimate itself is only an upper
    # bound, not a two-sided value.
    if isinstance(a, Combination):
        u = float(sum(abs(c) * _sup_norm(t).abs_upper() for c, t in a.terms))
        return BoundedValue(u, u)
    if isinstance(a, TailRestriction):
        u = _sup_norm(a.base).abs_upper()
        return BoundedValue(u, u)
    raise UnsupportedRepresentation(f"no sup-norm rule for {type(a).__name__}")


_RANGE_CHUNK = 1 << 20


def _accumulate(fn, lo: int, hi: int) -> complex:
    """Sum fn over index blocks of [lo, hi] without one huge allocation."""
    total = 0.0 + 0.0j
    while lo <= hi:
        mid = min(lo + _RANGE_CHUNK - 1, hi)
        total += fn(lo, mid)
        lo = mid + 1
    return total


def _norm_by_heads(a: SeqRep, p: float, tol: float) -> BoundedValue:
    """Partial sums of |a_j|^p with a Minkowski tail bound, doubling n."""
    total = 0.0
    lo, n = 1, HEAD_START
    while True:
        total += _accumulate(
            lambda x, y: float(np.sum(np.abs(a.values_range(x, y)) ** p)), lo, n).real
        head = total ** (1.0 / p)
        tail = a.tail_bound(p, n)
        if tail <= tol:
            return BoundedValue(head, tail)
        if n >= TERM_CAP:
            raise ToleranceNotMet(
                f"lp norm tail bound {tail} still above {tol} at {n} terms",
                required_n=n)
        lo, n = n + 1, 2 * n


def _l2_norm_combination(a: Combination, tol: float) -> BoundedValue:
    """Exact expansion ||sum c_i t_i||_2^2 = sum c_i conj(c_k) <t_i, t_k>."""
    coeff_mass = sum(abs(c) for c, _ in a.terms)
    entry_tol = tol / max(coeff_mass, 1.0)
    for _ in range(6):
        q_form = BoundedValue.exact(0.0)
        for ci, ti in a.terms:
            for ck, tk in a.terms:
                inner = _pair(ti, tk.conjugate(), entry_tol)
                q_form = q_form + inner * (ci * ck.conjugate())
        # the quadratic form is real; fold any stray imaginary part into the bound
        q_real = BoundedValue(q_form.estimate.real,
                              q_form.error_bound + abs(q_form.estimate.imag))
        nb = sqrt_of_nonneg(q_real)
        if nb.error_bound <= tol:
            return nb
        entry_tol *= 0.5 * min(tol / nb.error_bound, 0.5) ** 2
    raise ToleranceNotMet(f"l2 norm of combination did not certify to {tol}")


def lp_norm(a: SeqRep, p: float, tol: float) -> BoundedValue:
    """Certified lp norm of a representable sequence.

    FiniteSupport inputs are exact (error bound 0).  PowerLaw-style inputs
    sum j^(-Re(s) p) through N and add the integral of the tail, which
    brackets the dropped terms between consecutive integrals.  p = inf
    returns the supremum, exact except for generator combinations where a
    triangle-inequality upper bound is returned (flagged via error_bound,
    see _sup_norm).
    """
    p = _check_exponent(p)
    tol = _check_tol(tol)
    if not a.in_lp(p):
        raise NotInSpace(f"membership of {type(a).__name__} in l^{p} is not certifiable")
    a = a.simplify()
    if isinstance(a, Combination) and len(a.terms) == 1:
        coeff, term = a.terms[0]
        base = lp_norm(term, p, tol / abs(coeff))
        return BoundedValue(abs(coeff) * base.estimate.real,
                            abs(coeff) * base.error_bound)
    if math.isinf(p):
        return _sup_norm(a)
    if a.max_support() is not None:
        total = sum(abs(v) ** p for _, v in a.support_items())
        return BoundedValue.exact(total ** (1.0 / p))
    pt = a.as_power_tail()
    if pt is not None:
        s, start = pt
        t = s.real * p
        inner_tol = tol
        for _ in range(6):
            power_sum = zeta_tail(t, start, inner_tol)
            nb = root_of_nonneg(power_sum, p)
            if nb.error_bound <= tol:
                return nb
            inner_tol *= 0.5 * min(tol / nb.error_bound, 0.5)
        raise ToleranceNotMet(f"lp norm of power law did not certify to {tol}")
    if isinstance(a, Combination) and p == 2.0:
        return _l2_norm_combination(a, tol)
    return _norm_by_heads(a, p, tol)


def tail_norm_bound(a: SeqRep, p: float, n: int) -> float:
    """Certified upper bound on the lp norm of coordinates with index > n.

    This is the cheap bound used inside pairing loops (exact sums for finite
    support, the integral test for power laws, Minkowski for combinations);
    it is an upper bound for, not an evaluation of, the tail norm.
    """
    p = _check_exponent(p)
    if not isinstance(n, int) or n < 0:
        raise InvalidInput(f"tail index must be a nonnegative integer, got {n!r}")
    if not a.in_lp(p):
        raise NotInSpace(f"membership of {type(a).__name__} in l^{p} is not certifiable")
    return float(a.tail_bound(p, n))


def power_coordinates(x: SeqRep, d: int) -> FiniteSupport:
    """Coordinatewise d-th power of a finite-support sequence."""
    if not isinstance(d, int) or d < 1:
        raise InvalidInput(f"power must be an integer >= 1, got {d!r}")
    simplified = x.simplify()
    if not isinstance(simplified, FiniteSupport):
        raise UnsupportedRepresentation(
            "coordinate powers are only defined for finite-support sequences")
    return FiniteSupport(tuple((j, v ** d) for j, v in simplified.entries))


# ---------------------------------------------------------------------------
# pairings
# ---------------------------------------------------------------------------

def _pair(a: SeqRep, x: SeqRep, tol: float, p: float = 2.0, q: float = 2.0) -> BoundedValue:
    """Certified bilinear sum over j of a_j * x_j (no conjugation)."""
    if a.is_zero() or x.is_zero():
        return BoundedValue.exact(0.0)
    for left, right, swapped in ((a, x, False), (x, a, True)):
        if isinstance(left, Combination):
            n_terms = len(left.terms)
            total = BoundedValue.exact(0.0)
            for c, t in left.terms:
                inner_tol = tol / (n_terms * abs(c))
                sub = _pair(t, right, inner_tol, p if not swapped else q,
                            q if not swapped else p)
                total = total + sub * c
            return total
    ms_a, ms_x = a.max_support(), x.max_support()
    if ms_a is not None or ms_x is not None:
        if ms_a is not None and (ms_x is None or ms_a <= ms_x):
            finite, other = a, x
        else:
            finite, other = x, a
        total = sum((v * other.value_at(j) for j, v in finite.support_items()),
                    0.0 + 0.0j)
        return BoundedValue.exact(total)
    pa, px = a.as_power_tail(), x.as_power_tail()
    if pa is not None and px is not None:
        s = pa[0] + px[0]
        if s.real <= 1.0:
            raise NotInSpace(
                f"pairing of power laws with combined Re(s) = {s.real} <= 1 diverges")
        return zeta_tail(s, max(pa[1], px[1]), tol)
    # generic fallback: partial sums with a Hoelder bound on the tails
    total = 0.0 + 0.0j
    lo, n = 1, HEAD_START
    while True:
        total += _accumulate(
            lambda u, v: complex(np.sum(a.values_range(u, v) * x.values_range(u, v))),
            lo, n)
        tail = a.tail_bound(p, n) * x.tail_bound(q, n)
        if tail <= tol:
            return BoundedValue(total, tail)
        if n >= TERM_CAP:
            raise ToleranceNotMet(
                f"pairing tail bound {tail} still above {tol} at {n} terms",
                required_n=n)
        lo, n = n + 1, 2 * n


def holder_pairing(a: SeqRep, x: SeqRep, pair: ConjugatePair, tol: float) -> BoundedValue:
    """Certified sum over j of a_j * x_j for a in lp, x in lq.

    The truncation error after N terms is bounded by the product of the two
    tail norm bounds; pairings of two power laws reduce to a certified zeta
    evaluation of the combined exponent.
    """
    tol = _check_tol(tol)
    if not a.in_lp(pair.p):
        raise NotInSpace(f"left factor not certifiable in l^{pair.p}")
    if not x.in_lp(pair.q):
        raise NotInSpace(f"right factor not certifiable in l^{pair.q}")
    return _pair(a.simplify(), x.simplify(), tol, pair.p, pair.q)


def inner_l2(a: SeqRep, x: SeqRep, tol: float) -> BoundedValue:
    """Certified hermitian inner product sum over j of a_j * conj(x_j)."""
    tol = _check_tol(tol)
    if not a.in_lp(2.0) or not x.in_lp(2.0):
        raise NotInSpace("both factors must be certifiable in l^2")
    return _pair(a.simplify(), x.conjugate().simplify(), tol)
