"""Minimum-norm solutions, duality bounds, traces, and certificates.

Finite subsystems of an infinite linear system are solved for minimum
q-norm.  At q = 2 the solution lies in the span of the conjugated rows, so
the solve reduces to a hermitian positive semidefinite matrix of pairwise
row inner products.  The bilinear dual ratio |sum h_i b_i| / ||sum h_i a_i||_p
is a certified lower bound on the minimum norm of any solution, for every
dual vector h; at q = 2 the conjugated matrix solution attains it.

Conventions.  Constraints are bilinear sums (no conjugation inside the
pairing); conjugation enters only the inner-product matrix G_ik =
sum_j a_ij conj(a_kj), which is then hermitian PSD, and the reconstructed
point x = sum_k h_k conj(a_k).  Directions whose eigenvalue falls below
1e-10 times the largest are treated as null space; removing that declared
threshold trades silent blowup on nearly repeated rows for an explicit
rank decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounded import BoundedValue, sqrt_of_nonneg
from .errors import (
    CertifiedInfeasible,
    Infeasible,
    InvalidInput,
    NotConverged,
    NotInSpace,
    ToleranceNotMet,
    TooLarge,
    UndefinedRatio,
    UnsupportedNorm,
)
from .polynomials import MultiplicativePolynomial, eval_bruteforce, eval_product_form
from .sequences import (
    Combination,
    ConjugatePair,
    FiniteSupport,
    SeqRep,
    inner_l2,
    lp_norm,
    make_conjugate,
    seqrep_from_json,
)

RANK_REL_THRESHOLD = 1e-10


# ---------------------------------------------------------------------------
# system types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearSystem:
    """Rows (a_i, b_i) of constraints sum_j a_ij x_j = b_i over l^q."""

    pair: ConjugatePair
    rows: tuple[tuple[SeqRep, complex], ...]
    scalar_field: str = "complex"

    def __post_init__(self):
        if self.scalar_field not in ("real", "complex"):
            raise InvalidInput(f"field must be 'real' or 'complex', got {self.scalar_field!r}")
        if not self.rows:
            raise InvalidInput("a linear system needs at least one row")
        rows = tuple((a, complex(b)) for a, b in self.rows)
        object.__setattr__(self, "rows", rows)
        for i, (a, b) in enumerate(rows):
            if not isinstance(a, SeqRep):
                raise InvalidInput(f"row {i + 1} coefficient must be a sequence")
            if not a.in_lp(self.pair.p):
                raise NotInSpace(f"row {i + 1} not certifiable in l^{self.pair.p}")
            if self.scalar_field == "real" and (b.imag != 0.0 or not a.is_real()):
                raise InvalidInput(f"row {i + 1} is not real but the field tag is 'real'")

    def __len__(self) -> int:
        return len(self.rows)

    def prefix(self, r: int) -> "LinearSystem":
        if not (1 <= r <= len(self.rows)):
            raise InvalidInput(f"prefix length {r} outside 1..{len(self.rows)}")
        return LinearSystem(self.pair, self.rows[:r], self.scalar_field)

    def rhs(self) -> np.ndarray:
        return np.array([b for _, b in self.rows], dtype=np.complex128)

    def to_json(self) -> dict:
        enc = lambda v: "inf" if math.isinf(v) else v
        return {"field": self.scalar_field, "p": enc(self.pair.p), "q": enc(self.pair.q),
                "rows": [{"a": a.to_json(), "b": [b.real, b.imag]} for a, b in self.rows]}


def system_from_json(obj) -> LinearSystem:
    try:
        p = math.inf if obj["p"] == "inf" else float(obj["p"])
        q = math.inf if obj["q"] == "inf" else float(obj["q"])
        pair = make_conjugate(p)
        rows = tuple((seqrep_from_json(row["a"]), complex(row["b"][0], row["b"][1]))
                     for row in obj["rows"])
        field_tag = obj["field"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed system encoding: {exc}") from exc
    if not (math.isinf(q) and math.isinf(pair.q)) and abs(q - pair.q) > 1e-9 * max(q, 1.0):
        raise InvalidInput(f"q = {q} is not conjugate to p = {p}")
    return LinearSystem(pair, rows, field_tag)


@dataclass(frozen=True)
class PolynomialSystem:
    """Equations P_i(x) = b_i for multiplicative polynomials sharing one q."""

    equations: tuple[tuple[MultiplicativePolynomial, complex], ...]
    scalar_field: str = "complex"

    def __post_init__(self):
        if not self.equations:
            raise InvalidInput("a polynomial system needs at least one equation")
        qs = {poly.q for poly, _ in self.equations}
        if len(qs) != 1:
            raise InvalidInput(f"all equations must share one ambient exponent, got {qs}")
        eqs = tuple((poly, complex(b)) for poly, b in self.equations)
        object.__setattr__(self, "equations", eqs)

    @property
    def q(self) -> float:
        return self.equations[0][0].q


@dataclass(frozen=True)
class GramMatrix:
    """Certified pairwise row inner products G_ik = sum_j a_ij conj(a_kj)."""

    values: np.ndarray
    errors: np.ndarray

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalue spread; the conditioning report for the point set."""
        return np.linalg.eigvalsh(self.values)


@dataclass(frozen=True)
class MinNormResult:
    h: tuple[complex, ...]
    x: SeqRep
    norm: BoundedValue
    residuals: tuple[BoundedValue, ...]
    method: str
    surrogate: bool = False
    norm_at_double: BoundedValue | None = None
    gram_eigenvalues: tuple[float, ...] = ()


@dataclass(frozen=True)
class TraceEntry:
    r: int
    norm: BoundedValue | None
    lower_bound: float
    status: str
    message: str = ""


@dataclass(frozen=True)
class NormTrace:
    entries: tuple[TraceEntry, ...]

    @property
    def r_max(self) -> int:
        return self.entries[-1].r if self.entries else 0


@dataclass(frozen=True)
class Certificate:
    """Boundedness verdict for a norm trace.

    verdict 'bounded': every computed prefix minimum norm is certified <= the
    bound (closed inequality).  If that uniform bound persists over all
    finite subsystems, the infinite system has an exact solution of q-norm
    at most the bound; the trace is evidence for the hypothesis, never a
    proof of the supremum over all prefixes.  verdict 'divergence': some
    certified lower bound already exceeds the bound, so no uniform bound at
    this level exists.  Anything else is 'inconclusive'.
    """

    verdict: str
    bound: float | None
    r_max: int
    lower_bounds: tuple[float, ...] = ()
    notes: str = ""


# ---------------------------------------------------------------------------
# q = 2 solves
# ---------------------------------------------------------------------------

def gram_matrix(sys: LinearSystem, tol: float) -> GramMatrix:
    """Hermitian matrix of certified row inner products (q = 2 only)."""
    if sys.pair.q != 2.0:
        raise UnsupportedNorm(f"inner-product matrix needs q = 2, got q = {sys.pair.q}")
    if not (tol > 0.0):
        raise InvalidInput(f"tolerance must be positive, got {tol}")
    r = len(sys.rows)
    values = np.zeros((r, r), dtype=np.complex128)
    errors = np.zeros((r, r), dtype=np.float64)
    for i in range(r):
        for k in range(i, r):
            entry = inner_l2(sys.rows[i][0], sys.rows[k][0], tol)
            values[i, k] = entry.estimate
            errors[i, k] = entry.error_bound
            values[k, i] = entry.estimate.conjugate()
            errors[k, i] = entry.error_bound
        values[i, i] = values[i, i].real
    return GramMatrix(values, errors)


def _pinv_apply(gram: np.ndarray, rhs: np.ndarray,
                rel_threshold: float = RANK_REL_THRESHOLD) -> np.ndarray:
    """Pseudo-inverse solve with the declared eigenvalue threshold, plus
    two refinement passes to push the in-range residual to rounding level."""
    w, v = np.linalg.eigh(0.5 * (gram + gram.conj().T))
    wmax = max(float(w[-1]), 0.0)
    keep = w > rel_threshold * wmax if wmax > 0 else np.zeros_like(w, dtype=bool)
    inv_w = np.where(keep, 1.0 / np.where(keep, w, 1.0), 0.0)

    def apply(vec: np.ndarray) -> np.ndarray:
        return v @ (inv_w * (v.conj().T @ vec))

    h = apply(rhs)
    for _ in range(2):
        h = h + apply(rhs - gram @ h)
    return h


def min_norm_l2(sys: LinearSystem, tol: float) -> MinNormResult:
    """Minimum l2-norm solution of a finite subsystem.

    Solves G h = b for the dual coefficients and reconstructs
    x = sum_k h_k conj(a_k), which spans every minimum-norm solution.
    Rank-deficient consistent systems take the minimum-norm h.  The matrix
    entry tolerance is tightened until the residual certification
    sum_k |h_k| * entry_error meets the requested tolerance.
    """
    if sys.pair.q != 2.0:
        raise UnsupportedNorm(f"exact minimum-norm solve needs q = 2, got {sys.pair.q}")
    tol = float(tol)
    if not (tol > 0.0):
        raise InvalidInput(f"tolerance must be positive, got {tol}")
    r = len(sys.rows)
    b = sys.rhs()
    entry_tol = tol / (8.0 * r)
    for _ in range(4):
        gm = gram_matrix(sys, entry_tol)
        h = _pinv_apply(gm.values, b)
        ls_residual = float(np.linalg.norm(gm.values @ h - b))
        if ls_residual > math.sqrt(tol):
            raise Infeasible(
                f"right-hand side misses the row span: least-squares residual "
                f"{ls_residual:.3e} > sqrt(tol) = {math.sqrt(tol):.3e}",
                residual=ls_residual)
        needed = tol / (4.0 * max(float(np.abs(h).sum()), 1.0))
        if float(gm.errors.max()) <= needed:
            break
        entry_tol = 0.5 * needed
    res_est = gm.values @ h - b
    res_err = gm.errors @ np.abs(h)
    if any(abs(res_est[i]) > 0.5 * tol for i in range(r)):
        raise Infeasible(
            f"residuals stall at {float(np.abs(res_est).max()):.3e}, above tol/2",
            residual=ls_residual)
    if any(abs(res_est[i]) + res_err[i] > tol for i in range(r)):
        raise ToleranceNotMet(
            f"residual certification stuck at {float(np.abs(res_est) + res_err).max():.3e}")
    residuals = tuple(BoundedValue(complex(res_est[i]), float(res_err[i]))
                      for i in range(r))
    q_est = float(np.real(np.conj(h) @ (gm.values @ h)))
    q_err = float(np.abs(h) @ gm.errors @ np.abs(h))
    norm = sqrt_of_nonneg(BoundedValue(q_est, q_err))
    x = Combination(tuple(
        (complex(h[k]), sys.rows[k][0].conjugate()) for k in range(r))).simplify()
    return MinNormResult(
        h=tuple(complex(v) for v in h), x=x, norm=norm, residuals=residuals,
        method="gram_exact",
        gram_eigenvalues=tuple(float(w) for w in gm.eigenvalues()))


# ---------------------------------------------------------------------------
# dual ratio and its supremum
# ---------------------------------------------------------------------------

def riesz_ratio(sys: LinearSystem, h, tol: float) -> BoundedValue:
    """Certified |sum h_i b_i| / ||sum h_i a_i||_p.

    Every value of this ratio is a lower bound on the minimum q-norm of any
    solution of the subsystem.  A dual vector that annihilates the rows but
    pairs to a nonzero right-hand side certifies that no solution exists at
    any norm.
    """
    tol = float(tol)
    if not (tol > 0.0):
        raise InvalidInput(f"tolerance must be positive, got {tol}")
    h = [complex(v) for v in h]
    if len(h) != len(sys.rows):
        raise InvalidInput(f"need one dual coefficient per row, got {len(h)}")
    numerator = abs(sum(hi * b for hi, (_, b) in zip(h, sys.rows)))
    combo = Combination(tuple((hi, a) for hi, (a, _) in zip(h, sys.rows))).simplify()
    if combo.is_zero():
        if numerator > 0.0:
            raise CertifiedInfeasible(
                f"dual vector annihilates every row yet pairs to {numerator:.6g}; "
                "no solution exists at any norm")
        raise UndefinedRatio("dual combination and its pairing both vanish (0/0)")
    p = sys.pair.p
    den_tol = tol
    for _ in range(6):
        den = lp_norm(combo, p, den_tol)
        lo = den.abs_lower()
        if lo > 0.0:
            hi = den.abs_upper()
            est = numerator / den.estimate.real if den.estimate.real > 0 else numerator / hi
            err = max(numerator / lo - est, est - numerator / hi)
            if err <= tol or numerator == 0.0:
                return BoundedValue(est, err)
            den_tol *= 0.5 * min(tol / err, 0.5)
        else:
            den_tol *= 0.1
    raise UndefinedRatio(
        f"denominator is not certifiably positive at tolerance {den_tol:.3e}")


def riesz_sup_search(sys: LinearSystem, iterations: int, tol: float,
                     seed: int = 0) -> float:
    """Best certified lower bound on the minimum solution norm found by
    random restarts plus coordinate ascent over the dual vector.

    Every evaluation is a certified ratio, so the returned value is always a
    valid lower bound regardless of how far the ascent got.  Deterministic
    for a fixed seed.
    """
    r = len(sys.rows)
    rng = np.random.default_rng(seed)
    complex_field = sys.scalar_field == "complex"
    best = 0.0

    def evaluate(h: np.ndarray) -> float | None:
        nonlocal best
        try:
            bv = riesz_ratio(sys, list(h), tol)
        except (UndefinedRatio, ToleranceNotMet, NotInSpace):
            return None
        lower = bv.estimate.real - bv.error_bound
        best = max(best, lower)
        return lower

    def ascend(h: np.ndarray) -> None:
        value = evaluate(h)
        if value is None:
            return
        steps = (-3.0, -1.0, -0.3, -0.03, 0.03, 0.3, 1.0, 3.0)
        for _ in range(2):
            for i in range(r):
                scale = max(1.0, abs(h[i]))
                directions = [1.0] + ([1.0j] if complex_field else [])
                for direction in directions:
                    for step in steps:
                        trial = h.copy()
                        trial[i] = trial[i] + direction * step * scale
                        trial_value = evaluate(trial)
                        if trial_value is not None and trial_value > value:
                            h, value = trial, trial_value

    starts = [np.eye(r, dtype=np.complex128)[i] for i in range(r)]
    if sys.pair.q == 2.0:
        try:
            gram_h = np.array(min_norm_l2(sys, tol).h, dtype=np.complex128)
            starts.append(np.conj(gram_h))
        except (Infeasible, ToleranceNotMet, UnsupportedNorm):
            pass
    for _ in range(max(int(iterations), 0)):
        h = rng.standard_normal(r) + (1j * rng.standard_normal(r) if complex_field else 0.0)
        starts.append(h.astype(np.complex128))
    for h in starts:
        ascend(h)
    return float(best)


# ---------------------------------------------------------------------------
# general q via truncation
# ---------------------------------------------------------------------------

def _truncated_min_norm(matrix: np.ndarray, b: np.ndarray, q: float, tol: float,
                        iter_cap: int) -> tuple[np.ndarray, np.ndarray]:
    """Minimum lq norm over the truncated coordinates, by iteratively
    reweighted least squares (damped by 1/(q-1) for q > 2).  Returns the
    point and the dual coefficients of the final weighted solve."""
    gram = matrix @ matrix.conj().T
    mu = _pinv_apply(gram, b)
    x = matrix.conj().T @ mu
    ls_residual = float(np.linalg.norm(matrix @ x - b))
    if ls_residual > math.sqrt(tol) * (1.0 + float(np.linalg.norm(b))):
        raise Infeasible(
            f"truncated system inconsistent: least-squares residual {ls_residual:.3e}",
            residual=ls_residual)
    if q == 2.0:
        return x, mu
    damp = 1.0 / (q - 1.0) if q > 2.0 else 1.0
    scale = max(float(np.abs(x).max()), 1e-30)
    eps = max(1e-3 * scale, 1e-10)
    for _ in range(int(iter_cap)):
        weights = (np.abs(x) ** 2 + eps ** 2) ** ((q - 2.0) / 2.0)
        inv_w = 1.0 / weights
        mid = (matrix * inv_w) @ matrix.conj().T
        mu = _pinv_apply(mid, b)
        x_new = inv_w * (matrix.conj().T @ mu)
        step = float(np.abs(x_new - x).max())
        x = x + damp * (x_new - x)
        scale = max(float(np.abs(x).max()), 1e-30)
        if step < 1e-4 * scale:
            eps *= 0.1
            if eps < 1e-13 * scale:
                break
    else:
        raise NotConverged(f"reweighting stalled after {iter_cap} iterations")
    # exact-constraint polish: project back onto the affine solution set
    x = x + matrix.conj().T @ _pinv_apply(gram, b - matrix @ x)
    return x, mu


def min_norm_truncated_q(sys: LinearSystem, n: int, tol: float,
                         iter_cap: int = 500) -> MinNormResult:
    """Minimum lq norm over coordinates 1..n, with a value at 2n attached.

    The finite-dimensional surrogate for 1 < q < infinity: any returned
    point is a genuine solution of the (truncated-row) constraints, and the
    value at 2n lets callers judge truncation convergence.  The result is
    flagged as a surrogate whenever some row extends beyond 1..n.
    """
    q = sys.pair.q
    if not (1.0 < q < math.inf):
        raise UnsupportedNorm(f"truncated solve needs 1 < q < inf, got {q}")
    if not isinstance(n, int) or n < 1:
        raise InvalidInput(f"coordinate cutoff must be an integer >= 1, got {n!r}")
    tol = float(tol)
    if not (tol > 0.0):
        raise InvalidInput(f"tolerance must be positive, got {tol}")
    b = sys.rhs()

    def solve_at(cut: int) -> tuple[np.ndarray, np.ndarray, BoundedValue]:
        matrix = np.vstack([a.values(cut) for a, _ in sys.rows])
        x, mu = _truncated_min_norm(matrix, b, q, tol, iter_cap)
        norm = BoundedValue.exact(float(np.sum(np.abs(x) ** q)) ** (1.0 / q))
        return x, mu, norm

    x_vec, mu, norm = solve_at(n)
    _, _, norm_double = solve_at(2 * n)
    x = FiniteSupport(tuple((j + 1, complex(v)) for j, v in enumerate(x_vec) if v != 0))
    res_est = np.array([sum(a.value_at(j) * v for j, v in x.entries) - bi
                        for a, bi in sys.rows], dtype=np.complex128)
    if float(np.abs(res_est).max()) > tol:
        raise NotConverged(
            f"constraint residual {float(np.abs(res_est).max()):.3e} above {tol}")
    residuals = tuple(BoundedValue(complex(v), 0.0) for v in res_est)
    surrogate = any(a.max_support() is None or a.max_support() > n for a, _ in sys.rows)
    return MinNormResult(
        h=tuple(complex(v) for v in mu), x=x, norm=norm, residuals=residuals,
        method="truncated_irls", surrogate=surrogate, norm_at_double=norm_double)


# ---------------------------------------------------------------------------
# traces and certificates
# ---------------------------------------------------------------------------

def _certified_lower_bound(sub: LinearSystem, result: MinNormResult | None,
                           tol: float) -> float:
    """Best certified dual lower bound from the conjugated solve vector and
    the canonical basis vectors."""
    r = len(sub.rows)
    candidates: list[list[complex]] = []
    if result is not None:
        candidates.append([complex(v).conjugate() for v in result.h])
    for i in range(r):
        unit = [0.0 + 0.0j] * r
        unit[i] = 1.0 + 0.0j
        candidates.append(unit)
    best = 0.0
    for h in candidates:
        try:
            bv = riesz_ratio(sub, h, tol)
        except (UndefinedRatio, ToleranceNotMet, NotInSpace):
            continue
        best = max(best, bv.estimate.real - bv.error_bound)
    return best


def norm_trace(sys: LinearSystem, r_max: int, tol: float,
               truncation_n: int | None = None, iter_cap: int = 500) -> NormTrace:
    """Minimum norms m_r of the nested prefixes r = 1..r_max.

    Exact mode needs q = 2; other exponents run the truncated solver and
    require truncation_n.  Prefixes that fail stay in the trace as marked
    entries rather than aborting the sweep.
    """
    if not isinstance(r_max, int) or not (1 <= r_max <= len(sys.rows)):
        raise InvalidInput(f"r_max must lie in 1..{len(sys.rows)}, got {r_max!r}")
    exact = sys.pair.q == 2.0
    if not exact and truncation_n is None:
        raise UnsupportedNorm("trace needs q = 2 or an explicit truncation cutoff")
    entries = []
    for r in range(1, r_max + 1):
        sub = sys.prefix(r)
        try:
            if exact:
                result = min_norm_l2(sub, tol)
            else:
                result = min_norm_truncated_q(sub, truncation_n, tol, iter_cap)
            lower = _certified_lower_bound(sub, result, tol)
            entries.append(TraceEntry(r, result.norm, lower, "ok"))
        except Infeasible as exc:
            entries.append(TraceEntry(r, None, 0.0, "infeasible", str(exc)))
        except (ToleranceNotMet, NotConverged) as exc:
            entries.append(TraceEntry(r, None, 0.0, "error", str(exc)))
    return NormTrace(tuple(entries))


def certify(trace: NormTrace, bound: float) -> Certificate:
    """Boundedness verdict for a computed trace at the level ``bound``.

    'bounded' when every computed prefix norm is certified <= bound (closed
    inequality, so a trace touching the bound exactly still passes);
    'divergence' when some certified lower bound exceeds it; otherwise
    'inconclusive'.
    """
    bound = float(bound)
    if not (bound > 0.0):
        raise InvalidInput(f"bound must be positive, got {bound}")
    entries = trace.entries
    ok = [e for e in entries if e.status == "ok"]
    lowers = tuple(e.lower_bound for e in ok)
    r_max = trace.r_max
    if len(ok) == len(entries) and ok and all(
            e.norm.estimate.real + e.norm.error_bound <= bound for e in ok):
        notes = (
            f"every computed prefix (r <= {r_max}) admits a solution with q-norm "
            f"certified <= {bound}; if this uniform bound persists over all finite "
            f"subsystems, the infinite system has an exact solution with q-norm <= {bound}. "
            "The certificate covers the computed prefixes only, not the supremum over all r.")
        return Certificate("bounded", bound, r_max, lowers, notes)
    exceeders = [(e.r, e.lower_bound) for e in ok if e.lower_bound > bound]
    if exceeders:
        first_r, first_lower = exceeders[0]
        notes = (
            f"prefix r = {first_r} already forces every solution to have q-norm "
            f">= {first_lower:.6g} > {bound}, so no uniform bound at level {bound} exists "
            "and bounded-solvability reasoning cannot apply at this level.")
        return Certificate("divergence", bound, r_max, lowers, notes)
    notes = "trace neither certifies the bound nor certifies growth beyond it"
    if any(e.status != "ok" for e in entries):
        bad = ", ".join(f"r={e.r}:{e.status}" for e in entries if e.status != "ok")
        notes += f" (uncomputed prefixes: {bad})"
    return Certificate("inconclusive", bound, r_max, lowers, notes)


# ---------------------------------------------------------------------------
# boxed feasibility search
# ---------------------------------------------------------------------------

def _box_project(x: np.ndarray, box: np.ndarray, complex_field: bool) -> np.ndarray:
    if complex_field:
        mags = np.abs(x)
        with np.errstate(invalid="ignore", divide="ignore"):
            scale = np.where(mags > box, np.where(mags > 0, box / np.where(mags > 0, mags, 1.0), 0.0), 1.0)
        return x * scale
    return np.clip(x.real, -box, box).astype(np.complex128)


def feasibility_search_boxed(system: LinearSystem | PolynomialSystem,
                             box_seq: SeqRep, eps: float, n: int,
                             iter_cap: int = 400, seed: int = 0,
                             restarts: int = 16) -> FiniteSupport | None:
    """Search for a point with all residuals <= eps inside the box |x_j| <= m_j.

    Projected descent on the squared residual sum from the box center plus
    random restarts, over coordinates 1..n.  Success returns a witness whose
    residuals are re-verified with exact or certified evaluation; returning
    None means the search failed, which is NOT evidence of infeasibility.
    """
    eps = float(eps)
    if not (eps > 0.0):
        raise InvalidInput(f"residual tolerance must be positive, got {eps}")
    if not isinstance(n, int) or n < 1:
        raise InvalidInput(f"coordinate cutoff must be an integer >= 1, got {n!r}")
    box = np.empty(n, dtype=np.float64)
    for j in range(1, n + 1):
        mj = box_seq.value_at(j)
        if mj.imag != 0.0 or mj.real < 0.0:
            raise InvalidInput(f"box entry m_{j} = {mj} is not a nonnegative real")
        box[j - 1] = mj.real
    if isinstance(system, LinearSystem):
        ambient_q = system.pair.q
    else:
        ambient_q = system.q
    if not box_seq.in_lp(ambient_q):
        raise NotInSpace(f"box sequence not certifiable in l^{ambient_q}")
    complex_field = system.scalar_field == "complex"

    if isinstance(system, LinearSystem):
        matrix = np.vstack([a.values(n) for a, _ in system.rows])
        b = system.rhs()

        def residuals(x: np.ndarray) -> np.ndarray:
            return matrix @ x - b

        def gradient(x: np.ndarray) -> np.ndarray:
            # dF/du_j + i dF/dv_j of sum |res_i|^2 packs into 2 (A^H res)_j
            return 2.0 * (matrix.conj().T @ residuals(x))
    else:
        def residuals(x: np.ndarray) -> np.ndarray:
            point = FiniteSupport(tuple((j + 1, complex(v)) for j, v in enumerate(x) if v != 0))
            out = np.empty(len(system.equations), dtype=np.complex128)
            for i, (poly, bi) in enumerate(system.equations):
                try:
                    out[i] = eval_bruteforce(poly, point) - bi
                except TooLarge:
                    out[i] = eval_product_form(poly, point, eps / 16.0).estimate - bi
            return out

        def gradient(x: np.ndarray) -> np.ndarray:
            # finite differences of the squared-residual objective; the
            # complex field needs both the real and imaginary directions
            grad = np.zeros(n, dtype=np.complex128)
            base = float(np.sum(np.abs(residuals(x)) ** 2))
            for j in range(n):
                step = 1e-6 * max(1.0, abs(x[j]))
                bumped = x.copy()
                bumped[j] += step
                grad[j] = (float(np.sum(np.abs(residuals(bumped)) ** 2)) - base) / step
                if complex_field:
                    bumped = x.copy()
                    bumped[j] += 1j * step
                    grad[j] += 1j * (
                        float(np.sum(np.abs(residuals(bumped)) ** 2)) - base) / step
            return grad

    def objective(x: np.ndarray) -> float:
        return float(np.sum(np.abs(residuals(x)) ** 2))

    rng = np.random.default_rng(seed)
    starts = [np.zeros(n, dtype=np.complex128)]
    for _ in range(max(int(restarts) - 1, 0)):
        draw = rng.uniform(-box, box)
        if complex_field:
            draw = draw + 1j * rng.uniform(-box, box)
        starts.append(draw.astype(np.complex128))

    for start in starts:
        x = _box_project(start, box, complex_field)
        value = objective(x)
        for _ in range(int(iter_cap)):
            if value <= (0.25 * eps) ** 2:
                break
            grad = gradient(x)
            grad_scale = float(np.abs(grad).max())
            if grad_scale == 0.0:
                break
            alpha = min(1.0, 1.0 / grad_scale)
            improved = False
            for _ in range(40):
                trial = _box_project(x - alpha * grad, box, complex_field)
                trial_value = objective(trial)
                if trial_value < value * (1.0 - 1e-12):
                    x, value, improved = trial, trial_value, True
                    break
                alpha *= 0.5
            if not improved:
                break
        witness = FiniteSupport(tuple((j + 1, complex(v)) for j, v in enumerate(x) if v != 0))
        if _witness_certified(system, witness, eps):
            return witness
    return None


def _witness_certified(system: LinearSystem | PolynomialSystem,
                       witness: FiniteSupport, eps: float) -> bool:
    if isinstance(system, LinearSystem):
        for a, b in system.rows:
            res = sum(a.value_at(j) * v for j, v in witness.entries) - b
            if abs(res) > eps:
                return False
        return True
    for poly, b in system.equations:
        try:
            value = BoundedValue.exact(eval_bruteforce(poly, witness))
        except TooLarge:
            value = eval_product_form(poly, witness, eps / 16.0)
        if abs(value.estimate - b) + value.error_bound > eps:
            return False
    return True
