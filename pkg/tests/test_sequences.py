import math

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from ellq import (
    Combination,
    ConjugatePair,
    FiniteSupport,
    InvalidExponent,
    InvalidInput,
    NotInSpace,
    PowerLaw,
    TailRestriction,
    ToleranceNotMet,
    UnsupportedRepresentation,
    holder_pairing,
    lp_norm,
    make_conjugate,
    power_coordinates,
    seqrep_from_json,
    tail_norm_bound,
)
from strategies import finite_supports, power_laws, scalars, seq_reps

PAIR2 = make_conjugate(2)

# independent reference values: pi^2/6 and its square root
ZETA2 = math.pi ** 2 / 6
SQRT_ZETA2 = math.sqrt(ZETA2)


# ---------------------------------------------------------------------------
# conjugate pairs
# ---------------------------------------------------------------------------

def test_conjugate_selfdual_point():
    pair = make_conjugate(2)
    assert pair.p == 2.0 and pair.q == 2.0


def test_conjugate_one_infinity():
    assert make_conjugate(1).q == math.inf
    assert make_conjugate(math.inf).q == 1.0


def test_conjugate_four_thirds():
    pair = make_conjugate(4)
    assert pair.q == pytest.approx(4.0 / 3.0, abs=0)
    assert 1.0 / pair.p + 1.0 / pair.q == pytest.approx(1.0, abs=1e-15)


def test_conjugate_rejects_small_exponent():
    with pytest.raises(InvalidExponent):
        make_conjugate(0.5)
    with pytest.raises(InvalidExponent):
        ConjugatePair(0.0)


@given(st.floats(min_value=1.0 + 1e-9, max_value=50.0))
def test_conjugate_identity(p):
    pair = make_conjugate(p)
    assert 1.0 / pair.p + 1.0 / pair.q == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------------------------
# lp norms
# ---------------------------------------------------------------------------

def test_norm_three_four_five():
    nb = lp_norm(FiniteSupport(((1, 3), (4, -4))), 2, 1e-12)
    assert nb.estimate == 5.0
    assert nb.error_bound == 0.0


def test_norm_power_law_sqrt_zeta2():
    nb = lp_norm(PowerLaw(1.0), 2, 1e-6)
    assert nb.error_bound <= 1e-6
    assert abs(nb.estimate.real - SQRT_ZETA2) <= nb.error_bound + 1e-12


def test_norm_tail_restriction_l1():
    rep = TailRestriction(FiniteSupport(((1, 1), (2, 1))), 2)
    nb = lp_norm(rep, 1, 1e-12)
    assert nb.estimate == 1.0 and nb.error_bound == 0.0


def test_norm_sup_cases():
    assert lp_norm(FiniteSupport(((1, 3), (4, -4))), math.inf, 1e-9).estimate == 4.0
    assert lp_norm(PowerLaw(0.7), math.inf, 1e-9).estimate == 1.0
    assert lp_norm(TailRestriction(PowerLaw(0.5), 4), math.inf, 1e-9).estimate == pytest.approx(4.0 ** -0.5)


def test_norm_sup_combination_is_flagged_upper_bound():
    combo = Combination(((1.0, PowerLaw(1.0)), (1.0, PowerLaw(2.0))))
    nb = lp_norm(combo, math.inf, 1e-9)
    # estimate is the triangle-inequality bound, error bound equals it
    assert nb.estimate.real == pytest.approx(2.0)
    assert nb.error_bound == pytest.approx(nb.estimate.real)


def test_norm_membership_not_certifiable():
    with pytest.raises(NotInSpace):
        lp_norm(PowerLaw(0.4), 2, 1e-6)
    with pytest.raises(NotInSpace):
        lp_norm(PowerLaw(-0.2), math.inf, 1e-6)


def test_norm_tolerance_cap():
    with pytest.raises(ToleranceNotMet):
        lp_norm(PowerLaw(0.51), 2, 1e-12)


def test_norm_combination_collapses_to_exact():
    combo = Combination(((2.0, FiniteSupport(((1, 1),))), (1.0, FiniteSupport(((1, 1), (2, 2))))))
    nb = lp_norm(combo, 2, 1e-12)
    assert nb.error_bound == 0.0
    assert nb.estimate.real == pytest.approx(math.sqrt(9 + 4))


def test_norm_cancelling_combination_is_zero():
    combo = Combination(((1.0, PowerLaw(1.5)), (-1.0, PowerLaw(1.5))))
    nb = lp_norm(combo, 2, 1e-9)
    assert nb.estimate == 0.0 and nb.error_bound == 0.0


def test_nested_combinations_flatten_and_evaluate():
    inner = Combination(((2.0, FiniteSupport(((1, 1),))),))
    nested = inner
    for _ in range(6):
        nested = Combination(((1.0, nested), (0.5, FiniteSupport(((2, 1),)))))
    # value at 1 stays 2 regardless of nesting depth; the flattener keeps
    # pairing cost proportional to the leaf count
    assert nested.value_at(1) == 2.0
    assert nested.value_at(2) == pytest.approx(0.5 * 6)
    nb = lp_norm(nested, 2, 1e-12)
    assert nb.error_bound == 0.0
    assert nb.estimate.real == pytest.approx(math.sqrt(4.0 + 9.0))


# ---------------------------------------------------------------------------
# pairings
# ---------------------------------------------------------------------------

def test_pairing_single_coordinate():
    bv = holder_pairing(FiniteSupport(((1, 2),)), FiniteSupport(((1, 7),)), PAIR2, 1e-12)
    assert bv.estimate == 14.0 and bv.error_bound == 0.0


def test_pairing_power_laws_gives_zeta2():
    bv = holder_pairing(PowerLaw(1.0), PowerLaw(1.0), PAIR2, 1e-6)
    assert bv.error_bound <= 1e-6
    assert abs(bv.estimate.real - ZETA2) <= bv.error_bound + 1e-12


def test_pairing_power_law_with_sparse():
    bv = holder_pairing(PowerLaw(1.0), FiniteSupport(((2, 6),)), PAIR2, 1e-12)
    assert bv.estimate == 3.0 and bv.error_bound == 0.0


def test_pairing_membership_errors():
    with pytest.raises(NotInSpace):
        holder_pairing(PowerLaw(0.3), FiniteSupport(((1, 1),)), PAIR2, 1e-6)
    with pytest.raises(NotInSpace):
        holder_pairing(FiniteSupport(((1, 1),)), PowerLaw(0.3), PAIR2, 1e-6)


def test_pairing_one_infinity_pair():
    pair = make_conjugate(1)
    bv = holder_pairing(PowerLaw(1.5), PowerLaw(0.25), pair, 1e-8)
    assert bv.error_bound <= 1e-8
    # sum j^(-1.75): between 1 and zeta(1.75); spot value via coarse bound
    assert 1.0 < bv.estimate.real < 3.0


# ---------------------------------------------------------------------------
# tail bounds
# ---------------------------------------------------------------------------

def test_tail_bound_exhausted_support():
    assert tail_norm_bound(FiniteSupport(((1, 9),)), 2, 1) == 0.0


def test_tail_bound_power_law_integral_test():
    bound = tail_norm_bound(PowerLaw(1.0), 2, 10)
    assert bound == pytest.approx(math.sqrt(0.1))
    # valid upper bound on the actual tail norm
    actual = math.sqrt(sum(j ** -2.0 for j in range(11, 200000)))
    assert bound >= actual


def test_tail_bound_tail_restriction_covers_whole_norm():
    rep = TailRestriction(PowerLaw(1.0), 5)
    bound = tail_norm_bound(rep, 2, 4)
    # indices > 4 cover the entire support, so the bound dominates the norm
    assert bound == tail_norm_bound(PowerLaw(1.0), 2, 4)
    whole = lp_norm(rep, 2, 1e-9)
    assert bound >= whole.estimate.real - whole.error_bound


@given(power_laws(min_sigma=0.9, real_only=True), st.integers(min_value=1, max_value=12))
def test_tail_bound_decreases_to_zero(pl, k):
    bounds = [pl.tail_bound(2.0, 2 ** i) for i in range(k, k + 6)]
    assert all(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:]))
    assert pl.tail_bound(2.0, 2 ** 40) < 1e-3 * pl.tail_bound(2.0, 1)


# ---------------------------------------------------------------------------
# coordinate powers
# ---------------------------------------------------------------------------

def test_power_coordinates_square():
    out = power_coordinates(FiniteSupport(((1, 2), (3, -1))), 2)
    assert out.entries == ((1, 4.0 + 0j), (3, 1.0 + 0j))


def test_power_coordinates_fixed_point():
    out = power_coordinates(FiniteSupport(((5, 1),)), 7)
    assert out.entries == ((5, 1.0 + 0j),)


def test_power_coordinates_complex_square():
    out = power_coordinates(FiniteSupport(((1, 1 + 1j),)), 2)
    assert out.entries == ((1, 2j),)


def test_power_coordinates_rejects_generators():
    with pytest.raises(UnsupportedRepresentation):
        power_coordinates(PowerLaw(1.0), 2)
    with pytest.raises(InvalidInput):
        power_coordinates(FiniteSupport(((1, 1),)), 0)


# ---------------------------------------------------------------------------
# wire format
# ---------------------------------------------------------------------------

@given(seq_reps())
def test_json_round_trip_preserves_values(rep):
    back = seqrep_from_json(rep.to_json())
    for j in (1, 2, 3, 7, 20):
        assert back.value_at(j) == pytest.approx(rep.value_at(j), abs=1e-12)


def test_json_rejects_garbage():
    with pytest.raises(InvalidInput):
        seqrep_from_json({"kind": "mystery"})
    with pytest.raises(InvalidInput):
        seqrep_from_json({"entries": []})
    with pytest.raises(InvalidInput):
        seqrep_from_json({"kind": "sparse", "entries": [[0, 1.0, 0.0]]})


# ---------------------------------------------------------------------------
# certified-analysis properties
# ---------------------------------------------------------------------------

@given(seq_reps(min_sigma=0.55), seq_reps(min_sigma=0.55))
def test_holder_inequality_l2(a, x):
    tol = 1e-4
    pairing = holder_pairing(a, x, PAIR2, tol)
    na = lp_norm(a, 2, tol)
    nx = lp_norm(x, 2, tol)
    lhs = abs(pairing.estimate) - pairing.error_bound
    rhs = na.abs_upper() * nx.abs_upper()
    assert lhs <= rhs + 1e-9


@given(finite_supports(), power_laws(min_sigma=1.1),
       st.floats(min_value=1.2, max_value=4.0))
def test_holder_inequality_general_exponent(fs, pl, p):
    pair = make_conjugate(p)
    if not pl.in_lp(pair.q):
        return
    tol = 1e-4
    pairing = holder_pairing(fs, pl, pair, tol)
    na = lp_norm(fs, pair.p, tol)
    nx = lp_norm(pl, pair.q, tol)
    assert abs(pairing.estimate) - pairing.error_bound <= na.abs_upper() * nx.abs_upper() + 1e-9


@given(scalars(), scalars(), finite_supports(), power_laws(min_sigma=1.0),
       seq_reps(min_sigma=0.8))
def test_pairing_bilinearity(alpha, beta, a1, a2, x):
    tol = 1e-6
    combo = Combination(((alpha, a1), (beta, a2)))
    left = holder_pairing(combo, x, PAIR2, tol)
    right = (alpha * holder_pairing(a1, x, PAIR2, tol).estimate
             + beta * holder_pairing(a2, x, PAIR2, tol).estimate)
    budget = left.error_bound + (abs(alpha) + abs(beta)) * tol + 1e-9
    assert abs(left.estimate - right) <= budget


@given(power_laws(min_sigma=0.8, real_only=True), st.integers(min_value=2, max_value=10))
def test_norm_dominates_partial_sums(pl, n):
    nb = lp_norm(pl, 2, 1e-8)
    partial = sum(abs(pl.value_at(j)) ** 2 for j in range(1, n + 1))
    assert nb.abs_upper() ** 2 >= partial - 1e-12


@given(seq_reps(min_sigma=0.8))
def test_shrinking_tolerance_consistency(a):
    loose = lp_norm(a, 2, 1e-3)
    tight = lp_norm(a, 2, 1e-5)
    assert abs(loose.estimate - tight.estimate) <= 1e-3 + 1e-5


@settings(max_examples=20)
@given(seq_reps(min_sigma=0.75), seq_reps(min_sigma=0.75))
def test_pairing_shrinking_tolerance(a, x):
    loose = holder_pairing(a, x, PAIR2, 1e-3)
    tight = holder_pairing(a, x, PAIR2, 1e-5)
    assert abs(loose.estimate - tight.estimate) <= 1e-3 + 1e-5
