import itertools
import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from ellq import (
    FiniteSupport,
    InvalidArity,
    InvalidInput,
    MultiplicativePolynomial,
    PowerLaw,
    TooLarge,
    UnsupportedRepresentation,
    enumerate_degree_tuples,
    eval_bruteforce,
    eval_product_form,
    holder_pairing,
    make_conjugate,
    membership_check,
    polynomial_from_json,
    power_coordinates,
)


def test_degree_tuples_worked_cases():
    assert enumerate_degree_tuples(3, 2) == [(1, 1), (1, 2), (2, 1)]
    assert enumerate_degree_tuples(3, 3) == [(1, 1, 1)]
    assert enumerate_degree_tuples(3, 1) == [(1,), (2,), (3,)]


def test_degree_tuples_total_count_d10():
    total = sum(len(enumerate_degree_tuples(10, k)) for k in range(1, 11))
    assert total == 2 ** 10 - 1


def test_degree_tuples_cardinality_and_order():
    for d_max in range(1, 13):
        union = []
        for k in range(1, d_max + 1):
            tuples = enumerate_degree_tuples(d_max, k)
            assert len(tuples) == math.comb(d_max, k)
            assert tuples == sorted(tuples)
            assert all(len(t) == k and min(t) >= 1 and sum(t) <= d_max for t in tuples)
            union.extend(tuples)
        assert len(set(union)) == 2 ** d_max - 1


def test_degree_tuples_arity_errors():
    with pytest.raises(InvalidArity):
        enumerate_degree_tuples(3, 0)
    with pytest.raises(InvalidArity):
        enumerate_degree_tuples(3, 4)


def _poly_d2():
    return MultiplicativePolynomial.from_coeff_map(2, 3.0, {
        1: FiniteSupport(((1, 1), (2, 1))),
        2: FiniteSupport(((1, 1),)),
    })


def test_worked_example_seven_product_form():
    x = FiniteSupport(((1, 1), (2, 1)))
    bv = eval_product_form(_poly_d2(), x, 1e-9)
    assert bv.estimate == pytest.approx(7.0, abs=1e-12)
    assert bv.error_bound == 0.0


def test_worked_example_seven_bruteforce():
    x = FiniteSupport(((1, 1), (2, 1)))
    assert eval_bruteforce(_poly_d2(), x) == pytest.approx(7.0, abs=1e-12)


def test_d3_all_ones_gives_seven():
    poly = MultiplicativePolynomial.from_coeff_map(3, 4.0, {
        d: FiniteSupport(((1, 1),)) for d in (1, 2, 3)})
    x = FiniteSupport(((1, 1),))
    assert eval_bruteforce(poly, x) == pytest.approx(7.0, abs=1e-12)
    assert eval_product_form(poly, x, 1e-9).estimate == pytest.approx(7.0, abs=1e-12)


def test_zero_point_and_zero_polynomial():
    zero = FiniteSupport(())
    assert eval_product_form(_poly_d2(), zero, 1e-9).estimate == 0.0
    empty = MultiplicativePolynomial.from_coeff_map(2, 3.0, {})
    assert eval_bruteforce(empty, FiniteSupport(((1, 2),))) == 0.0
    assert eval_product_form(empty, FiniteSupport(((1, 2),)), 1e-9).estimate == 0.0


def test_degree_one_reduces_to_pairing():
    a = PowerLaw(1.0)
    poly = MultiplicativePolynomial.from_coeff_map(1, 2.0, {1: a})
    x = FiniteSupport(((2, 6), (5, 1)))
    direct = holder_pairing(a, x, make_conjugate(2), 1e-10)
    via_poly = eval_product_form(poly, x, 1e-10)
    assert via_poly.estimate == pytest.approx(direct.estimate, abs=1e-12)


def test_bruteforce_guards():
    big = FiniteSupport(tuple((j, 1.0) for j in range(1, 40)))
    poly = MultiplicativePolynomial.from_coeff_map(4, 6.0, {
        d: FiniteSupport(((1, 1),)) for d in (1, 2, 3, 4)})
    with pytest.raises(TooLarge):
        eval_bruteforce(poly, big, cap=10 ** 4)
    with pytest.raises(UnsupportedRepresentation):
        eval_bruteforce(poly, PowerLaw(2.0))


def test_polynomial_validation():
    with pytest.raises(InvalidInput):
        MultiplicativePolynomial.from_coeff_map(3, 2.0, {})  # q <= D
    with pytest.raises(InvalidInput):
        MultiplicativePolynomial.from_coeff_map(0, 2.0, {})


def test_membership_check_cases():
    member = membership_check(
        MultiplicativePolynomial.from_coeff_map(1, 2.0, {1: PowerLaw(1.0)}))
    assert member.entries[0].certified and member.entries[0].exponent == 2.0
    assert member.entries[0].norm_bound is not None

    q3 = membership_check(
        MultiplicativePolynomial.from_coeff_map(2, 3.0, {2: PowerLaw(1.0)}))
    assert q3.entries[1].certified and q3.entries[1].exponent == pytest.approx(3.0)

    refuted = membership_check(
        MultiplicativePolynomial.from_coeff_map(1, 2.0, {1: PowerLaw(0.4)}))
    assert not refuted.entries[0].certified
    assert refuted.entries[0].norm_bound is None
    assert not refuted.all_certified


def test_membership_check_q_infinity_convention():
    poly = MultiplicativePolynomial.from_coeff_map(2, math.inf, {1: PowerLaw(1.5)})
    report = membership_check(poly)
    assert report.entries[0].exponent == 1.0
    assert report.entries[0].certified


def test_json_round_trip():
    poly = _poly_d2()
    back = polynomial_from_json(poly.to_json())
    assert back.degree_bound == 2 and back.q == 3.0
    x = FiniteSupport(((1, 1), (2, 1)))
    assert eval_bruteforce(back, x) == eval_bruteforce(poly, x)
    inf_poly = MultiplicativePolynomial.from_coeff_map(1, math.inf, {1: PowerLaw(2.0)})
    assert polynomial_from_json(inf_poly.to_json()).q == math.inf


def _random_poly(rng, complex_values):
    d_max = int(rng.integers(1, 5))
    q = d_max + 1.0 + float(rng.uniform(0, 3))
    coeffs = {}
    for d in range(1, d_max + 1):
        size = int(rng.integers(0, 4))
        idx = rng.choice(np.arange(1, 7), size=size, replace=False)
        vals = rng.uniform(-2, 2, size=size)
        if complex_values:
            vals = vals + 1j * rng.uniform(-2, 2, size=size)
        coeffs[d] = FiniteSupport(tuple((int(j), complex(v)) for j, v in zip(idx, vals)))
    size = int(rng.integers(1, 7))
    idx = rng.choice(np.arange(1, 7), size=size, replace=False)
    vals = rng.uniform(-1.5, 1.5, size=size)
    if complex_values:
        vals = vals + 1j * rng.uniform(-1.5, 1.5, size=size)
    x = FiniteSupport(tuple((int(j), complex(v)) for j, v in zip(idx, vals)))
    return MultiplicativePolynomial.from_coeff_map(d_max, q, coeffs), x


@pytest.mark.parametrize("complex_values", [False, True])
def test_product_form_matches_bruteforce(complex_values):
    rng = np.random.default_rng(11 if complex_values else 10)
    tol = 1e-9
    for _ in range(40):
        poly, x = _random_poly(rng, complex_values)
        brute = eval_bruteforce(poly, x)
        product = eval_product_form(poly, x, tol)
        assert abs(product.estimate - brute) <= 10 * tol


@settings(max_examples=25)
@given(st.integers(min_value=2, max_value=4), st.integers(min_value=0, max_value=10 ** 6))
def test_degree_truncation_consistency(d_max, seed):
    rng = np.random.default_rng(seed)
    coeffs = {d: FiniteSupport(tuple(
        (int(j), float(v)) for j, v in zip(range(1, 4), rng.uniform(-2, 2, 3))))
        for d in range(1, d_max + 1)}
    poly = MultiplicativePolynomial.from_coeff_map(d_max, d_max + 2.0, coeffs)
    truncated = MultiplicativePolynomial.from_coeff_map(
        d_max, d_max + 2.0, {d: coeffs[d] for d in range(1, d_max)})
    x = FiniteSupport(tuple((int(j), float(v)) for j, v in zip(range(1, 4), rng.uniform(-1, 1, 3))))
    full = eval_product_form(poly, x, 1e-10)
    cut = eval_product_form(truncated, x, 1e-10)
    # the only tuple containing degree d_max is the singleton (d_max,)
    top = holder_pairing(coeffs[d_max], power_coordinates(x, d_max),
                         poly.dual_pair(d_max), 1e-10)
    assert abs(full.estimate - cut.estimate - top.estimate) <= 1e-9
