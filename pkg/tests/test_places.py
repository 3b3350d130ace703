import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from numfunc.core import Poly, RationalFunction
from numfunc.places import (
    ArchimedeanQ,
    FinitePrimeQ,
    FunctionFieldInfinity,
    FunctionFieldPoint,
    RationalInfinity,
    RationalPoint,
    UndefinedValuationError,
    WorldMismatchError,
    norm,
    places_of,
    product_formula_check_q,
    sum_formula_check_ff,
    sum_formula_check_rational_coeff,
    val,
)

t = Poly.t()


def test_valuation_examples():
    assert val(Fraction(12, 5), FinitePrimeQ(2)).value == 2
    assert val(Fraction(12, 5), FinitePrimeQ(5)).value == -1
    assert val(7, FinitePrimeQ(3)).value == 0
    with pytest.raises(UndefinedValuationError):
        val(0, FinitePrimeQ(3))


def test_valuation_at_infinity_is_minus_degree():
    F = RationalFunction(t**3 + 1, t)
    assert val(F, RationalInfinity()).value == -2
    assert val(F, RationalPoint(0)).value == -1
    assert val(F, RationalPoint(-1)).value == 1


def test_function_field_point_residue_degree():
    P = Poly((1, 0, 1), 3)
    F = RationalFunction(P * P, Poly((0, 1), 3))
    r = val(F, FunctionFieldPoint(3, P))
    assert (r.value, r.residue_degree) == (2, 2)
    assert val(F, FunctionFieldInfinity(3)).value == -3


def test_world_mismatch():
    with pytest.raises(WorldMismatchError):
        val(RationalFunction(t), FinitePrimeQ(2))
    with pytest.raises(WorldMismatchError):
        val(RationalFunction(Poly((0, 1), 5)), FunctionFieldInfinity(3))


def test_norm_is_multiplicative_at_every_place():
    rng = random.Random(7)
    places = [FinitePrimeQ(2), FinitePrimeQ(3), FinitePrimeQ(101), ArchimedeanQ()]
    for _ in range(300):
        a = Fraction(rng.randint(1, 10**5) * rng.choice([1, -1]), rng.randint(1, 10**5))
        b = Fraction(rng.randint(1, 10**5), rng.randint(1, 10**5))
        for v in places:
            assert norm(a * b, v) == norm(a, v) * norm(b, v)


def test_ultrametric_inequality():
    rng = random.Random(8)
    for _ in range(300):
        a = Fraction(rng.randint(1, 10**4), rng.randint(1, 10**4))
        b = Fraction(rng.randint(-10**4, 10**4), rng.randint(1, 10**4))
        if a + b == 0 or b == 0:
            continue
        v = FinitePrimeQ(rng.choice([2, 3, 5]))
        assert val(a + b, v).value >= min(val(a, v).value, val(b, v).value)


def test_product_formula_fixed_cases():
    w = product_formula_check_q(Fraction(12, 5))
    assert w.holds and w.local == ((2, 2), (3, 1), (5, -1))
    assert w.finite_product == Fraction(5, 12)
    assert product_formula_check_q(-7).holds
    assert str(w.log_form) == str(product_formula_check_q(Fraction(12, 5)).log_form)


@settings(max_examples=200, deadline=None)
@given(st.integers(-10**6, 10**6).filter(bool), st.integers(1, 10**6))
def test_product_formula_property(n, d):
    assert product_formula_check_q(Fraction(n, d)).holds


def test_places_of():
    assert [str(v) for v in places_of(Fraction(12, 5))] == ["2", "3", "5", "inf"]


def test_sum_formula_examples():
    F = RationalFunction(Poly((1, 0, 1), 3), Poly((0, 1), 3))
    w = sum_formula_check_ff(F)
    assert w.holds and w.order_at_infinity == -1
    G = RationalFunction(t * t - 2, (t - 1) ** 3)
    w = sum_formula_check_rational_coeff(G)
    assert w.holds and w.order_at_infinity == 1
