import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from numfunc.core import INFINITY, ArithmeticDomainError, Poly, RationalFunction
from numfunc.arakelov import (
    GREEN_CONSTANT,
    ArakelovDivisor,
    DiagonalError,
    adjunction_check,
    arakelov_pairing,
    canonical_divisor,
    divisor_of_function,
    green,
    green_constant_by_quadrature,
    green_normalization,
    height_pairing,
    laplacian_check,
    linear_equiv_invariance_check,
    log_distance_integral,
    polynomial_roots,
    self_intersection,
    sphere_integral,
)

from oracles import radial_log_distance, radial_log_one_plus

t = Poly.t()
T = RationalFunction.t()


def test_green_symmetry_and_diagonal():
    assert green(1 + 2j, -3j) == pytest.approx(green(-3j, 1 + 2j), abs=1e-15)
    assert green(INFINITY, 0) == pytest.approx(GREEN_CONSTANT)
    with pytest.raises(DiagonalError):
        green(1, 1)
    with pytest.raises(DiagonalError):
        green(INFINITY, INFINITY)


def test_green_is_invariant_under_rotation_of_the_sphere():
    # z -> 1/z is an isometry of the Fubini-Study metric
    for z, w in [(1 + 1j, 2 - 0.5j), (0.3j, -4), (5, 7j)]:
        assert green(z, w) == pytest.approx(green(1 / z, 1 / w), abs=1e-13)
    assert green(0, 3) == pytest.approx(green(INFINITY, 1 / 3), abs=1e-13)


def test_constant_matches_radial_oracle():
    assert GREEN_CONSTANT == pytest.approx(0.5 * radial_log_one_plus(), abs=1e-13)
    q = green_constant_by_quadrature()
    assert abs(q.value - GREEN_CONSTANT) < 1e-12


@pytest.mark.parametrize("alpha", [0, 0.5, 1, 1 + 1j, -3, 7j, 12.5])
def test_log_distance_integral_matches_radial_oracle(alpha):
    q = log_distance_integral(complex(alpha))
    ref = radial_log_distance(alpha)
    assert abs(q.value - ref) < 1e-11
    assert q.error < 1e-8


def test_sphere_integral_total_mass():
    assert abs(sphere_integral(lambda z, d: np.ones(d.shape)).value - 1) < 1e-13


@pytest.mark.parametrize("P", [0, 1, -2 + 1j, 5, INFINITY])
def test_green_normalization(P):
    assert abs(green_normalization(P).value) < 1e-10


def test_laplacian_order():
    w = laplacian_check(0, [0.7 + 0.2j, -1.5j, 2 + 2j])
    assert min(w.orders) > 1.8


def test_polynomial_roots():
    rs = polynomial_roots(t * t + 1)
    assert sorted((round(z.imag, 12) for z in rs.roots)) == [-1, 1]
    rs = polynomial_roots((t - 1) * (t - 2) * (t - 3) * (t + 5))
    assert [round(z.real, 12) for z in rs.roots] == [-5, 1, 2, 3]
    assert max(rs.radii) < 1e-12


def test_pairing_of_two_sections_closed_form():
    rng = random.Random(18)
    for _ in range(50):
        a, b = rng.sample(range(-20, 21), 2)
        v = arakelov_pairing(ArakelovDivisor.curve(a), ArakelovDivisor.curve(b)).total
        expected = 0.5 * math.log1p(a * a) + 0.5 * math.log1p(b * b) - GREEN_CONSTANT
        assert v == pytest.approx(expected, abs=1e-12)


def test_pairing_is_symmetric():
    C = ArakelovDivisor(((t * t + 1, 1), (INFINITY, -1)), ((3, 1),), 0.25)
    D = ArakelovDivisor(((2 * t - 1, 2),), (), -0.75)
    assert arakelov_pairing(C, D).total == pytest.approx(arakelov_pairing(D, C).total, abs=1e-13)


def test_common_component_raises():
    with pytest.raises(DiagonalError):
        arakelov_pairing(ArakelovDivisor.curve(1), ArakelovDivisor.curve(1))


def test_divisor_of_function_shape():
    F = RationalFunction(6 * (t * t + 1), t - 3)
    D = divisor_of_function(F)
    assert D.degree == 0
    assert dict(D.vertical) == {2: 1, 3: 1}
    # a_inf = -int log|F| dmu = -(log 6 + log 2 - 1/2 log 10)
    assert D.a_inf == pytest.approx(-(math.log(6) + math.log(2) - 0.5 * math.log(10)), abs=1e-10)


@settings(max_examples=15, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(1, 5), st.integers(-4, 4))
def test_invariance_property(a, b, k, c):
    if a == b or c in (a, b):
        return
    F = RationalFunction(k * t + c, t * t + 1)
    C = ArakelovDivisor.curve(a, 0.3)
    D = ArakelovDivisor.curve(b, -0.2)
    if c and Fraction(-c, k) in (a, b):
        return
    w = linear_equiv_invariance_check(C, D, F)
    assert w.residual < 1e-9


def test_principal_divisor_has_zero_degree_and_pairs_to_zero():
    F = RationalFunction((t - 2) * (t * t + 3), 5 * (t + 1) ** 3)
    D = divisor_of_function(F)
    assert D.degree == 0
    E = ArakelovDivisor.curve(Fraction(1, 3), 1.25)
    assert abs(arakelov_pairing(E, D).total) < 1e-9


def test_canonical_divisor_coefficients():
    assert canonical_divisor().a_inf == pytest.approx(-0.5, abs=1e-11)
    assert canonical_divisor(5).a_inf == pytest.approx(-0.5 + math.log(26), abs=1e-10)
    assert canonical_divisor().degree == -2


@pytest.mark.parametrize("C, expected", [(0, -0.5), (1, math.log(2) - 0.5), (INFINITY, -0.5)])
def test_self_intersection_values_and_independence(C, expected):
    values = [self_intersection(C, m).total for m in (3, 7, -4)]
    for v in values:
        assert v == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("C", [0, 1, -3, Fraction(1, 2), INFINITY])
def test_adjunction(C):
    assert adjunction_check(C).residual < 1e-8


def test_height_pairing():
    assert height_pairing(3, 5).total == pytest.approx(0.5 * math.log(34), abs=1e-12)
    with pytest.raises(ArithmeticDomainError):
        height_pairing(1, 0)


def test_self_intersection_shifts_with_fiber_coefficient():
    base = self_intersection(ArakelovDivisor.curve(0)).total
    shifted = self_intersection(ArakelovDivisor.curve(0, 0.75)).total
    assert shifted == pytest.approx(base + 2 * 0.75, abs=1e-10)


def test_pairing_is_bilinear():
    C1, C2 = ArakelovDivisor.curve(2, 0.5), ArakelovDivisor(((t * t + 1, 1),), ((5, 1),), -0.25)
    D = ArakelovDivisor.curve(Fraction(-1, 3), 0.125)
    lhs = arakelov_pairing(C1 + C2, D).total
    rhs = arakelov_pairing(C1, D).total + arakelov_pairing(C2, D).total
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_fiber_only_pairing():
    assert arakelov_pairing(ArakelovDivisor.fiber(0.8), ArakelovDivisor.curve(0)).total == pytest.approx(0.8)


def test_divisor_of_t_and_of_constants():
    D = divisor_of_function(RationalFunction(t))
    assert abs(D.a_inf) < 1e-12 and D.degree == 0
    D = divisor_of_function(Fraction(-15, 4))
    assert D.horizontal == () and D.a_inf == pytest.approx(-math.log(15 / 4))


def test_invariance_example_two_sections():
    F = RationalFunction(t - 2, t - 3)
    w = linear_equiv_invariance_check(ArakelovDivisor.curve(0), ArakelovDivisor.curve(1), F)
    assert w.holds and w.residual < 1e-9


def test_canonical_class_does_not_depend_on_translation():
    # d(t - 5) = dt, so the divisor is literally the same; the pole variant differs by (F) with F = (t - 5)^2
    a = canonical_divisor()
    b = canonical_divisor(5)
    F = divisor_of_function(RationalFunction((t - 5) ** 2))
    moved = a - F
    assert dict(moved.horizontal) == dict(b.horizontal)
    assert moved.a_inf == pytest.approx(b.a_inf, abs=1e-10)
