import random
from fractions import Fraction

import sympy

from numfunc.core import INFINITY, Poly, RationalFunction
from numfunc.completions import laurent_at, metric, p_adic_digits, p_adic_expand
from numfunc.places import FinitePrimeQ, FunctionFieldPoint, RationalPoint, function_order

from oracles import laurent_coefficients_sympy, padic_digits_via_residue, to_sympy

t = Poly.t()


def test_three_adic_examples():
    assert p_adic_digits(2, 3, 3).digits == (2, 0, 0)
    e = p_adic_digits(Fraction(1, 5), 3, 3)
    assert (e.start, e.digits) == (0, (2, 0, 1))
    assert p_adic_digits(0, 3, 3).is_zero


def test_digits_match_residue_oracle():
    rng = random.Random(9)
    for _ in range(500):
        p = rng.choice([2, 3, 5, 7, 11, 13])
        x = Fraction(rng.randint(1, 10**6) * rng.choice([1, -1]), rng.randint(1, 10**6))
        n = rng.randint(1, 12)
        e = p_adic_digits(x, p, n)
        assert (e.start, list(e.digits)) == padic_digits_via_residue(x, p, n)


def test_truncation_is_congruent():
    rng = random.Random(10)
    for _ in range(200):
        p = rng.choice([2, 3, 5])
        x = Fraction(rng.randint(1, 10**4), rng.randint(1, 10**4))
        e = p_adic_digits(x, p, 8)
        d = x - e.value()
        assert d == 0 or _vp(d, p) >= e.start + 8


def _vp(x, p):
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def test_laurent_at_rational_points_matches_sympy():
    rng = random.Random(11)
    for _ in range(40):
        num = Poly([rng.randint(-4, 4) for _ in range(rng.randint(1, 4))])
        den = Poly([rng.randint(-4, 4) for _ in range(rng.randint(1, 3))] + [1])
        if not num:
            continue
        F = RationalFunction(num, den)
        x0 = rng.randint(-2, 2)
        e = laurent_at(F, Fraction(x0), 6)
        start, coeffs = laurent_coefficients_sympy(to_sympy(F.num) / to_sympy(F.den), 6, x0)
        assert e.start == start
        assert [sympy.Rational(c.numerator, c.denominator) for c in e.coefficients] == coeffs


def test_laurent_at_infinity():
    F = RationalFunction(t**3 + 1, t)
    e = laurent_at(F, INFINITY, 4)
    # t^2 + 1/t in the parameter u = 1/t
    assert e.start == -2
    assert list(e.coefficients) == [1, 0, 0, 1]


def test_expansion_at_irreducible_reconstructs():
    P = Poly((1, 0, 1), 3)
    F = RationalFunction(Poly((1, 2, 0, 1), 3), Poly((0, 1), 3))
    v, cs = p_adic_expand(F, P, 6)
    total = RationalFunction(Poly((), 3))
    for i, c in enumerate(cs):
        total = total + RationalFunction(c) * RationalFunction(P) ** (v + i)
    diff = F - total
    assert not diff or function_order(diff, P) >= v + 6


def test_metric_examples():
    assert metric(Fraction(1), Fraction(10), FinitePrimeQ(3)) == Fraction(1, 9)
    assert metric(RationalFunction(t), RationalFunction(t * 0), RationalPoint(0)) == Fraction(1, 2)
    P = Poly((1, 1), 2)
    x = RationalFunction(P * P)
    assert metric(x, RationalFunction(Poly((), 2)), FunctionFieldPoint(2, P)) == Fraction(1, 4)
