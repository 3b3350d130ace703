import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from numfunc.core import (
    ArithmeticDomainError,
    ExactLog,
    Fp,
    NonIntegralError,
    Poly,
    RationalFunction,
    factor_integer,
    factor_over_q,
    factor_poly_mod_p,
    gcd,
    is_prime,
    poly_gcd,
    reduce_mod_p,
    resultant,
    squarefree_decomposition,
)

from oracles import brute_irreducible_mod_p, brute_roots_mod_p, euclid_resultant

t = Poly.t()


def test_gcd_examples():
    assert gcd(12, 18) == 6
    assert gcd(0, 7) == 7
    assert gcd(-4, 6) == 2
    assert gcd(0, 0) == 0


def test_factor_integer_examples():
    assert factor_integer(12) == (1, [(2, 2), (3, 1)])
    assert factor_integer(-7) == (-1, [(7, 1)])
    assert factor_integer(1) == (1, [])
    with pytest.raises(ArithmeticDomainError):
        factor_integer(0)


def test_factor_integer_random_reconstructs():
    rng = random.Random(1)
    for _ in range(500):
        n = rng.randint(-10**9, 10**9) or 1
        sign, fs = factor_integer(n)
        prod = sign
        for p, e in fs:
            assert is_prime(p) and e >= 1
            prod *= p**e
        assert prod == n
        assert [p for p, _ in fs] == sorted({p for p, _ in fs})


def test_factor_integer_large_semiprime():
    p, q = 1000000007, 998244353
    assert factor_integer(p * q) == (1, [(q, 1), (p, 1)])


def test_fp_arithmetic():
    a = Fp(3, 7)
    assert a * a.inverse() == Fp(1, 7)
    assert a**6 == Fp(1, 7)
    assert (a + 5).value == 1


def test_resultant_examples():
    assert resultant(t, t - 2) == -2
    assert resultant(t - 3, t - 3) == 0
    assert resultant(5 * t - 1, t - 2) == -9


def test_resultant_matches_euclidean_recursion():
    rng = random.Random(2)
    for _ in range(60):
        f = Poly([rng.randint(-5, 5) for _ in range(rng.randint(2, 5))])
        g = Poly([rng.randint(-5, 5) for _ in range(rng.randint(2, 5))])
        if f.degree < 1 or g.degree < 1:
            continue
        assert resultant(f, g) == euclid_resultant(f, g)


def test_resultant_zero_iff_common_factor_mod_p():
    rng = random.Random(3)
    primes = [2, 3, 5, 7, 11, 13, 31, 97]
    for _ in range(300):
        p = rng.choice(primes)
        f = Poly([rng.randrange(p) for _ in range(rng.randint(1, 9))], p)
        g = Poly([rng.randrange(p) for _ in range(rng.randint(1, 9))], p)
        if not f or not g:
            continue
        assert (resultant(f, g) == 0) == (poly_gcd(f, g).degree >= 1)


def test_poly_gcd_examples():
    assert poly_gcd(t * t - 1, t - 1) == t - 1
    assert poly_gcd(t, t + 1) == Poly((1,))
    assert poly_gcd(Poly(()), t * t) == t * t


def test_reduce_mod_p_examples():
    assert reduce_mod_p(t - 2, 2) == Poly.t(2)
    assert reduce_mod_p(5 * t - 1, 3) == Poly((2, 2), 3)
    with pytest.raises(NonIntegralError):
        reduce_mod_p(Poly((0, Fraction(1, 2))), 2)


def test_factor_poly_mod_p_examples():
    assert factor_poly_mod_p(Poly((1, 0, 1), 3)) == (1, [(Poly((1, 0, 1), 3), 1)])
    assert factor_poly_mod_p(Poly((-1, 0, 1), 3)) == (1, [(Poly((1, 1), 3), 1), (Poly((2, 1), 3), 1)])
    assert factor_poly_mod_p(Poly((0, 0, 1), 5)) == (1, [(Poly((0, 1), 5), 2)])


def test_factor_poly_mod_p_random_against_exhaustive_search():
    rng = random.Random(4)
    count = 0
    while count < 150:
        p = rng.choice([2, 3, 5, 7, 11, 13])
        d = rng.randint(1, min(10, 200 // p))
        f = Poly([rng.randrange(p) for _ in range(d)] + [rng.randrange(1, p)], p)
        lc, fs = factor_poly_mod_p(f)
        prod = Poly((lc,), p)
        for g, e in fs:
            assert g.is_monic()
            assert brute_irreducible_mod_p(list(g.coeffs), p)
            prod = prod * g**e
        assert prod == f
        count += 1


def test_linear_factors_match_roots():
    rng = random.Random(5)
    for _ in range(50):
        p = rng.choice([5, 7, 11])
        f = Poly([rng.randrange(p) for _ in range(6)] + [1], p)
        _, fs = factor_poly_mod_p(f)
        roots = sorted((-g.coeff(0)) % p for g, _ in fs if g.degree == 1)
        assert roots == brute_roots_mod_p(list(f.coeffs), p)


def test_squarefree_decomposition_over_q():
    f = (t - 1) ** 3 * (t + 2) ** 2 * (t * t + 1)
    sq = squarefree_decomposition(f)
    prod = Poly((1,))
    for s, i in sq:
        prod = prod * s**i
    assert prod == f.monic()
    assert {i for _, i in sq} == {1, 2, 3}


def test_factor_over_q():
    c, fs = factor_over_q(Poly((-4, 0, 2)))
    assert c == 2 and [g for g, _ in fs] == [t * t - 2]
    prod = Poly((c,))
    for g, e in fs:
        prod = prod * g**e
    assert prod == Poly((-4, 0, 2))


def test_rational_function_normal_form():
    F = RationalFunction(t * t - 1, 2 * t - 2)
    assert F.den.is_monic()
    assert F.num == Poly((Fraction(1, 2), Fraction(1, 2)))
    assert F.derivative() == RationalFunction(Poly((0,)) + Fraction(1, 2))


def test_exact_log_algebra():
    rng = random.Random(6)
    for _ in range(200):
        a = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
        b = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
        assert ExactLog(a) + ExactLog(b) == ExactLog(a * b)
    assert str(ExactLog(9)) == "2 * log(3)"
    assert str(ExactLog(2)) == "log(2)"
    assert str(ExactLog.zero()) == "0"


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6), st.lists(st.integers(-20, 20), min_size=1, max_size=6))
def test_divmod_identity(fc, gc):
    f, g = Poly(fc), Poly(gc)
    if not g:
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree
