"""Independent reference computations used by the tests.

Each oracle takes a different route from the library: brute-force search,
sympy, or plain integer arithmetic.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import sympy

T = sympy.Symbol("t")


def to_sympy(f) -> sympy.Expr:
    """Library Poly (over Q) to a sympy expression in t."""
    return sum(sympy.Rational(c.numerator, c.denominator) * T**i for i, c in enumerate(f.coeffs))


def euclid_resultant(f, g) -> Fraction:
    """Resultant by the Euclidean recursion on plain coefficient lists.

    ``Res(f, g) = lc(f)^(n-k) Res(f, g mod f)`` and
    ``Res(f, g) = (-1)^(mn) Res(g, f)``; no determinant is formed.
    """
    f = _trim([Fraction(c) for c in f.coeffs])
    g = _trim([Fraction(c) for c in g.coeffs])
    sign = 1
    acc = Fraction(1)
    while True:
        m, n = len(f) - 1, len(g) - 1
        if not f or not g:
            return Fraction(0)
        if m == 0:
            return sign * acc * f[-1] ** n
        if n < m:
            if (m * n) % 2:
                sign = -sign
            f, g = g, f
            continue
        r = list(g)
        for i in range(n, m - 1, -1):
            c = r[i] / f[-1]
            for j in range(m + 1):
                r[i - m + j] -= c * f[j]
        r = _trim(r[:m])
        if not r:
            return Fraction(0)
        acc *= f[-1] ** (n - (len(r) - 1))
        g = r


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def product_of_factors(n: int, factors) -> int:
    out = 1
    for p, e in factors:
        out *= p**e
    return out


def monic_polys_mod_p(p: int, d: int):
    """All monic polynomials of degree ``d`` over F_p, ascending coefficient tuples."""
    for low in itertools.product(range(p), repeat=d):
        yield tuple(low) + (1,)


def _polydivides(q, f, p) -> bool:
    """Does monic ``q`` divide ``f`` over F_p (coefficient tuples, ascending)?"""
    r = list(f)
    dq = len(q) - 1
    for i in range(len(r) - 1, dq - 1, -1):
        c = r[i] % p
        if c:
            for j in range(dq + 1):
                r[i - dq + j] = (r[i - dq + j] - c * q[j]) % p
    return not any(x % p for x in r[:dq])


def brute_irreducible_mod_p(coeffs, p: int) -> bool:
    """No monic factor of degree between 1 and deg/2, by exhaustive search."""
    d = len(coeffs) - 1
    for k in range(1, d // 2 + 1):
        for q in monic_polys_mod_p(p, k):
            if _polydivides(q, coeffs, p):
                return False
    return d >= 1


def brute_roots_mod_p(coeffs, p: int) -> list[int]:
    return [x for x in range(p) if sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p == 0]


def padic_digits_via_residue(x: Fraction, p: int, n: int) -> tuple[int, list[int]]:
    """Digits from the residue of the unit part modulo p^n written in base p."""
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    m = p**n
    r = num * pow(den, -1, m) % m
    digits = []
    for _ in range(n):
        digits.append(r % p)
        r //= p
    return v, digits


def laurent_coefficients_sympy(expr, n_terms: int, x0=0):
    """Coefficients of the Laurent expansion of a sympy expression at ``x0``."""
    s = sympy.series(expr, T, x0, n=n_terms + 8).removeO()
    u = sympy.Symbol("u")
    s = sympy.expand(s.subs(T, u + x0))
    terms = sympy.Poly(sympy.expand(s * u**40), u).terms()
    coeffs = {k[0] - 40: c for k, c in terms}
    start = min(coeffs)
    return start, [coeffs.get(start + i, 0) for i in range(n_terms)]


def sympy_residue(expr, point):
    return sympy.residue(expr, T, point)


def distinct_fractions_count(H: int) -> int:
    """|P^1(Q)| of height <= H by a double loop over fractions plus infinity."""
    seen = set()
    for x in range(-H, H + 1):
        for y in range(1, H + 1):
            seen.add(Fraction(x, y))
    return len(seen) + 1


def brute_points_p2(H: int) -> int:
    """|P^2(Q)| of height <= H: distinct lines through primitive vectors."""
    seen = set()
    for v in itertools.product(range(-H, H + 1), repeat=3):
        if v == (0, 0, 0):
            continue
        g = math.gcd(*v)
        w = tuple(x // g for x in v)
        first = next(x for x in w if x)
        if first < 0:
            w = tuple(-x for x in w)
        seen.add(w)
    return len(seen)


def snf_length(f_coeffs, g_coeffs, p: int) -> int:
    """``p``-length of ``Z[t]/(f, g)`` for monic ``f`` via Smith normal form.

    ``Z[t]/(f)`` is free with basis ``1, t, ..., t^(d-1)``; the quotient by
    ``g`` is the cokernel of multiplication by ``g`` on that basis.
    """
    from sympy.matrices.normalforms import smith_normal_form

    f = [int(c) for c in f_coeffs]
    assert f[-1] == 1
    d = len(f) - 1
    cols = []
    for i in range(d):
        # t^i * g reduced modulo f
        r = [0] * i + [int(c) for c in g_coeffs]
        for k in range(len(r) - 1, d - 1, -1):
            c = r[k]
            if c:
                for j in range(d + 1):
                    r[k - d + j] -= c * f[j]
        cols.append((r + [0] * d)[:d])
    M = sympy.Matrix(cols).T
    S = smith_normal_form(M, domain=sympy.ZZ)
    total = 0
    for i in range(d):
        x = abs(int(S[i, i]))
        if x == 0:
            raise ValueError("curves share a component")
        while x % p == 0:
            x //= p
            total += 1
    return total


def exact_doubling_heights(a, b, x, y, n: int) -> list[float]:
    """``h(x(2^k P))`` for ``k <= n`` by exact rational doubling."""
    a, b, x, y = map(Fraction, (a, b, x, y))
    out = []
    for k in range(n + 1):
        out.append(math.log(max(abs(x.numerator), x.denominator)))
        if k == n:
            break
        lam = (3 * x * x + a) / (2 * y)
        x2 = lam * lam - 2 * x
        y = lam * (x - x2) - y
        x = x2
    return out


def local_solvable_mod(a: int, b: int, p: int, k: int) -> bool:
    """Primitive solution of ``z^2 = a x^2 + b y^2`` modulo ``p^k`` by full search.

    For squarefree ``a, b`` and ``k`` at least ``2 v_p(2) + 3`` this decides
    solvability over Q_p (every such solution lifts)."""
    import numpy as np

    m = p**k
    r = np.arange(m, dtype=np.int64)
    sq = r * r % m
    unit = r % p != 0
    lhs = (a * sq[:, None] + b * sq[None, :]) % m  # indexed by (x, y)
    z_unit = np.zeros(m, dtype=bool)  # residues hit by z^2 with z a unit
    z_any = np.zeros(m, dtype=bool)
    z_unit[sq[unit]] = True
    z_any[sq] = True
    xy_primitive = unit[:, None] | unit[None, :]
    return bool(np.any(z_any[lhs] & xy_primitive) or np.any(z_unit[lhs]))


def global_solution_exists(a: int, b: int, bound: int) -> bool:
    """A nonzero integer solution of ``z^2 = a x^2 + b y^2`` with entries up to ``bound``."""
    squares = {z * z for z in range(bound * bound * (abs(a) + abs(b)) + 1) if z * z <= bound * bound * (abs(a) + abs(b))}
    for x in range(bound + 1):
        for y in range(-bound, bound + 1):
            if x == 0 and y == 0:
                continue
            if a * x * x + b * y * y in squares:
                return True
    return False


def radial_log_distance(alpha: complex) -> float:
    """``int log|z - alpha| dmu`` through the circle mean ``log max(r, |alpha|)``
    and a one-dimensional mpmath quadrature of the radial density."""
    import mpmath

    a = abs(alpha)
    dens = lambda r: 2 * r / (1 + r * r) ** 2  # noqa: E731
    inner = mpmath.quad(lambda r: mpmath.log(a) * dens(r), [0, a]) if a else 0
    outer = mpmath.quad(lambda r: mpmath.log(r) * dens(r), [a, mpmath.inf] if a else [0, 1, mpmath.inf])
    return float(inner + outer)


def radial_log_one_plus(power: float = 1.0) -> float:
    """``int log(1 + |z|^2)^power dmu`` as a one-dimensional radial integral."""
    import mpmath

    return float(mpmath.quad(lambda r: power * mpmath.log(1 + r * r) * 2 * r / (1 + r * r) ** 2, [0, 1, mpmath.inf]))
