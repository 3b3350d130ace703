"""Exact arithmetic substrate: integers, rationals, prime fields, polynomials,
rational functions, factorization and resultants.

Integers are Python ``int`` and rationals are ``fractions.Fraction``.  A
:class:`Poly` carries its coefficient field in ``p``: ``p == 0`` means
rational coefficients, a prime ``p`` means coefficients in ``F_p`` stored as
ints in ``[0, p)``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class ArithmeticDomainError(ValueError):
    """Input outside the domain of an exact operation."""


class NonIntegralError(ArithmeticDomainError):
    """A coefficient denominator is divisible by the reduction prime."""


# ---------------------------------------------------------------------------
# integers

def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)
_TRIAL_LIMIT = 10**6


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first twenty prime bases (exact below 3.3e24)."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (_TRIAL_LIMIT + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(_TRIAL_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, _TRIAL_LIMIT + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split_large(d, out)
    _split_large(n // d, out)


@lru_cache(maxsize=65536)
def _factor_positive(n: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    for q in _SMALL_PRIMES:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    if n > 1 and not is_prime(n):
        limit = min(_TRIAL_LIMIT, math.isqrt(n))
        for q in _trial_primes():
            if q > limit:
                break
            if n % q == 0:
                while n % q == 0:
                    out[q] = out.get(q, 0) + 1
                    n //= q
                limit = min(_TRIAL_LIMIT, math.isqrt(n))
    _split_large(n, out)
    return tuple(sorted(out.items()))


def factor_integer(n: int) -> tuple[int, list[tuple[int, int]]]:
    """Return ``(sign, [(prime, exponent), ...])`` with primes increasing."""
    if n == 0:
        raise ArithmeticDomainError("cannot factor zero")
    if n.bit_length() > 128:
        raise ArithmeticDomainError("integer factorization is limited to |n| < 2**128")
    return (1 if n > 0 else -1), list(_factor_positive(abs(n)))


def prime_divisors(n: int) -> list[int]:
    return [q for q, _ in factor_integer(n)[1]] if n else []


def valuation_int(n: int, p: int) -> int:
    if n == 0:
        raise ArithmeticDomainError("valuation of zero is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation_q(x: Fraction | int, p: int) -> int:
    x = Fraction(x)
    if x == 0:
        raise ArithmeticDomainError("valuation of zero is undefined")
    return valuation_int(x.numerator, p) - valuation_int(x.denominator, p)


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ArithmeticDomainError(f"{p!r} is not prime")
    return p


# ---------------------------------------------------------------------------
# prime fields

@dataclass(frozen=True)
class Fp:
    """An element of the prime field ``F_p``."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ArithmeticDomainError("mixing different prime fields")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse in F_p")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * Fp(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(o, self.p) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Fp(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


# ---------------------------------------------------------------------------
# polynomials

def _fmt_coeff(c) -> str:
    return str(c)


class Poly:
    """Dense univariate polynomial in ``t``, coefficients in ascending order.

    ``p == 0`` selects rational coefficients, otherwise ``F_p``.  The zero
    polynomial has degree ``-1``.
    """

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs: Iterable = (), p: int = 0):
        if p:
            cs = [int(c.value if isinstance(c, Fp) else _mod_scalar(c, p)) % p for c in coeffs]
        else:
            cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.p = p

    # construction ------------------------------------------------------
    @classmethod
    def t(cls, p: int = 0) -> "Poly":
        return cls((0, 1), p)

    @classmethod
    def const(cls, c, p: int = 0) -> "Poly":
        return cls((c,), p)

    @classmethod
    def from_roots(cls, roots: Sequence, p: int = 0) -> "Poly":
        out = cls((1,), p)
        for r in roots:
            out = out * cls((-r, 1), p)
        return out

    # basic queries -------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self._zero

    @property
    def _zero(self):
        return 0 if self.p else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self._zero

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _inv(self, c):
        if self.p:
            return pow(int(c), -1, self.p)
        return 1 / Fraction(c)

    def _same(self, other: "Poly") -> None:
        if self.p != other.p:
            raise ArithmeticDomainError("polynomials over different coefficient fields")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._same(other)
            return other
        if isinstance(other, (int, Fraction, Fp)):
            return Poly((other,), self.p)
        return NotImplemented

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(i) + other.coeff(i) for i in range(n)], self.p)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.p)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Poly((), self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        if self.p:
            out = [c % self.p for c in out]
        return Poly(out, self.p)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ArithmeticDomainError("negative polynomial power")
        result, base = Poly((1,), self.p), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        return self * Poly((c,), self.p)

    def __divmod__(self, other: "Poly"):
        other = self._lift(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly((), self.p), self
        inv = self._inv(other.lc)
        quo = [0] * (dq + 1)
        od = other.degree
        for k in range(dq, -1, -1):
            c = rem[k + od] * inv
            if self.p:
                c %= self.p
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
                if self.p:
                    for j in range(k, k + od + 1):
                        rem[j] %= self.p
        return Poly(quo, self.p), Poly(rem[:od], self.p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticDomainError("polynomial division is not exact")
        return q

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.p == other.p and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly((other,), self.p)
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.p))

    # calculus and evaluation ----------------------------------------------
    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.p)

    def __call__(self, x):
        acc = 0
        if isinstance(x, complex) or isinstance(x, float):
            for c in reversed(self.coeffs):
                acc = acc * x + float(c)
            return acc
        if self.p and isinstance(x, int):
            for c in reversed(self.coeffs):
                acc = (acc * x + c) % self.p
            return acc
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "Poly") -> "Poly":
        out = Poly((), self.p)
        for c in reversed(self.coeffs):
            out = out * other + Poly((c,), self.p)
        return out

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self.scale(self._inv(self.lc))

    def reverse(self, degree: int | None = None) -> "Poly":
        """``t^degree * self(1/t)``."""
        d = self.degree if degree is None else degree
        cs = list(self.coeffs) + [0] * (d + 1 - len(self.coeffs))
        return Poly(cs[::-1], self.p)

    # integer structure (rational coefficients only) -----------------------
    def denominator_lcm(self) -> int:
        out = 1
        for c in self.coeffs:
            out = out * c.denominator // math.gcd(out, c.denominator)
        return out

    def content(self) -> Fraction:
        """Positive rational ``c`` with ``self / c`` primitive in ``Z[t]``."""
        if not self.coeffs:
            return Fraction(0)
        d = self.denominator_lcm()
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, int(c * d))
        return Fraction(g, d)

    def primitive(self) -> "Poly":
        """Primitive integral associate with positive leading coefficient."""
        c = self.content()
        if self.lc < 0:
            c = -c
        return self.scale(1 / c)

    def int_coeffs(self) -> list[int]:
        if self.p:
            return list(self.coeffs)
        if any(c.denominator != 1 for c in self.coeffs):
            raise ArithmeticDomainError("polynomial has non-integral coefficients")
        return [c.numerator for c in self.coeffs]

    # presentation ----------------------------------------------------------
    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            neg = (not self.p) and c < 0
            mag = -c if neg else c
            if mono and mag == 1:
                term = mono
            elif mono:
                term = f"{_fmt_coeff(mag)}*{mono}"
            else:
                term = _fmt_coeff(mag)
            if isinstance(mag, Fraction) and mag.denominator != 1 and mono:
                term = f"({mag})*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append(("- " if neg else "+ ") + term)
        return " ".join(parts)

    def __repr__(self):
        suffix = f" over F_{self.p}" if self.p else ""
        return f"Poly({self}{suffix})"


def _mod_scalar(c, p: int) -> int:
    if isinstance(c, Fraction):
        if c.denominator % p == 0:
            raise NonIntegralError(f"{c} is not {p}-integral")
        return c.numerator * pow(c.denominator, -1, p) % p
    return int(c) % p


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0)`` is rejected."""
    f._same(g)
    if not f and not g:
        raise ArithmeticDomainError("gcd(0, 0) is undefined")
    a, b = f, g
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(d, u, v)`` with ``u f + v g = d`` and ``d`` monic."""
    f._same(g)
    r0, r1 = f, g
    s0, s1 = Poly((1,), f.p), Poly((), f.p)
    t0, t1 = Poly((), f.p), Poly((1,), f.p)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = r0._inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def reduce_mod_p(f: Poly, p: int) -> Poly:
    """Coefficient-wise reduction of a p-integral rational polynomial."""
    require_prime(p)
    if f.p:
        raise ArithmeticDomainError("reduce_mod_p expects rational coefficients")
    return Poly(f.coeffs, p)


def lift_to_q(f: Poly) -> Poly:
    """Representatives in ``[0, p)`` viewed as a rational polynomial."""
    return Poly(f.coeffs, 0)


# ---------------------------------------------------------------------------
# determinants and resultants

def _det(rows: list[list], p: int):
    n = len(rows)
    if n == 0:
        return 1 if p else Fraction(1)
    m = [list(r) for r in rows]
    if p:
        m = [[x % p for x in r] for r in m]
    else:
        m = [[Fraction(x) for x in r] for r in m]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return 0 if p else Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pv = m[col][col]
        det *= pv
        inv = pow(pv, -1, p) if p else 1 / pv
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            factor = m[r][col] * inv
            row, prow = m[r], m[col]
            for c in range(col, n):
                row[c] -= factor * prow[c]
            if p:
                for c in range(col, n):
                    row[c] %= p
        if p:
            det %= p
    return det % p if p else det


def sylvester_matrix(f_desc: Sequence, g_desc: Sequence) -> list[list]:
    """Sylvester matrix of coefficient lists in descending order.

    The formal degrees are ``len - 1`` so leading zeros are allowed (needed
    for binary forms).  Rows of ``f`` come first.
    """
    m, n = len(f_desc) - 1, len(g_desc) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(f_desc) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(g_desc) + [0] * (size - n - 1 - i))
    return rows


def resultant(f: Poly, g: Poly):
    """Determinant of the Sylvester matrix (rows of ``f`` first).

    With this order ``Res(f, g) = lc(f)^deg(g) * prod g(alpha)`` over the
    roots ``alpha`` of ``f``.
    """
    f._same(g)
    if not f or not g:
        raise ArithmeticDomainError("resultant of the zero polynomial")
    if f.degree == 0 and g.degree == 0:
        return 1 if f.p else Fraction(1)
    return _det(sylvester_matrix(f.coeffs[::-1], g.coeffs[::-1]), f.p)


def form_resultant(f_desc: Sequence[int], g_desc: Sequence[int]) -> int:
    """Resultant of two binary forms given by descending coefficient lists."""
    if len(f_desc) == 1 and len(g_desc) == 1:
        return 1
    val = _det(sylvester_matrix(f_desc, g_desc), 0)
    if val.denominator != 1:
        raise ArithmeticDomainError("form resultant expects integer coefficients")
    return val.numerator


# ---------------------------------------------------------------------------
# factorization over F_p

def _powmod(base: Poly, e: int, mod: Poly) -> Poly:
    result, b = Poly((1,), base.p), base % mod
    while e:
        if e & 1:
            result = result * b % mod
        b = b * b % mod
        e >>= 1
    return result


def _pth_root(f: Poly) -> Poly:
    p = f.p
    return Poly(f.coeffs[::p], p)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree factors ``[(s_i, i)]`` with ``f = lc * prod s_i^i``.

    Works over ``Q`` and over ``F_p`` (Yun's algorithm with the usual
    p-th root step in characteristic p).
    """
    if not f:
        raise ArithmeticDomainError("squarefree decomposition of zero")
    f = f.monic()
    if f.degree <= 0:
        return []
    out: dict[int, Poly] = {}

    def record(poly: Poly, mult: int):
        if poly.degree > 0:
            out[mult] = out[mult] * poly if mult in out else poly

    def rec(a: Poly, mult: int):
        if a.degree <= 0:
            return
        d = a.derivative()
        if not d:
            rec(_pth_root(a), mult * a.p)
            return
        c = poly_gcd(a, d)
        w = a.exact_div(c)
        i = 1
        while w.degree > 0:
            y = poly_gcd(w, c)
            z = w.exact_div(y)
            record(z.monic(), i * mult)
            i += 1
            w = y
            c = c.exact_div(y)
        if c.degree > 0:
            rec(_pth_root(c.monic()), mult * a.p)

    rec(f, 1)
    return sorted(((s.monic(), m) for m, s in out.items()), key=lambda x: (x[1], x[0].coeffs))


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    p = f.p
    out = []
    x = Poly.t(p)
    h = x % f
    i = 0
    while f.degree >= 2 * (i + 1):
        i += 1
        h = _powmod(h, p, f)
        g = poly_gcd(f, h - x)
        if g.degree > 0:
            out.append((g, i))
            f = f.exact_div(g)
            h = h % f
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    p = f.p
    n = f.degree
    if n == d:
        return [f.monic()]
    while True:
        a = Poly([rng.randrange(p) for _ in range(n)], p)
        if a.degree < 1:
            continue
        if p == 2:
            # trace map t + t^2 + ... + t^(2^(d-1))
            b, acc = a % f, a % f
            for _ in range(d - 1):
                b = b * b % f
                acc = acc + b
            g = poly_gcd(f, acc)
        else:
            g = poly_gcd(f, _powmod(a, (p**d - 1) // 2, f) - 1)
        if 0 < g.degree < n:
            return _equal_degree(g, d, rng) + _equal_degree(f.exact_div(g), d, rng)


def factor_poly_mod_p(f: Poly) -> tuple[int, list[tuple[Poly, int]]]:
    """Factor over ``F_p``: ``(lc, [(monic irreducible, exponent)])``.

    Squarefree, distinct-degree and Cantor-Zassenhaus equal-degree
    splitting; the randomness is seeded from the input so results are
    reproducible.
    """
    if not f.p:
        raise ArithmeticDomainError("factor_poly_mod_p expects a polynomial over F_p")
    if not f:
        raise ArithmeticDomainError("cannot factor the zero polynomial")
    lc = f.lc
    rng = random.Random(hash((f.coeffs, f.p)))
    acc: dict[Poly, int] = {}
    for s, m in squarefree_decomposition(f):
        for g, d in _distinct_degree(s):
            for irr in _equal_degree(g, d, rng):
                acc[irr] = acc.get(irr, 0) + m
    factors = sorted(acc.items(), key=lambda x: (x[0].degree, x[0].coeffs))
    return lc, factors


def is_irreducible_mod_p(f: Poly) -> bool:
    if f.degree < 1:
        return False
    _, fac = factor_poly_mod_p(f)
    return len(fac) == 1 and fac[0][1] == 1


# ---------------------------------------------------------------------------
# factorization over Q

def factor_over_q(f: Poly) -> tuple[Fraction, list[tuple[Poly, int]]]:
    """Factor a rational polynomial into primitive integral irreducibles.

    Returns ``(c, [(g_i, e_i)])`` with ``f = c * prod g_i^e_i``; each ``g_i``
    has integer coefficients, content 1 and positive leading coefficient.
    Delegates to sympy's Zassenhaus implementation.
    """
    import sympy

    if f.p:
        raise ArithmeticDomainError("factor_over_q expects rational coefficients")
    if not f:
        raise ArithmeticDomainError("cannot factor the zero polynomial")
    if f.degree == 0:
        return f.lc, []
    t = sympy.Symbol("t")
    expr = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in f.coeffs])), t)
    _, factors = expr.factor_list()
    out = []
    prod = Poly((1,))
    for g, e in factors:
        coeffs = [int(c) for c in reversed(g.all_coeffs())]
        poly = Poly(coeffs).primitive()
        out.append((poly, int(e)))
        prod = prod * poly**e
    c = f.lc / prod.lc
    out.sort(key=lambda x: (x[0].degree, x[0].coeffs))
    return c, out


def is_irreducible_over_q(f: Poly) -> bool:
    if f.degree < 1:
        return False
    _, fac = factor_over_q(f)
    return len(fac) == 1 and fac[0][1] == 1


# ---------------------------------------------------------------------------
# rational functions

class RationalFunction:
    """``num / den`` with ``den`` monic and ``gcd(num, den) = 1``."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly((1,), num.p)
        num._same(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = num, Poly((1,), num.p)
            return
        g = poly_gcd(num, den)
        num, den = num.exact_div(g), den.exact_div(g)
        inv = den._inv(den.lc)
        self.num = num.scale(inv)
        self.den = den.scale(inv)

    @property
    def p(self) -> int:
        return self.num.p

    @classmethod
    def const(cls, c, p: int = 0) -> "RationalFunction":
        return cls(Poly((c,), p))

    @classmethod
    def t(cls, p: int = 0) -> "RationalFunction":
        return cls(Poly.t(p))

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            if other.p != self.p:
                raise ArithmeticDomainError("rational functions over different fields")
            return other
        if isinstance(other, Poly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction, Fp)):
            return RationalFunction(Poly((other,), self.p))
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not o:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalFunction(self.den ** (-k), self.num ** (-k))
        return RationalFunction(self.num**k, self.den**k)

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, RationalFunction) else other
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den
        )

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        if self.p and isinstance(x, int):
            return self.num(x) * pow(d, -1, self.p) % self.p
        return self.num(x) / d

    def degree_at_infinity(self) -> int:
        """Order of vanishing at infinity: ``deg den - deg num``."""
        if not self.num:
            raise ArithmeticDomainError("order of the zero function")
        return self.den.degree - self.num.degree

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        suffix = f" over F_{self.p}" if self.p else ""
        return f"RationalFunction({self}{suffix})"


# ---------------------------------------------------------------------------
# exact logarithms

@dataclass(frozen=True)
class ExactLog:
    """The real number ``log(arg)`` held as the exact positive rational ``arg``."""

    arg: Fraction

    def __post_init__(self):
        a = Fraction(self.arg)
        if a <= 0:
            raise ArithmeticDomainError("ExactLog needs a positive argument")
        object.__setattr__(self, "arg", a)

    @classmethod
    def zero(cls) -> "ExactLog":
        return cls(Fraction(1))

    @classmethod
    def of_prime_power(cls, p: int, k: int) -> "ExactLog":
        return cls(Fraction(p) ** k)

    def __add__(self, other: "ExactLog") -> "ExactLog":
        if not isinstance(other, ExactLog):
            return NotImplemented
        return ExactLog(self.arg * other.arg)

    def __neg__(self) -> "ExactLog":
        return ExactLog(1 / self.arg)

    def __sub__(self, other: "ExactLog") -> "ExactLog":
        return self + (-other)

    def __mul__(self, k: int) -> "ExactLog":
        if not isinstance(k, int):
            return NotImplemented
        return ExactLog(self.arg**k)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.arg == 1

    def __float__(self) -> float:
        return math.log(self.arg.numerator) - math.log(self.arg.denominator)

    def terms(self) -> list[tuple[int, int]]:
        """``[(prime, coefficient)]`` so that the value is ``sum c*log(p)``."""
        out: dict[int, int] = {}
        if self.arg.numerator != 1:
            for q, e in factor_integer(self.arg.numerator)[1]:
                out[q] = out.get(q, 0) + e
        if self.arg.denominator != 1:
            for q, e in factor_integer(self.arg.denominator)[1]:
                out[q] = out.get(q, 0) - e
        return sorted(out.items())

    def __str__(self):
        terms = self.terms()
        if not terms:
            return "0"
        parts = []
        for q, e in terms:
            mag = abs(e)
            body = f"log({q})" if mag == 1 else f"{mag} * log({q})"
            if not parts:
                parts.append(("-" if e < 0 else "") + body)
            else:
                parts.append(("- " if e < 0 else "+ ") + body)
        return " ".join(parts)


class _Infinity:
    """The point ``t = inf`` of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    __str__ = lambda self: "inf"  # noqa: E731

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()
