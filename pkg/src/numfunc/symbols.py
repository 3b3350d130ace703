"""Legendre and quadratic Hilbert symbols with their reciprocity laws, tame
symbols, and formal residue calculus on Laurent series."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .completions import _at_infinity, laurent_at
from .core import (
    INFINITY,
    ArithmeticDomainError,
    Fp,
    Poly,
    RationalFunction,
    factor_integer,
    factor_over_q,
    is_prime,
    poly_gcd,
    poly_xgcd,
    squarefree_decomposition,
    valuation_q,
)
from .places import ArchimedeanQ, FinitePrimeQ, Place


class InsufficientPrecisionError(ArithmeticDomainError):
    """A requested coefficient lies beyond the known precision."""


# ---------------------------------------------------------------------------
# Legendre and Hilbert symbols

def legendre(a: int, p: int) -> int:
    """Euler's criterion ``a^((p-1)/2) mod p``, returned as -1, 0 or +1."""
    if p == 2 or not is_prime(p):
        raise ArithmeticDomainError(f"Legendre symbol needs an odd prime, got {p}")
    if a % p == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _as_place(v) -> Place:
    if isinstance(v, Place):
        if not isinstance(v, (FinitePrimeQ, ArchimedeanQ)):
            raise ArithmeticDomainError("Hilbert symbols are defined at places of Q")
        return v
    if v in ("inf", "oo", INFINITY):
        return ArchimedeanQ()
    return FinitePrimeQ(int(v))


def _unit_part(x: Fraction, p: int) -> tuple[int, Fraction]:
    v = valuation_q(x, p)
    return v, x / Fraction(p) ** v


def _legendre_unit(u: Fraction, p: int) -> int:
    return legendre(u.numerator, p) * legendre(u.denominator, p)


def _mod8(u: Fraction) -> int:
    return u.numerator * pow(u.denominator, -1, 8) % 8


def hilbert_quadratic(a, b, v) -> int:
    """``(a, b)_v``: +1 iff ``z^2 = a x^2 + b y^2`` has a nonzero solution in
    the completion of Q at ``v``.

    Closed forms: sign rule at infinity, the valuation/Legendre formula at odd
    primes and the mod-8 characters at 2.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ArithmeticDomainError("Hilbert symbol needs nonzero arguments")
    place = _as_place(v)
    if isinstance(place, ArchimedeanQ):
        return -1 if a < 0 and b < 0 else 1
    p = place.p
    alpha, u = _unit_part(a, p)
    beta, w = _unit_part(b, p)
    if p != 2:
        sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
        return sign * _legendre_unit(u, p) ** (beta % 2) * _legendre_unit(w, p) ** (alpha % 2)
    u8, w8 = _mod8(u), _mod8(w)
    eps_u, eps_w = ((u8 - 1) // 2) % 2, ((w8 - 1) // 2) % 2
    om_u, om_w = ((u8 * u8 - 1) // 8) % 2, ((w8 * w8 - 1) // 8) % 2
    e = eps_u * eps_w + alpha * om_w + beta * om_u
    return -1 if e % 2 else 1


def hilbert_symbol_table(values, v) -> np.ndarray:
    """``(a, b)_v`` for all pairs from ``values`` at once (same closed forms
    as :func:`hilbert_quadratic`, evaluated on per-value invariants)."""
    xs = [Fraction(x) for x in values]
    if any(x == 0 for x in xs):
        raise ArithmeticDomainError("Hilbert symbol needs nonzero arguments")
    place = _as_place(v)
    if isinstance(place, ArchimedeanQ):
        neg = np.array([x < 0 for x in xs], dtype=np.int8)
        e = np.outer(neg, neg)
    else:
        p = place.p
        alpha = np.empty(len(xs), dtype=np.int8)
        bit1 = np.empty(len(xs), dtype=np.int8)
        bit2 = np.empty(len(xs), dtype=np.int8)
        for i, x in enumerate(xs):
            a, u = _unit_part(x, p)
            alpha[i] = a % 2
            if p == 2:
                u8 = _mod8(u)
                bit1[i] = ((u8 - 1) // 2) % 2
                bit2[i] = ((u8 * u8 - 1) // 8) % 2
            else:
                bit1[i] = _legendre_unit(u, p) == -1
        if p == 2:
            e = np.outer(bit1, bit1) + np.outer(alpha, bit2) + np.outer(bit2, alpha)
        else:
            eps = ((p - 1) // 2) % 2
            e = eps * np.outer(alpha, alpha) + np.outer(bit1, alpha) + np.outer(alpha, bit1)
    return (1 - 2 * (e % 2)).astype(np.int8)


@lru_cache(maxsize=None)
def _squares_mod(m: int) -> frozenset[int]:
    return frozenset(x * x % m for x in range(m))


def _square_class(x: Fraction, p: int) -> tuple[int, int]:
    """Key of the class of ``x`` in ``Q_p^* / Q_p^*2`` found by enumeration:
    (valuation parity, smallest positive integer unit in the same class)."""
    v, u = _unit_part(x, p)
    modulus = 8 if p == 2 else p
    r = u.numerator * pow(u.denominator, -1, modulus) % modulus
    squares = _squares_mod(modulus)
    for c in range(1, modulus):
        if c % p == 0:
            continue
        # c ~ r iff r / c is a unit square, decided modulo p (or 8 at p = 2)
        if r * pow(c, -1, modulus) % modulus in squares:
            return v % 2, c
    raise AssertionError("unreachable: every unit is in some class")


@lru_cache(maxsize=None)
def _primitive_solution_exists(a: int, b: int, p: int) -> bool:
    """Search primitive solutions of ``z^2 = a x^2 + b y^2`` modulo ``p^k``.

    Requires ``v_p(a), v_p(b) <= 1``.  With ``k = 2 v_p(2) + 3`` every
    normalized solution found satisfies Hensel's condition
    ``v(Q) > 2 v(dQ)`` in the normalized variable, so it lifts to Z_p; and
    every primitive Z_p solution reduces to one of the three cases below.
    """
    k = 2 * (1 if p == 2 else 0) + 3
    m = p**k
    squares_all = [x * x % m for x in range(m)]
    # case z = 1
    ax2 = {a * s % m for s in squares_all}
    if any((1 - b * s) % m in ax2 for s in squares_all):
        return True
    squares_p = {(p * z) ** 2 % m for z in range(m // p)}
    # case x = 1, p | z
    if any((a + b * s) % m in squares_p for s in squares_all):
        return True
    # case y = 1, p | z, p | x
    sq_px = {(p * x) ** 2 % m for x in range(m // p)}
    return any((b + a * s) % m in squares_p for s in sq_px)


def hensel_oracle(a, b, v) -> int:
    """Solvability oracle for ``z^2 = a x^2 + b y^2`` over the completion."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ArithmeticDomainError("Hilbert symbol needs nonzero arguments")
    place = _as_place(v)
    if isinstance(place, ArchimedeanQ):
        # a real solution with (x, y) = (1, 0), (0, 1) or z = 0 exists unless both are negative
        for x, y in ((1, 0), (0, 1), (1, 1)):
            if a * x * x + b * y * y >= 0 and (x, y) != (0, 0):
                return 1
        return -1
    p = place.p
    va, ca = _square_class(a, p)
    vb, cb = _square_class(b, p)
    return 1 if _primitive_solution_exists(p**va * ca, p**vb * cb, p) else -1


@dataclass(frozen=True)
class HilbertProductWitness:
    a: Fraction
    b: Fraction
    symbols: tuple[tuple[str, int], ...]
    minus_places: tuple[str, ...]
    holds: bool


def relevant_places(a: Fraction, b: Fraction) -> list[Place]:
    primes = {2}
    for x in (a, b):
        for part in (x.numerator, x.denominator):
            if abs(part) > 1:
                primes.update(q for q, _ in factor_integer(part)[1])
    return [FinitePrimeQ(q) for q in sorted(primes)] + [ArchimedeanQ()]


def hilbert_product_check(a, b) -> HilbertProductWitness:
    """Evaluate ``(a, b)_v`` at every place where it can be -1; the product
    over all places is 1 iff the number of -1 entries is even."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ArithmeticDomainError("Hilbert symbol needs nonzero arguments")
    symbols = [(str(v), hilbert_quadratic(a, b, v)) for v in relevant_places(a, b)]
    minus = tuple(name for name, s in symbols if s == -1)
    return HilbertProductWitness(a, b, tuple(symbols), minus, len(minus) % 2 == 0)


@dataclass(frozen=True)
class GaussWitness:
    a: int
    b: int
    legendre_product: int  # (a/b)(b/a)
    parity_sign: int  # (-1)^((a-1)/2 (b-1)/2)
    hilbert_at_a: int
    hilbert_at_b: int
    hilbert_at_2: int
    hilbert_at_inf: int
    product_holds: bool
    holds: bool


def gauss_reciprocity_check(a: int, b: int) -> GaussWitness:
    for q in (a, b):
        if q == 2 or not is_prime(q):
            raise ArithmeticDomainError(f"{q} is not an odd prime")
    if a == b:
        raise ArithmeticDomainError("reciprocity needs distinct primes")
    lhs = legendre(a, b) * legendre(b, a)
    rhs = -1 if ((a - 1) // 2 * (b - 1) // 2) % 2 else 1
    prod = hilbert_product_check(a, b)
    table = dict(prod.symbols)
    h_a, h_b, h_2, h_inf = table[str(a)], table[str(b)], table["2"], table["inf"]
    # only a, b, 2 and infinity can contribute; (a,b)_a = (b/a), (a,b)_b = (a/b)
    derived = h_a * h_b == h_2 * h_inf
    holds = (
        lhs == rhs
        and prod.holds
        and set(table) == {str(a), str(b), "2", "inf"}
        and h_a * h_b == lhs
        and h_2 * h_inf == rhs
        and derived
    )
    return GaussWitness(a, b, lhs, rhs, h_a, h_b, h_2, h_inf, prod.holds, holds)


# ---------------------------------------------------------------------------
# formal Laurent series

def _zero_like(c):
    if isinstance(c, Fp):
        return Fp(0, c.p)
    if isinstance(c, _ResidueElement):
        return c.ring.zero()
    return Fraction(0)


class FormalLaurentSeries:
    """``sum_{i >= start} a_i t^i + O(t^precision)`` with exact coefficients.

    ``coefficients[k]`` is the coefficient of ``t^(start + k)``; leading zeros
    are stripped on construction.
    """

    __slots__ = ("start", "coefficients", "precision")

    def __init__(self, start: int, coefficients, precision: int | None = None):
        cs = list(coefficients)
        if precision is None:
            precision = start + len(cs)
        cs = cs[: max(precision - start, 0)]
        if cs and len(cs) < precision - start:
            cs += [_zero_like(cs[0])] * (precision - start - len(cs))
        while cs and not cs[0]:
            cs.pop(0)
            start += 1
        if not cs:
            start = precision
        self.start = start
        self.coefficients = tuple(cs)
        self.precision = precision

    @classmethod
    def from_terms(cls, terms: dict[int, object], precision: int) -> "FormalLaurentSeries":
        if not terms:
            return cls(precision, (), precision)
        lo = min(terms)
        sample = next(iter(terms.values()))
        zero = _zero_like(sample)
        return cls(lo, [terms.get(i, zero) for i in range(lo, precision)], precision)

    @classmethod
    def from_rational_function(cls, F: RationalFunction, precision: int, center=0) -> "FormalLaurentSeries":
        """Expansion in ``t - center`` (or ``1/t`` at infinity) up to ``O(.^precision)``."""
        probe = laurent_at(F, center, 1)
        if probe.is_zero:
            return cls(precision, (), precision)
        n = max(precision - probe.start, 0)
        exp = laurent_at(F, center, n)
        coeffs = exp.coefficients
        if F.p:
            coeffs = tuple(Fp(c, F.p) for c in coeffs)
        return cls(exp.start, coeffs, precision)

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def valuation(self) -> int:
        if self.is_zero():
            raise ArithmeticDomainError("valuation of a series known to be zero to its precision")
        return self.start

    @property
    def leading(self):
        return self.coefficients[0]

    def coefficient(self, k: int):
        if k >= self.precision:
            raise InsufficientPrecisionError(f"coefficient of t^{k} beyond precision O(t^{self.precision})")
        if k < self.start:
            return _zero_like(self.coefficients[0]) if self.coefficients else Fraction(0)
        return self.coefficients[k - self.start]

    def derivative(self) -> "FormalLaurentSeries":
        cs = [(self.start + k) * c for k, c in enumerate(self.coefficients)]
        return FormalLaurentSeries(self.start - 1, cs, self.precision - 1)

    def __add__(self, other: "FormalLaurentSeries") -> "FormalLaurentSeries":
        prec = min(self.precision, other.precision)
        lo = min(self.start, other.start)
        cs = [self.coefficient(k) + other.coefficient(k) for k in range(lo, prec)]
        return FormalLaurentSeries(lo, cs, prec)

    def __neg__(self):
        return FormalLaurentSeries(self.start, [-c for c in self.coefficients], self.precision)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "FormalLaurentSeries") -> "FormalLaurentSeries":
        if self.is_zero() or other.is_zero():
            prec = min(self.precision + (other.start if not other.is_zero() else other.precision),
                       other.precision + (self.start if not self.is_zero() else self.precision))
            return FormalLaurentSeries(prec, (), prec)
        start = self.start + other.start
        prec = min(self.start + other.precision, other.start + self.precision)
        n = prec - start
        a, b = self.coefficients, other.coefficients
        out = []
        for k in range(n):
            acc = _zero_like(a[0])
            for i in range(max(0, k - len(b) + 1), min(k, len(a) - 1) + 1):
                acc = acc + a[i] * b[k - i]
            out.append(acc)
        return FormalLaurentSeries(start, out, prec)

    def __eq__(self, other):
        if not isinstance(other, FormalLaurentSeries):
            return NotImplemented
        return (self.start, self.coefficients, self.precision) == (other.start, other.coefficients, other.precision)

    def __hash__(self):
        return hash((self.start, self.coefficients, self.precision))

    def __repr__(self):
        terms = " + ".join(f"({c})*t^{self.start + k}" for k, c in enumerate(self.coefficients) if c)
        return f"FormalLaurentSeries({terms or '0'} + O(t^{self.precision}))"


# ---------------------------------------------------------------------------
# tame symbol

def _order_and_lead(f, point):
    if isinstance(f, FormalLaurentSeries):
        if point not in (0, None):
            raise ArithmeticDomainError("formal series are expanded at t = 0")
        return f.valuation, f.leading
    if isinstance(f, Poly):
        f = RationalFunction(f)
    if not isinstance(f, RationalFunction) or not f:
        raise ArithmeticDomainError("tame symbol needs nonzero functions")
    exp = laurent_at(f, INFINITY if point is INFINITY else (point or 0), 1)
    lead = exp.coefficients[0]
    return exp.start, Fp(lead, f.p) if f.p else lead


def tame_symbol(f, g, point=0):
    """``(-1)^(mn) (f^-n g^m)(point)`` with ``m = ord f``, ``n = ord g``.

    ``f^-n g^m`` is a unit at the point, so its value is
    ``lead(f)^-n * lead(g)^m``.
    """
    m, lf = _order_and_lead(f, point)
    n, lg = _order_and_lead(g, point)
    sign = -1 if (m * n) % 2 else 1
    return sign * lf ** (-n) * lg**m


# ---------------------------------------------------------------------------
# residues

class _ResidueRing:
    """``Q[t] / (S)`` for a squarefree ``S``: a product of number fields."""

    def __init__(self, modulus: Poly):
        if modulus.p or modulus.degree < 1:
            raise ArithmeticDomainError("residue ring needs a nonconstant rational modulus")
        self.modulus = modulus.monic()

    def zero(self) -> "_ResidueElement":
        return _ResidueElement(self, Poly(()))

    def element(self, poly: Poly) -> "_ResidueElement":
        return _ResidueElement(self, poly % self.modulus)

    def trace(self, x: "_ResidueElement") -> Fraction:
        d = self.modulus.degree
        basis = Poly((1,))
        t = Poly.t()
        total = Fraction(0)
        for i in range(d):
            total += (x.poly * basis % self.modulus).coeff(i)
            basis = basis * t % self.modulus
        return total


class _ResidueElement:
    __slots__ = ("ring", "poly")

    def __init__(self, ring: _ResidueRing, poly: Poly):
        self.ring, self.poly = ring, poly

    def _wrap(self, poly):
        return _ResidueElement(self.ring, poly % self.ring.modulus)

    def __add__(self, o):
        return self._wrap(self.poly + o.poly)

    def __sub__(self, o):
        return self._wrap(self.poly - o.poly)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return self._wrap(self.poly.scale(o))
        return self._wrap(self.poly * o.poly)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.poly)

    def inverse(self):
        d, u, _ = poly_xgcd(self.poly, self.ring.modulus)
        if d.degree != 0:
            raise ZeroDivisionError("element is not a unit of the residue ring")
        return self._wrap(u)

    def __truediv__(self, o):
        return self * o.inverse()

    def __bool__(self):
        return bool(self.poly)


def _taylor_at_root(f: Poly, ring: _ResidueRing, n: int) -> list[_ResidueElement]:
    """Coefficients of ``f(theta + u)`` in ``u`` up to ``u^(n-1)``, with
    ``theta`` the class of ``t`` in the residue ring."""
    out = []
    d = f
    fact = 1
    for k in range(n):
        if k:
            fact *= k
        out.append(ring.element(d.scale(Fraction(1, fact))))
        d = d.derivative()
    return out


def _trace_residue(R: RationalFunction, S: Poly, k: int) -> Fraction:
    """Sum of the residues of ``R dt`` over the roots of the squarefree ``S``,
    where every root of ``S`` is a root of ``R.den`` of exact order ``k``."""
    ring = _ResidueRing(S)
    num = _taylor_at_root(R.num, ring, k)
    den = _taylor_at_root(R.den, ring, 2 * k)[k:]
    lead_inv = den[0].inverse()
    q: list[_ResidueElement] = []
    for i in range(k):
        acc = num[i]
        for j in range(1, i + 1):
            acc = acc - den[j] * q[i - j]
        q.append(acc * lead_inv)
    return ring.trace(q[k - 1])


def residue(omega, point=0):
    """Residue of a differential ``omega``.

    ``omega`` is either a :class:`FormalLaurentSeries` ``A`` (meaning
    ``A dt`` at ``t = 0``) or a rational function ``R`` meaning ``R dt``.
    ``point`` is a rational number, ``INFINITY``, or a squarefree rational
    polynomial ``S`` (the result is then the sum of residues over the roots
    of ``S``, i.e. a trace).
    """
    if isinstance(omega, FormalLaurentSeries):
        if point not in (0, None):
            raise ArithmeticDomainError("formal series are expanded at t = 0")
        return omega.coefficient(-1)
    R = RationalFunction(omega) if isinstance(omega, Poly) else omega
    if not isinstance(R, RationalFunction):
        raise TypeError("residue needs a Laurent series or a rational function")
    if not R:
        return Fraction(0) if not R.p else 0
    if point is INFINITY:
        # R(t) dt = -R(1/u) u^-2 du
        S = _at_infinity(R) * RationalFunction(Poly((1,), R.p), Poly.t(R.p) ** 2)
        return -residue(S, 0)
    if isinstance(point, Poly):
        if R.p:
            raise ArithmeticDomainError("trace residues are implemented over Q")
        total = Fraction(0)
        for s, k in squarefree_decomposition(R.den):
            g = poly_gcd(s, point)
            if g.degree > 0:
                total += _trace_residue(R, g, k)
        return total
    exp = laurent_at(R, point, 1)
    if exp.start >= 0:
        return exp.coefficients[0] * 0
    return laurent_at(R, point, -exp.start).coefficients[-1]


def residue_fdg(f, g, point=0):
    """Residue of ``f dg`` for rational functions ``f`` and ``g``."""
    f = RationalFunction(f) if isinstance(f, Poly) else f
    g = RationalFunction(g) if isinstance(g, Poly) else g
    return residue(f * g.derivative(), point)


@dataclass(frozen=True)
class ResidueSumWitness:
    finite: tuple[tuple[str, Fraction], ...]  # (pole locus, summed residue)
    at_infinity: Fraction
    total: Fraction
    holds: bool


def residue_sum_check(f, g) -> ResidueSumWitness:
    """Sum of the residues of ``f dg`` over all points of the projective line."""
    f = RationalFunction(f) if isinstance(f, Poly) else f
    g = RationalFunction(g) if isinstance(g, Poly) else g
    if not f or not g:
        raise ArithmeticDomainError("residue sum needs nonzero f and g")
    if f.p or g.p:
        raise ArithmeticDomainError("residue sums are checked over Q")
    if g.num.degree <= 0 and g.den.degree <= 0:
        raise ArithmeticDomainError("g must be nonconstant")
    R = f * g.derivative()
    finite = []
    if R and R.den.degree > 0:
        for s, k in squarefree_decomposition(R.den):
            for q, _ in factor_over_q(s)[1]:
                finite.append((str(q.monic()), _trace_residue(R, q, k)))
    at_inf = residue(R, INFINITY) if R else Fraction(0)
    total = sum((v for _, v in finite), Fraction(0)) + at_inf
    return ResidueSumWitness(tuple(finite), at_inf, total, total == 0)


def residue_pairing(A: FormalLaurentSeries, B: FormalLaurentSeries):
    """``res(A dB) = sum_{i+j=0} j a_i b_j``."""
    lo_a, lo_b = A.start, B.start
    hi = -lo_b  # largest i with a possibly nonzero partner
    zero = _zero_like(A.coefficients[0]) if A.coefficients else Fraction(0)
    if lo_a > hi:
        return zero
    if hi >= A.precision or -lo_a >= B.precision:
        raise InsufficientPrecisionError("series precision does not cover every pair i + j = 0")
    total = zero
    for i in range(lo_a, hi + 1):
        j = -i
        total = total + j * A.coefficient(i) * B.coefficient(j)
    return total


__all__ = [
    "FormalLaurentSeries",
    "GaussWitness",
    "HilbertProductWitness",
    "InsufficientPrecisionError",
    "ResidueSumWitness",
    "gauss_reciprocity_check",
    "hensel_oracle",
    "hilbert_product_check",
    "hilbert_quadratic",
    "hilbert_symbol_table",
    "legendre",
    "relevant_places",
    "residue",
    "residue_fdg",
    "residue_pairing",
    "residue_sum_check",
    "tame_symbol",
]
