"""Truncated expansions in completed fields: p-adic digits of rationals,
Laurent expansions of rational functions, and the valuation metric."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    INFINITY,
    ArithmeticDomainError,
    Poly,
    RationalFunction,
    poly_xgcd,
    require_prime,
    valuation_q,
)
from .places import (
    ArchimedeanQ,
    FinitePrimeQ,
    FunctionFieldInfinity,
    FunctionFieldPoint,
    Place,
    RationalInfinity,
    RationalPoint,
    function_order,
    val,
)


@dataclass(frozen=True)
class PAdicExpansion:
    p: int
    start: int | None  # None for the zero expansion
    digits: tuple[int, ...]
    precision: int

    @property
    def is_zero(self) -> bool:
        return self.start is None

    def value(self) -> Fraction:
        """The truncated sum ``sum a_i p^(start+i)``."""
        if self.is_zero:
            return Fraction(0)
        return sum(Fraction(self.p) ** (self.start + i) * a for i, a in enumerate(self.digits))


def p_adic_digits(f, p: int, n: int) -> PAdicExpansion:
    """First ``n`` base-``p`` digits of ``f`` in ``Q_p``, digits in ``{0..p-1}``."""
    require_prime(p)
    if n < 0:
        raise ArithmeticDomainError("precision must be nonnegative")
    x = Fraction(f)
    if x == 0:
        return PAdicExpansion(p, None, (), n)
    start = valuation_q(x, p)
    u = x / Fraction(p) ** start
    digits = []
    for _ in range(n):
        a = u.numerator * pow(u.denominator, -1, p) % p
        digits.append(a)
        u = (u - a) / p
    return PAdicExpansion(p, start, tuple(digits), n)


@dataclass(frozen=True)
class LaurentExpansion:
    """``F = sum c_i * L^(start+i) + O(L^(start+precision))``.

    ``L`` is the local parameter: ``t - t0`` at a rational center, ``1/t`` at
    infinity, or an irreducible ``P`` (then each ``c_i`` is a polynomial of
    degree ``< deg P``).
    """

    center: object
    start: int | None
    coefficients: tuple
    precision: int

    @property
    def is_zero(self) -> bool:
        return self.start is None


def _local_parameter(center, p: int) -> Poly:
    if isinstance(center, Poly):
        if center.p != p:
            raise ArithmeticDomainError("center and function live over different fields")
        return center.monic()
    return Poly((-Fraction(center), 1), p) if not p else Poly((-int(center), 1), p)


def _at_infinity(F: RationalFunction) -> RationalFunction:
    """``F(1/u)`` as a rational function of ``u``."""
    dn, dd = F.num.degree, F.den.degree
    d = max(dn, dd)
    return RationalFunction(F.num.reverse(d), F.den.reverse(d))


def p_adic_expand(F: RationalFunction, P: Poly, n: int) -> tuple[int, list[Poly]]:
    """``F = sum c_i P^(v+i)`` with ``deg c_i < deg P``; returns ``(v, [c_i])``."""
    v = function_order(F, P)
    G = F * RationalFunction(P) ** (-v)
    out = []
    for _ in range(n):
        inv = _inverse_mod(G.den, P)
        c = G.num * inv % P
        out.append(c)
        G = (G - RationalFunction(c)) / RationalFunction(P)
    return v, out


def _inverse_mod(a: Poly, m: Poly) -> Poly:
    d, u, _ = poly_xgcd(a % m, m)
    if d.degree != 0:
        raise ArithmeticDomainError("not invertible modulo the local parameter")
    return u % m


def laurent_at(F, center, n: int) -> LaurentExpansion:
    """Laurent expansion of ``F`` at a rational point, at infinity, or at an
    irreducible polynomial (coefficients then are residues mod ``P``)."""
    if isinstance(F, Poly):
        F = RationalFunction(F)
    if not F:
        return LaurentExpansion(center, None, (), n)
    p = F.p
    if center is INFINITY:
        G = _at_infinity(F)
        P = Poly.t(p)
    else:
        G = F
        P = _local_parameter(center, p)
    v, cs = p_adic_expand(G, P, n)
    if P.degree == 1:
        coeffs = tuple(c.coeff(0) for c in cs)
    else:
        coeffs = tuple(cs)
    return LaurentExpansion(center, v, coeffs, n)


def metric(x, y, v: Place, c: Fraction = Fraction(2)):
    """``rho(x, y) = base^(-val(x - y))`` with base ``p``, ``p^deg P`` or ``c``."""
    diff = x - y
    if not diff:
        return Fraction(0)
    if isinstance(v, ArchimedeanQ):
        return abs(Fraction(diff))
    nu = val(diff, v).value
    if isinstance(v, FinitePrimeQ):
        base = Fraction(v.p)
    elif isinstance(v, FunctionFieldPoint):
        base = Fraction(v.base) ** v.P.degree
    elif isinstance(v, FunctionFieldInfinity):
        base = Fraction(v.base)
    elif isinstance(v, (RationalPoint, RationalInfinity)):
        base = Fraction(c)
        if base <= 1:
            raise ArithmeticDomainError("metric base c must exceed 1")
    else:
        raise TypeError(f"unknown place {v!r}")
    return base ** (-nu)
