"""Intersections of horizontal curves on the arithmetic surface Spec Z[t].

A horizontal curve is cut out by a primitive irreducible ``f`` in Z[t].  Two
distinct curves meet in finitely many closed points ``(p, gbar)`` lying over
the primes dividing their resultant; the local index at such a point is
``log #k(x)`` times the length of the local quotient of Z[t] by ``(f, g)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    ArithmeticDomainError,
    ExactLog,
    Poly,
    factor_integer,
    factor_poly_mod_p,
    is_irreducible_mod_p,
    is_irreducible_over_q,
    poly_gcd,
    reduce_mod_p,
    require_prime,
    resultant,
    valuation_int,
    valuation_q,
)


class CommonComponentError(ArithmeticDomainError):
    """The two curves coincide."""


class UnsupportedIntersectionError(ArithmeticDomainError):
    """Pointwise indices are only computed when one curve is a section."""


@dataclass(frozen=True)
class HorizontalCurve:
    f: Poly

    def __post_init__(self):
        f = self.f
        if not isinstance(f, Poly) or f.p:
            raise ArithmeticDomainError("a horizontal curve needs a polynomial over Z")
        if f.degree < 1:
            raise ArithmeticDomainError("a horizontal curve needs degree >= 1")
        if any(Fraction(c).denominator != 1 for c in f.coeffs):
            raise ArithmeticDomainError("coefficients must be integers")
        f = f.primitive()
        if f.lc < 0:
            f = -f
        if not is_irreducible_over_q(f):
            raise ArithmeticDomainError(f"{f} is reducible over Q")
        object.__setattr__(self, "f", f)

    @classmethod
    def section(cls, a) -> "HorizontalCurve":
        """The curve ``t = a``, i.e. ``s*t - r`` for ``a = r/s``."""
        a = Fraction(a)
        return cls(Poly((-a.numerator, a.denominator)))

    @property
    def is_section(self) -> bool:
        return self.f.degree == 1

    @property
    def value(self) -> Fraction:
        """The rational ``r/s`` of a section."""
        if not self.is_section:
            raise UnsupportedIntersectionError(f"{self.f} is not a section")
        return -Fraction(self.f.coeff(0)) / Fraction(self.f.coeff(1))

    def __str__(self):
        return str(self.f)


@dataclass(frozen=True)
class SurfacePoint:
    p: int
    gbar: Poly

    def __post_init__(self):
        require_prime(self.p)
        if self.gbar.p != self.p or not self.gbar.is_monic() or not is_irreducible_mod_p(self.gbar):
            raise ArithmeticDomainError(f"{self.gbar} is not monic irreducible over F_{self.p}")

    @property
    def residue_degree(self) -> int:
        return self.gbar.degree

    @property
    def residue_field_size(self) -> int:
        return self.p**self.gbar.degree

    def __str__(self):
        return f"({self.p}, {self.gbar})"


@dataclass(frozen=True)
class IntersectionCycle:
    """Located entries ``(x, length)`` plus per-prime totals that could not
    be assigned to a single affine point (``(p, multiplicity)``)."""

    entries: tuple[tuple[SurfacePoint, int], ...]
    unlocated: tuple[tuple[int, int], ...]
    resultant: int

    @property
    def total(self) -> ExactLog:
        out = ExactLog.zero()
        for x, m in self.entries:
            out = out + ExactLog.of_prime_power(x.p, m * x.residue_degree)
        for p, m in self.unlocated:
            out = out + ExactLog.of_prime_power(p, m)
        return out

    def multiplicity_at(self, p: int) -> int:
        """``m_p`` in units of ``log p``."""
        located = sum(m * x.residue_degree for x, m in self.entries if x.p == p)
        return located + sum(m for q, m in self.unlocated if q == p)

    @property
    def exact(self) -> bool:
        return self.total.arg == abs(self.resultant)


def _as_curve(C) -> HorizontalCurve:
    if isinstance(C, HorizontalCurve):
        return C
    if isinstance(C, Poly):
        return HorizontalCurve(C)
    return HorizontalCurve.section(C)


def _integer_resultant(C: HorizontalCurve, D: HorizontalCurve) -> int:
    if C.f == D.f:
        raise CommonComponentError(f"{C} and {D} are the same curve")
    r = resultant(C.f, D.f)
    # distinct irreducible primitive polynomials are coprime
    assert r != 0
    return int(r)


def common_points(C, D) -> list[SurfacePoint]:
    """Closed points ``(p, gbar)`` with ``p | Res(f, g)`` and ``gbar | gcd(fbar, gbar)``."""
    C, D = _as_curve(C), _as_curve(D)
    res = _integer_resultant(C, D)
    out = []
    if abs(res) == 1:
        return out
    for p, _ in factor_integer(res)[1]:
        fb, gb = reduce_mod_p(C.f, p), reduce_mod_p(D.f, p)
        if not fb or not gb:
            continue
        h = poly_gcd(fb, gb)
        if h.degree < 1:
            continue
        for q, _ in factor_poly_mod_p(h)[1]:
            out.append(SurfacePoint(p, q))
    return out


def _section_and_other(C: HorizontalCurve, D: HorizontalCurve):
    if D.is_section:
        return D, C
    if C.is_section:
        return C, D
    raise UnsupportedIntersectionError("pointwise indices need at least one section")


def local_index(C, D, x: SurfacePoint) -> ExactLog:
    """``log #k(x) * length`` at ``x``; one of the curves must be a section.

    The section ``s t - r`` meets the fiber over ``p`` only at ``t = r/s mod p``,
    so the whole ``p``-part of the resultant sits at that point.
    """
    C, D = _as_curve(C), _as_curve(D)
    S, other = _section_and_other(C, D)
    if S.f.coeff(1) % x.p == 0:
        raise ArithmeticDomainError(f"section {S} is not {x.p}-integral")
    if x not in common_points(C, D):
        return ExactLog.zero()
    m = valuation_int(_integer_resultant(other, S), x.p)
    return ExactLog.of_prime_power(x.p, m)


def local_multiplicity(C, D, x: SurfacePoint) -> int:
    """Length of the local quotient at ``x`` (index divided by ``log #k(x)``)."""
    idx = local_index(C, D, x)
    return valuation_q(idx.arg, x.p) // x.residue_degree


def total_intersection(C, D) -> IntersectionCycle:
    """Per-prime multiplicities ``nu_p(Res(f, g))`` with exact witness ``|Res|``.

    A prime's contribution is located at a single closed point when the
    fiber holds exactly one common point and one leading coefficient is a
    ``p``-adic unit (then ``Z_p[t]/(f)`` is finite over ``Z_p`` and the whole
    valuation is that point's length).  Otherwise it is reported per prime.
    """
    C, D = _as_curve(C), _as_curve(D)
    res = _integer_resultant(C, D)
    entries: list[tuple[SurfacePoint, int]] = []
    unlocated: list[tuple[int, int]] = []
    if abs(res) != 1:
        points = common_points(C, D)
        for p, m in factor_integer(res)[1]:
            here = [x for x in points if x.p == p]
            unit_lead = C.f.lc % p != 0 or D.f.lc % p != 0
            if len(here) == 1 and unit_lead and m % here[0].residue_degree == 0:
                entries.append((here[0], m // here[0].residue_degree))
            else:
                unlocated.append((p, m))
    cycle = IntersectionCycle(tuple(entries), tuple(unlocated), res)
    assert cycle.exact
    return cycle


def tangency_order(a, b, p: int) -> int:
    """``nu_p(a - b)`` for the sections ``t = a`` and ``t = b``.

    This is the local multiplicity at their common point; with this count a
    transversal crossing has order 1.
    """
    require_prime(p)
    a, b = Fraction(a), Fraction(b)
    for c in (a, b):
        if c.denominator % p == 0:
            raise ArithmeticDomainError(f"section t = {c} is not {p}-integral")
    if a == b:
        raise CommonComponentError("the sections coincide")
    return valuation_q(a - b, p)
