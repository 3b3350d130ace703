"""Valuations and norms at the places of Q, F_p(t) and the rational model of C(t),
with exact checks of the product and sum formulas."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    ArithmeticDomainError,
    ExactLog,
    Poly,
    RationalFunction,
    factor_integer,
    factor_over_q,
    factor_poly_mod_p,
    is_irreducible_mod_p,
    require_prime,
    valuation_q,
)


class UndefinedValuationError(ArithmeticDomainError):
    """Valuation of zero."""


class WorldMismatchError(TypeError):
    """A number was paired with a function-field place or vice versa."""


class Place:
    """Base class of all places."""

    is_archimedean = False


@dataclass(frozen=True)
class FinitePrimeQ(Place):
    p: int

    def __post_init__(self):
        require_prime(self.p)

    def __str__(self):
        return str(self.p)


@dataclass(frozen=True)
class ArchimedeanQ(Place):
    is_archimedean = True

    def __str__(self):
        return "inf"


@dataclass(frozen=True)
class FunctionFieldPoint(Place):
    base: int
    P: Poly

    def __post_init__(self):
        require_prime(self.base)
        if self.P.p != self.base or not self.P.is_monic() or not is_irreducible_mod_p(self.P):
            raise ArithmeticDomainError(f"{self.P!r} is not a monic irreducible over F_{self.base}")

    def __str__(self):
        return f"({self.P}) over F_{self.base}"


@dataclass(frozen=True)
class FunctionFieldInfinity(Place):
    base: int

    def __post_init__(self):
        require_prime(self.base)

    def __str__(self):
        return f"inf over F_{self.base}"


@dataclass(frozen=True)
class RationalPoint(Place):
    t0: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t0", Fraction(self.t0))

    def __str__(self):
        return f"t = {self.t0}"


@dataclass(frozen=True)
class RationalInfinity(Place):
    def __str__(self):
        return "t = inf"


@dataclass(frozen=True)
class ValuationResult:
    value: int
    residue_degree: int = 1


def _as_rational(f) -> Fraction:
    if isinstance(f, (RationalFunction, Poly)):
        raise WorldMismatchError("a place of Q needs a rational number")
    return Fraction(f)


def _as_function(f, p: int) -> RationalFunction:
    if isinstance(f, Poly):
        f = RationalFunction(f)
    if isinstance(f, (int, Fraction)) and not isinstance(f, bool):
        f = RationalFunction.const(f, p)
    if not isinstance(f, RationalFunction):
        raise WorldMismatchError("a function-field place needs a rational function")
    if f.p != p:
        raise WorldMismatchError(f"function over F_{f.p or 'Q'} at a place over F_{p or 'Q'}")
    return f


def poly_order(f: Poly, P: Poly) -> int:
    """Exact power of ``P`` dividing the nonzero polynomial ``f``."""
    if not f:
        raise UndefinedValuationError("order of the zero polynomial")
    k = 0
    while True:
        q, r = divmod(f, P)
        if r:
            return k
        f, k = q, k + 1


def function_order(F: RationalFunction, P: Poly) -> int:
    return poly_order(F.num, P) - poly_order(F.den, P)


def val(f, v: Place) -> ValuationResult:
    if isinstance(v, FinitePrimeQ):
        x = _as_rational(f)
        if x == 0:
            raise UndefinedValuationError("valuation of zero")
        return ValuationResult(valuation_q(x, v.p))
    if isinstance(v, ArchimedeanQ):
        raise ArithmeticDomainError("the archimedean place has no integer valuation; use norm()")
    if isinstance(v, FunctionFieldPoint):
        F = _as_function(f, v.base)
        if not F:
            raise UndefinedValuationError("valuation of zero")
        return ValuationResult(function_order(F, v.P), v.P.degree)
    if isinstance(v, FunctionFieldInfinity):
        F = _as_function(f, v.base)
        if not F:
            raise UndefinedValuationError("valuation of zero")
        return ValuationResult(F.degree_at_infinity())
    if isinstance(v, RationalPoint):
        F = _as_function(f, 0)
        if not F:
            raise UndefinedValuationError("valuation of zero")
        return ValuationResult(function_order(F, Poly((-v.t0, 1))))
    if isinstance(v, RationalInfinity):
        F = _as_function(f, 0)
        if not F:
            raise UndefinedValuationError("valuation of zero")
        return ValuationResult(F.degree_at_infinity())
    raise TypeError(f"unknown place {v!r}")


def residue_field_size(v: Place) -> int:
    if isinstance(v, FinitePrimeQ):
        return v.p
    if isinstance(v, FunctionFieldPoint):
        return v.base**v.P.degree
    if isinstance(v, FunctionFieldInfinity):
        return v.base
    raise ArithmeticDomainError(f"{v} has no finite residue field")


def norm(f, v: Place, c: Fraction = Fraction(2)) -> Fraction:
    """Multiplicative norm; exact at every place.

    Non-archimedean places give ``#k(v)^(-val)``; the rational-coefficient
    places use the base ``c``; the archimedean place gives ``|f|``.
    """
    if isinstance(v, ArchimedeanQ):
        x = _as_rational(f)
        if x == 0:
            raise UndefinedValuationError("norm of zero")
        return abs(x)
    nu = val(f, v).value
    if isinstance(v, (RationalPoint, RationalInfinity)):
        return Fraction(c) ** (-nu)
    return Fraction(residue_field_size(v)) ** (-nu)


# ---------------------------------------------------------------------------
# product and sum formulas

@dataclass(frozen=True)
class ProductFormulaWitness:
    f: Fraction
    local: tuple[tuple[int, int], ...]  # (p, val_p(f))
    finite_product: Fraction  # prod p^(-val_p)
    archimedean: Fraction  # |f|
    holds: bool

    @property
    def log_form(self) -> ExactLog:
        """``sum val_p(f) log p`` as an exact log; equals ``log|f|``."""
        return ExactLog(1 / self.finite_product)


def product_formula_check_q(f) -> ProductFormulaWitness:
    x = Fraction(f)
    if x == 0:
        raise UndefinedValuationError("product formula needs f != 0")
    local = []
    for part, sgn in ((x.numerator, 1), (x.denominator, -1)):
        if abs(part) != 1:
            local.extend((q, sgn * e) for q, e in factor_integer(part)[1])
    local.sort()
    prod = Fraction(1)
    for q, nu in local:
        prod *= Fraction(q) ** (-nu)
    arch = norm(x, ArchimedeanQ())
    return ProductFormulaWitness(x, tuple(local), prod, arch, prod * arch == 1)


@dataclass(frozen=True)
class SumFormulaWitness:
    terms: tuple[tuple[Poly, int, int], ...]  # (place polynomial, order, degree)
    order_at_infinity: int
    total: int
    holds: bool


def sum_formula_check_ff(F: RationalFunction) -> SumFormulaWitness:
    """``sum_P val_P(F) deg P + val_inf(F)`` over the projective line over F_p."""
    if not isinstance(F, RationalFunction) or not F.p:
        raise WorldMismatchError("sum_formula_check_ff needs a rational function over F_p")
    if not F:
        raise UndefinedValuationError("sum formula needs F != 0")
    terms = []
    for part, sgn in ((F.num, 1), (F.den, -1)):
        if part.degree > 0:
            for P, e in factor_poly_mod_p(part)[1]:
                terms.append((P, sgn * e, P.degree))
    terms.sort(key=lambda x: (x[0].degree, x[0].coeffs))
    nu_inf = F.degree_at_infinity()
    total = sum(nu * d for _, nu, d in terms) + nu_inf
    return SumFormulaWitness(tuple(terms), nu_inf, total, total == 0)


def sum_formula_check_rational_coeff(F: RationalFunction) -> SumFormulaWitness:
    """Rational model of the sum formula over C: irreducible factors over Q
    count with their degree (the number of complex points they carry)."""
    if not isinstance(F, RationalFunction) or F.p:
        raise WorldMismatchError("sum_formula_check_rational_coeff needs a function over Q")
    if not F:
        raise UndefinedValuationError("sum formula needs F != 0")
    terms = []
    for part, sgn in ((F.num, 1), (F.den, -1)):
        if part.degree > 0:
            for P, e in factor_over_q(part)[1]:
                terms.append((P.monic(), sgn * e, P.degree))
    terms.sort(key=lambda x: (x[0].degree, x[0].coeffs))
    nu_inf = F.degree_at_infinity()
    total = sum(nu * d for _, nu, d in terms) + nu_inf
    return SumFormulaWitness(tuple(terms), nu_inf, total, total == 0)


def places_of(f: Fraction) -> list[Place]:
    """Finite primes in the support of ``f`` followed by the archimedean place."""
    x = Fraction(f)
    primes = set()
    for part in (x.numerator, x.denominator):
        if abs(part) > 1:
            primes.update(q for q, _ in factor_integer(part)[1])
    return [FinitePrimeQ(q) for q in sorted(primes)] + [ArchimedeanQ()]
