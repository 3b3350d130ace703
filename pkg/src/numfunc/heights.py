"""Heights of rational points: the naive projective height, its
product-over-places form, bounded-height enumeration, the power map, and the
canonical height on elliptic curves through the doubling limit."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import mpmath

from .core import ArithmeticDomainError, ExactLog, factor_integer, form_resultant, valuation_int


class PrecisionBudgetError(ArithmeticDomainError):
    """The tracked precision ran out before the requested accuracy."""


class OffCurveError(ArithmeticDomainError):
    pass


# ---------------------------------------------------------------------------
# projective points

@dataclass(frozen=True)
class ProjectivePoint:
    coordinates: tuple[int, ...]

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coordinates]
        if len(cs) < 2:
            raise ArithmeticDomainError("a projective point needs at least two coordinates")
        if not any(cs):
            raise ArithmeticDomainError("all coordinates are zero")
        den = reduce(math.lcm, (c.denominator for c in cs), 1)
        ints = [int(c * den) for c in cs]
        g = reduce(math.gcd, ints, 0)
        ints = [x // g for x in ints]
        if next(x for x in ints if x) < 0:
            ints = [-x for x in ints]
        object.__setattr__(self, "coordinates", tuple(ints))

    @classmethod
    def of(cls, *coords) -> "ProjectivePoint":
        return cls(tuple(coords))

    @property
    def dimension(self) -> int:
        return len(self.coordinates) - 1

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.coordinates) + ")"


@dataclass(frozen=True)
class HeightValue:
    approx: float
    bound: float = 0.0
    exact: ExactLog | None = None

    def __str__(self):
        if self.exact is not None:
            return str(self.exact)
        return f"{self.approx:.15g} +/- {self.bound:.3g}"


def naive_height(P) -> HeightValue:
    """``log max |x_i|`` of the normalized coordinates."""
    if not isinstance(P, ProjectivePoint):
        P = ProjectivePoint(tuple(P))
    m = max(abs(c) for c in P.coordinates)
    e = ExactLog(m)
    return HeightValue(float(e), 0.0, e)


def multi_place_height(coords) -> HeightValue:
    """``prod_v max_i |x_i|_v`` over all places of Q, exactly.

    Only primes dividing some numerator or denominator can give a factor
    other than 1.
    """
    cs = [Fraction(c) for c in coords]
    if not any(cs):
        raise ArithmeticDomainError("all coordinates are zero")
    primes = set()
    for c in cs:
        for part in (c.numerator, c.denominator):
            if abs(part) > 1:
                primes.update(q for q, _ in factor_integer(part)[1])
    total = max(abs(c) for c in cs)
    for p in primes:
        v = min(valuation_int(c.numerator, p) - valuation_int(c.denominator, p) for c in cs if c)
        total *= Fraction(p) ** (-v)
    e = ExactLog(total)
    return HeightValue(float(e), 0.0, e)


def enumerate_points(n: int, bound: int) -> list[ProjectivePoint]:
    """Canonical points of P^n(Q) with ``max |x_i| <= bound``, sorted by
    height and then lexicographically."""
    if n < 1:
        raise ArithmeticDomainError("dimension must be at least 1")
    if bound < 1:
        return []
    rng = range(-bound, bound + 1)
    out = []
    for xs in itertools.product(rng, repeat=n + 1):
        if reduce(math.gcd, xs, 0) != 1:
            continue
        if next(x for x in xs if x) < 0:
            continue
        out.append(xs)
    out.sort(key=lambda xs: (max(map(abs, xs)), xs))
    return [ProjectivePoint(xs) for xs in out]


@dataclass(frozen=True)
class FunctorialityWitness:
    point: ProjectivePoint
    d: int
    image: ProjectivePoint
    image_height: ExactLog
    scaled_height: ExactLog
    holds: bool


def power_map_functoriality_check(P, d: int) -> FunctorialityWitness:
    """``h((x^d : y^d)) = d * h((x : y))`` on P^1."""
    if not isinstance(P, ProjectivePoint):
        P = ProjectivePoint(tuple(P))
    if P.dimension != 1:
        raise ArithmeticDomainError("the power map is checked on P^1")
    if d < 1:
        raise ArithmeticDomainError("d must be positive")
    image = ProjectivePoint(tuple(c**d for c in P.coordinates))
    lhs = naive_height(image).exact
    rhs = d * naive_height(P).exact
    return FunctorialityWitness(P, d, image, lhs, rhs, lhs == rhs)


# ---------------------------------------------------------------------------
# elliptic curves

@dataclass(frozen=True)
class EllipticCurve:
    """``y^2 = x^3 + a x + b``."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if 4 * self.a**3 + 27 * self.b**2 == 0:
            raise ArithmeticDomainError("singular curve: 4a^3 + 27b^2 = 0")

    def contains(self, P: "ECPoint") -> bool:
        if P.is_infinity:
            return True
        return P.y**2 == P.x**3 + self.a * P.x + self.b

    def __str__(self):
        return f"y^2 = x^3 + ({self.a})x + ({self.b})"


@dataclass(frozen=True)
class ECPoint:
    x: Fraction | None = None
    y: Fraction | None = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ArithmeticDomainError("give both coordinates or neither")
        if self.x is not None:
            object.__setattr__(self, "x", Fraction(self.x))
            object.__setattr__(self, "y", Fraction(self.y))

    @classmethod
    def infinity(cls) -> "ECPoint":
        return cls()

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self):
        return self if self.is_infinity else ECPoint(self.x, -self.y)

    def __str__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


def _check(E: EllipticCurve, *pts: ECPoint) -> None:
    for P in pts:
        if not E.contains(P):
            raise OffCurveError(f"{P} is not on {E}")


def _add(E: EllipticCurve, P: ECPoint, Q: ECPoint) -> ECPoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return ECPoint.infinity()
        lam = (3 * P.x**2 + E.a) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam**2 - P.x - Q.x
    return ECPoint(x3, lam * (P.x - x3) - P.y)


def ec_add(E: EllipticCurve, P: ECPoint, Q: ECPoint) -> ECPoint:
    _check(E, P, Q)
    return _add(E, P, Q)


def ec_double(E: EllipticCurve, P: ECPoint) -> ECPoint:
    _check(E, P)
    return _add(E, P, P)


def ec_multiply(E: EllipticCurve, k: int, P: ECPoint) -> ECPoint:
    _check(E, P)
    if k < 0:
        k, P = -k, -P
    acc = ECPoint.infinity()
    while k:
        if k & 1:
            acc = _add(E, acc, P)
        P = _add(E, P, P)
        k >>= 1
    return acc


def x_height(P: ECPoint) -> HeightValue:
    """Naive height of ``x(P)`` as the point ``(num : den)`` of P^1; 0 at O."""
    if P.is_infinity:
        return HeightValue(0.0, 0.0, ExactLog.zero())
    return naive_height(ProjectivePoint((P.x.numerator, P.x.denominator)))


def torsion_order(E: EllipticCurve, P: ECPoint, limit: int = 12) -> int | None:
    """Order of ``P`` if it is at most ``limit`` (rational torsion never exceeds 12)."""
    _check(E, P)
    Q = P
    for k in range(1, limit + 1):
        if Q.is_infinity:
            return k
        Q = _add(E, Q, P)
    return None


class _DoublingTracker:
    """Follows ``h(x(2^k P))`` without forming the exact coordinates.

    On an integral model, ``x(2Q) = phi(X, Z) / psi(X, Z)`` for coprime
    integers ``(X, Z)``, and ``gcd(phi, psi)`` divides the resultant of the
    two forms.  Hence

        h_{k+1} = 4 h_k + log max(|phi|, |psi|)(X, Z)/max(|X|, |Z|)^4 - sum_p g_p log p

    The first term needs only the real point up to scaling; each ``g_p``
    needs only ``(X, Z)`` modulo a power of ``p`` up to a ``p``-adic unit.
    """

    def __init__(self, E: EllipticCurve, P: ECPoint, padic_digits: int, max_steps: int):
        u = integral_model_scale(E)
        a, b = E.a * u**4, E.b * u**6
        assert a.denominator == 1 and b.denominator == 1
        self.a, self.b = int(a), int(b)
        x = P.x * u**2
        X, Z = x.numerator, x.denominator
        self.h0 = float(ExactLog(max(abs(X), abs(Z))))
        phi = [1, 0, -2 * self.a, -8 * self.b, self.a**2]
        psi = [0, 4, 0, 4 * self.a, 4 * self.b]
        res = form_resultant(phi, psi)
        self.primes = [p for p, _ in factor_integer(res)[1]]
        self.log_p = {p: math.log(p) for p in self.primes}
        self.state = {p: (X % p**padic_digits, Z % p**padic_digits, padic_digits) for p in self.primes}
        self.ctx = mpmath.mp.clone()
        self.ctx.dps = 40 + 2 * max_steps
        m = max(abs(X), abs(Z))
        self.real = (self.ctx.mpf(X) / m, self.ctx.mpf(Z) / m)

    def _forms(self, X, Z):
        a, b = self.a, self.b
        X2, Z2 = X * X, Z * Z
        phi = X2 * X2 - 2 * a * X2 * Z2 - 8 * b * X * Z2 * Z + a * a * Z2 * Z2
        psi = 4 * Z * (X2 * X + a * X * Z2 + b * Z2 * Z)
        return phi, psi

    def step(self) -> float:
        """Advance one doubling and return ``delta = h_{k+1} - 4 h_k``."""
        ctx = self.ctx
        phi, psi = self._forms(*self.real)
        m = max(abs(phi), abs(psi))
        eps = ctx.log(m)
        self.real = (phi / m, psi / m)
        delta = float(eps)
        for p in self.primes:
            A, B, n = self.state[p]
            mod = p**n
            phi_p, psi_p = (v % mod for v in self._forms(A, B))
            g = min(_val_mod(phi_p, p, n), _val_mod(psi_p, p, n))
            if g >= n:
                raise PrecisionBudgetError(f"{p}-adic precision exhausted after repeated cancellation")
            n -= g
            mod = p**n
            self.state[p] = ((phi_p // p**g) % mod, (psi_p // p**g) % mod, n)
            delta -= g * self.log_p[p]
        return delta


def _val_mod(v: int, p: int, n: int) -> int:
    """Valuation of a residue modulo ``p^n`` (``n`` when it is zero)."""
    if v == 0:
        return n
    return min(valuation_int(v, p), n)


def doubling_heights(E: EllipticCurve, P: ECPoint, n: int, padic_digits: int = 256) -> list[float]:
    """Tracked ``h(x(2^k P))`` for ``k = 0..n`` on the integral model."""
    _check(E, P)
    tr = _DoublingTracker(E, P, padic_digits, n)
    hs = [tr.h0]
    for _ in range(n):
        hs.append(4 * hs[-1] + tr.step())
    return hs


def integral_model_scale(E: EllipticCurve) -> int:
    """Smallest ``u > 0`` with ``a u^4`` and ``b u^6`` integral."""
    u = 1
    for p, _ in factor_integer(math.lcm(E.a.denominator, E.b.denominator))[1]:
        e = max(-(-valuation_int(E.a.denominator, p) // 4), -(-valuation_int(E.b.denominator, p) // 6))
        u *= p**e
    return u


def canonical_height(
    E: EllipticCurve,
    P: ECPoint,
    tol: float = 1e-8,
    max_steps: int = 60,
    padic_digits: int = 256,
) -> HeightValue:
    """``lim 4^-n h(x(2^n P))``.

    With ``h_{k+1} = 4 h_k + delta_k`` the partial values are
    ``h_0 + sum_{k<n} 4^-(k+1) delta_k`` and the tail is at most
    ``sup|delta| 4^-n / 3``; the supremum is estimated by the largest observed
    ``|delta|`` times a safety factor 4.  Torsion points return exactly 0.
    """
    _check(E, P)
    if tol <= 0:
        raise ArithmeticDomainError("tol must be positive")
    if torsion_order(E, P) is not None:
        return HeightValue(0.0, 0.0, ExactLog.zero())
    tr = _DoublingTracker(E, P, padic_digits, max_steps)
    value = tr.h0
    worst = 0.0
    for n in range(1, max_steps + 1):
        delta = tr.step()
        worst = max(worst, abs(delta))
        value += delta / 4.0**n
        bound = 4 * worst / (3 * 4.0**n)
        if n >= 3 and bound < tol:
            return HeightValue(value, bound)
    raise PrecisionBudgetError(f"no convergence to tol={tol} within {max_steps} doublings")
