"""Arakelov intersection theory on the projective line over Z.

The Riemann sphere carries the Fubini-Study measure of total mass 1,

    dmu = dA / (pi (1 + |z|^2)^2),

and the Green's function

    log G(z, w) = log|z - w| - 1/2 log(1 + |z|^2) - 1/2 log(1 + |w|^2) + c,

with ``c = 1/2`` fixed by ``int log G(z, .) dmu = 0``.  A horizontal curve
is a primitive irreducible ``f`` in Z[t] or the section at infinity; an
Arakelov divisor adds vertical fibers ``X_p`` and a real multiple of the
fiber at infinity ``X_inf``.

The pairing of distinct horizontal curves is ``log|Res| - sum log G`` over
their complex points (the sign that makes principal divisors pair to zero);
a fiber meets a horizontal curve ``D`` with weight ``deg D`` (times
``log p`` for ``X_p``) and fibers do not meet each other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import (
    INFINITY,
    ArithmeticDomainError,
    ExactLog,
    Poly,
    RationalFunction,
    factor_integer,
    factor_over_q,
    form_resultant,
)
from .surface import HorizontalCurve

GREEN_CONSTANT = 0.5
MAX_ROOT_DEGREE = 12


class DiagonalError(ArithmeticDomainError):
    """Green's function evaluated on the diagonal, or overlapping supports."""


class RootFindingError(ArithmeticDomainError):
    pass


# ---------------------------------------------------------------------------
# Green's function

@dataclass(frozen=True)
class GreenFunction:
    """Admissible Green's function for the unit-mass Fubini-Study measure."""

    c: float = GREEN_CONSTANT
    measure: str = "Fubini-Study, total mass 1"

    def __call__(self, P, Q) -> float:
        return green(P, Q, self.c)


def green(P, Q, c: float = GREEN_CONSTANT) -> float:
    """``log G(P, Q)``; points are complex numbers or ``INFINITY``."""
    if P is INFINITY and Q is INFINITY:
        raise DiagonalError("log G is singular on the diagonal")
    if P is INFINITY or Q is INFINITY:
        z = complex(Q if P is INFINITY else P)
        return -0.5 * math.log1p(abs(z) ** 2) + c
    z, w = complex(P), complex(Q)
    if z == w:
        raise DiagonalError("log G is singular on the diagonal")
    return math.log(abs(z - w)) - 0.5 * math.log1p(abs(z) ** 2) - 0.5 * math.log1p(abs(w) ** 2) + c


def _green_array(P, w: np.ndarray, c: float = GREEN_CONSTANT) -> np.ndarray:
    if P is INFINITY:
        return -0.5 * np.log1p(np.abs(w) ** 2) + c
    z = complex(P)
    return np.log(np.abs(z - w)) - 0.5 * math.log1p(abs(z) ** 2) - 0.5 * np.log1p(np.abs(w) ** 2) + c


def fs_density(w) -> np.ndarray:
    """Density of ``dmu`` against Lebesgue measure on the plane."""
    return 1.0 / (np.pi * (1.0 + np.abs(w) ** 2) ** 2)


# ---------------------------------------------------------------------------
# spherical quadrature

@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error: float


@lru_cache(maxsize=None)
def _rule(res: int, radial: int = 1) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Log-radial Gauss-Legendre panels times a periodic trapezoid in angle."""
    x, w = np.polynomial.legendre.leggauss(16)
    width = 1.0 / (res * radial)
    edges = np.arange(-30.0, 30.0, width)
    v = (edges[:, None] + (x[None, :] + 1) * width / 2).ravel()
    wv = np.tile(w * width / 2, len(edges))
    n_phi = 128 * res * radial
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    return v, wv, phi


def _integrate_once(f, center: complex, res: int) -> float:
    # seen from the center, the bulk of the measure is a feature of relative
    # width about 1/|center| in the log radius
    v, wv, phi = _rule(res, 1 + int(abs(center)) // 4)
    R = math.sqrt(1 + abs(center) ** 2)
    rho = R * np.exp(v)
    total = 0.0
    # chunk the radial nodes to bound memory
    step = 256
    e = np.exp(1j * phi)
    for k in range(0, len(v), step):
        r = rho[k : k + step, None]
        d = r * e[None, :]
        z = center + d
        vals = f(z, d) * fs_density(z) * r * r
        total += float(np.sum(vals.mean(axis=1) * wv[k : k + step]))
    return 2 * np.pi * total


def sphere_integral(f, center=0j, res: int = 1) -> QuadratureResult:
    """``int f dmu`` for ``f`` smooth off ``center`` with at most
    logarithmic singularities at ``center`` and at infinity.

    ``f(z, d)`` receives the nodes ``z`` and their offsets ``d = z - center``
    (computed directly, so ``log|d|`` keeps full precision near the center).

    Polar coordinates about ``center`` with radius ``R e^v`` turn both
    singularities into linear growth in ``v``; the error estimate is the
    change under one refinement of both rules.
    """
    coarse = _integrate_once(f, complex(center), res)
    fine = _integrate_once(f, complex(center), 2 * res)
    return QuadratureResult(fine, abs(fine - coarse) + 1e-14)


@lru_cache(maxsize=4096)
def log_distance_integral(alpha: complex, res: int = 1) -> QuadratureResult:
    """``int log|z - alpha| dmu(z)``."""
    return sphere_integral(lambda z, d: np.log(np.abs(d)), alpha, res)


def green_constant_by_quadrature(res: int = 1) -> QuadratureResult:
    """``c = 1/2 int log(1 + |z|^2) dmu`` from the normalization at ``P = 0``
    (where ``int log|z| dmu = 0`` by the symmetry ``z -> 1/z``)."""
    q = sphere_integral(lambda z, d: 0.5 * np.log1p(np.abs(z) ** 2), 0j, res)
    return QuadratureResult(q.value, q.error)


def green_normalization(P, res: int = 1) -> QuadratureResult:
    """``int log G(P, Q) dmu(Q)``; zero for an admissible Green's function."""
    if P is INFINITY:
        return sphere_integral(lambda w, d: _green_array(P, w), 0j, res)
    z = complex(P)

    def integrand(w, d):
        return np.log(np.abs(d)) - 0.5 * math.log1p(abs(z) ** 2) - 0.5 * np.log1p(np.abs(w) ** 2) + GREEN_CONSTANT

    return sphere_integral(integrand, z, res)


@dataclass(frozen=True)
class LaplacianWitness:
    steps: tuple[float, ...]
    errors: tuple[float, ...]
    orders: tuple[float, ...]


def laplacian_check(P, samples, h0: float = 0.1, levels: int = 3) -> LaplacianWitness:
    """Five-point Laplacian of ``log G(P, .)`` at sample points away from
    ``P`` against ``-2 pi`` times the measure density."""
    samples = np.asarray([complex(s) for s in samples])
    steps, errors = [], []
    h = h0
    for _ in range(levels):
        f0 = _green_array(P, samples)
        lap = (
            _green_array(P, samples + h)
            + _green_array(P, samples - h)
            + _green_array(P, samples + 1j * h)
            + _green_array(P, samples - 1j * h)
            - 4 * f0
        ) / (h * h)
        err = float(np.max(np.abs(-lap / (2 * np.pi) - fs_density(samples))))
        steps.append(h)
        errors.append(err)
        h /= 2
    orders = tuple(math.log2(errors[i] / errors[i + 1]) for i in range(len(errors) - 1))
    return LaplacianWitness(tuple(steps), tuple(errors), orders)


# ---------------------------------------------------------------------------
# complex roots

@dataclass(frozen=True)
class RootSet:
    roots: tuple[complex, ...]
    radii: tuple[float, ...]  # each disc around roots[i] contains exactly one root


@lru_cache(maxsize=4096)
def polynomial_roots(f: Poly, max_iter: int = 1000) -> RootSet:
    """Durand-Kerner iteration with inclusion discs of radius ``n |W_i|``
    (``W_i`` the Weierstrass correction); the discs must be disjoint."""
    n = f.degree
    if f.p or n < 1:
        raise ArithmeticDomainError("roots need a nonconstant rational polynomial")
    if n > MAX_ROOT_DEGREE:
        raise ArithmeticDomainError(f"degree {n} exceeds the supported {MAX_ROOT_DEGREE}")
    lc = float(f.lc)
    a = np.array([float(c) / lc for c in f.coeffs], dtype=complex)
    if n == 1:
        return RootSet((complex(-a[0]),), (0.0,))

    def p(z):
        acc = np.zeros_like(z)
        for c in a[::-1]:
            acc = acc * z + c
        return acc

    def weierstrass(z):
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        return p(z) / np.prod(diff, axis=1)

    bound = 1 + float(np.max(np.abs(a[:-1])))
    z = bound * 0.5 * (0.4 + 0.9j) ** np.arange(n)
    for _ in range(max_iter):
        w = weierstrass(z)
        z = z - w
        if np.max(np.abs(w)) <= 1e-15 * (1 + np.max(np.abs(z))):
            break
    else:
        raise RootFindingError(f"no convergence for {f}")
    radii = n * np.abs(weierstrass(z)) + 4e-16 * (1 + np.abs(z))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= radii[i] + radii[j]:
                raise RootFindingError(f"inclusion discs overlap for {f}")
    order = np.lexsort((z.imag, z.real))
    return RootSet(tuple(complex(z[i]) for i in order), tuple(float(radii[i]) for i in order))


# ---------------------------------------------------------------------------
# divisors

def _key(C):
    if C is INFINITY:
        return (0, ())
    return (C.f.degree, tuple(C.f.coeffs))


def _curve(C):
    if C is INFINITY or isinstance(C, HorizontalCurve):
        return C
    if isinstance(C, Poly):
        return HorizontalCurve(C)
    return HorizontalCurve.section(C)


def curve_degree(C) -> int:
    return 1 if C is INFINITY else C.f.degree


def _form(C) -> list[int]:
    if C is INFINITY:
        return [0, 1]
    return list(reversed(C.f.int_coeffs()))


def _points(C) -> tuple[tuple, tuple[float, ...]]:
    if C is INFINITY:
        return (INFINITY,), (0.0,)
    rs = polynomial_roots(C.f)
    return rs.roots, rs.radii


def _curve_str(C) -> str:
    return "inf" if C is INFINITY else f"({C.f})"


@dataclass(frozen=True)
class ArakelovDivisor:
    """``sum n_C C + sum m_p X_p + a_inf X_inf``.

    ``a_error`` bounds the numerical error in ``a_inf``.
    """

    horizontal: tuple = ()
    vertical: tuple = ()
    a_inf: float = 0.0
    a_error: float = 0.0

    def __post_init__(self):
        h: dict = {}
        for C, n in self.horizontal:
            C = _curve(C)
            h[C] = h.get(C, 0) + n
        v: dict = {}
        for p, n in self.vertical:
            v[p] = v.get(p, 0) + n
        object.__setattr__(self, "horizontal", tuple(sorted(((C, n) for C, n in h.items() if n), key=lambda x: _key(x[0]))))
        object.__setattr__(self, "vertical", tuple(sorted((p, n) for p, n in v.items() if n)))
        object.__setattr__(self, "a_inf", float(self.a_inf))

    @classmethod
    def curve(cls, C, a: float = 0.0) -> "ArakelovDivisor":
        return cls(((_curve(C), 1),), (), a)

    @classmethod
    def fiber(cls, a: float = 1.0) -> "ArakelovDivisor":
        return cls((), (), a)

    @property
    def degree(self) -> int:
        """Degree over the base: ``sum n_C deg C``."""
        return sum(n * curve_degree(C) for C, n in self.horizontal)

    def __add__(self, other: "ArakelovDivisor") -> "ArakelovDivisor":
        return ArakelovDivisor(
            self.horizontal + other.horizontal,
            self.vertical + other.vertical,
            self.a_inf + other.a_inf,
            self.a_error + other.a_error,
        )

    def __neg__(self) -> "ArakelovDivisor":
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "ArakelovDivisor":
        return ArakelovDivisor(
            tuple((C, k * n) for C, n in self.horizontal),
            tuple((p, k * n) for p, n in self.vertical),
            k * self.a_inf,
            abs(k) * self.a_error,
        )

    def __str__(self):
        parts = [f"{n}*{_curve_str(C)}" for C, n in self.horizontal]
        parts += [f"{n}*X_{p}" for p, n in self.vertical]
        parts.append(f"{self.a_inf:.12g}*X_inf")
        return " + ".join(parts)


@dataclass(frozen=True)
class PairingValue:
    finite_part: ExactLog
    archimedean_part: float
    degree_terms: float
    error: float = 0.0
    terms: tuple = field(default=(), compare=False)

    @property
    def total(self) -> float:
        return float(self.finite_part) + self.archimedean_part + self.degree_terms


def arch_pairing(C, D) -> QuadratureResult:
    """``-sum log G(P, Q)`` over the complex points of two horizontal curves."""
    C, D = _curve(C), _curve(D)
    ps, pr = _points(C)
    qs, qr = _points(D)
    total, err = 0.0, 0.0
    for P, rp in zip(ps, pr):
        for Q, rq in zip(qs, qr):
            if P is not INFINITY and Q is not INFINITY:
                dist = abs(P - Q)
                if dist <= rp + rq:
                    raise DiagonalError("the curves share a complex point")
                err += (rp + rq) / (dist - rp - rq) + rp * abs(P) + rq * abs(Q)
            elif P is Q:
                raise DiagonalError("both curves pass through infinity")
            else:
                z, r = (Q, rq) if P is INFINITY else (P, rp)
                err += r * abs(z)
            total -= green(P, Q)
    return QuadratureResult(total, err + 1e-15 * len(ps) * len(qs))


def horizontal_resultant(C, D) -> int:
    """Resultant of the binary forms of two horizontal curves (their
    intersection number over all finite fibers, projectively)."""
    return form_resultant(_form(_curve(C)), _form(_curve(D)))


def arakelov_pairing(Ct: ArakelovDivisor, Dt: ArakelovDivisor) -> PairingValue:
    finite = ExactLog.zero()
    arch, err = 0.0, Ct.a_error * abs(Dt.degree) + Dt.a_error * abs(Ct.degree)
    terms = []
    for C, n in Ct.horizontal:
        for D, m in Dt.horizontal:
            if C == D:
                raise DiagonalError(
                    f"common component {_curve_str(C)}; move one divisor by a principal divisor first"
                )
            res = horizontal_resultant(C, D)
            finite = finite + (n * m) * ExactLog(abs(res))
            a = arch_pairing(C, D)
            arch += n * m * a.value
            err += abs(n * m) * a.error
            terms.append((_curve_str(C), _curve_str(D), res, a.value))
    for p, k in Ct.vertical:
        finite = finite + (k * Dt.degree) * ExactLog(p)
    for p, k in Dt.vertical:
        finite = finite + (k * Ct.degree) * ExactLog(p)
    degree_terms = Ct.a_inf * Dt.degree + Dt.a_inf * Ct.degree
    return PairingValue(finite, arch, degree_terms, err, tuple(terms))


def _log_abs_integral(f: Poly, res: int) -> QuadratureResult:
    """``int log|f| dmu`` as ``log|lc| + sum int log|z - alpha| dmu``."""
    rs = polynomial_roots(f)
    val = math.log(abs(float(f.lc)))
    err = 0.0
    for alpha, r in zip(rs.roots, rs.radii):
        q = log_distance_integral(alpha, res)
        val += q.value
        err += q.error + r
    return QuadratureResult(val, err)


def divisor_of_function(F, res: int = 1) -> ArakelovDivisor:
    """``(F) = zeros - poles`` on P^1 over Z, the fibers ``X_p`` where the
    content of ``F`` has valuation, and ``a_inf = -int log|F| dmu``."""
    if isinstance(F, (int, Fraction)):
        F = RationalFunction.const(F)
    elif isinstance(F, Poly):
        F = RationalFunction(F)
    if not F:
        raise ArithmeticDomainError("the divisor of 0 is undefined")
    if F.p:
        raise ArithmeticDomainError("divisor_of_function works over Q")
    horizontal = []
    content = Fraction(1)
    a, err = 0.0, 0.0
    for part, sign in ((F.num, 1), (F.den, -1)):
        c, factors = factor_over_q(part)
        content *= Fraction(c) ** sign
        for g, e in factors:
            horizontal.append((HorizontalCurve(g), sign * e))
            q = _log_abs_integral(g, res)
            a -= sign * e * q.value
            err += e * q.error
    a -= math.log(abs(content.numerator)) - math.log(content.denominator)
    horizontal.append((INFINITY, F.den.degree - F.num.degree))
    vertical = []
    for part, sign in ((content.numerator, 1), (content.denominator, -1)):
        if abs(part) > 1:
            vertical.extend((p, sign * e) for p, e in factor_integer(part)[1])
    return ArakelovDivisor(tuple(horizontal), tuple(vertical), a, err)


@dataclass(frozen=True)
class InvarianceWitness:
    before: PairingValue
    after: PairingValue
    residual: float
    bound: float
    holds: bool


def linear_equiv_invariance_check(Ct, Dt, F, tol: float = 1e-6, res: int = 1) -> InvarianceWitness:
    """``C.D = C.(D + (F))`` for a rational function ``F``."""
    before = arakelov_pairing(Ct, Dt)
    after = arakelov_pairing(Ct, Dt + divisor_of_function(F, res))
    residual = abs(before.total - after.total)
    bound = max(tol, before.error + after.error)
    return InvarianceWitness(before, after, residual, bound, residual < tol)


def canonical_divisor(pole: int | None = None, res: int = 1) -> ArakelovDivisor:
    """Arakelov divisor of ``omega = dt`` (or ``dt/(t - pole)^2``).

    The norm of ``omega`` is the one induced by the Green's function,
    ``||dz||^2 = |dz ^ dzbar / dmu| / (2 pi e^(2c))``, so
    ``a_inf = -1/2 int log|omega ^ omegabar / dmu| dmu + 1/2 log(2 pi) + c``,
    evaluated by quadrature.
    """
    if pole is None:
        horizontal = ((INFINITY, -2),)
        q = sphere_integral(lambda z, d: math.log(2 * math.pi) + 2 * np.log1p(np.abs(z) ** 2), 0j, res)
        integral, err = q.value, q.error
    else:
        pole = int(pole)
        horizontal = ((HorizontalCurve.section(pole), -2),)
        q = sphere_integral(lambda z, d: math.log(2 * math.pi) + 2 * np.log1p(np.abs(z) ** 2), 0j, res)
        d = log_distance_integral(complex(pole), res)
        integral, err = q.value - 4 * d.value, q.error + 4 * d.error
    a = -0.5 * integral + 0.5 * math.log(2 * math.pi) + GREEN_CONSTANT
    return ArakelovDivisor(horizontal, (), a, 0.5 * err)


def _section_of(Ct: ArakelovDivisor):
    if len(Ct.horizontal) != 1 or Ct.horizontal[0][1] != 1:
        raise ArithmeticDomainError("expected a single section with multiplicity 1")
    C = Ct.horizontal[0][0]
    if C is not INFINITY and C.f.degree != 1:
        raise ArithmeticDomainError(f"{C} is not a section")
    return C


def moving_function(C, m: int) -> RationalFunction:
    """``(s t - r)/(t - m)`` for the section ``t = r/s``; ``1/(t - m)`` at infinity."""
    t = RationalFunction.t()
    if C is INFINITY:
        return 1 / (t - m)
    if C.value == m:
        raise ArithmeticDomainError("the moving point must differ from the section")
    return RationalFunction(C.f) / (t - m)


def self_intersection(Ct, m: int = 7, res: int = 1) -> PairingValue:
    """``C.C`` computed as ``C.(C - (F))`` with ``F`` from :func:`moving_function`."""
    if not isinstance(Ct, ArakelovDivisor):
        Ct = ArakelovDivisor.curve(Ct)
    C = _section_of(Ct)
    moved = Ct - divisor_of_function(moving_function(C, m), res)
    return arakelov_pairing(Ct, moved)


@dataclass(frozen=True)
class AdjunctionWitness:
    section: str
    canonical_term: float
    self_term: float
    residual: float
    holds: bool


def adjunction_check(C, tol: float = 1e-5, m: int = 7, res: int = 1) -> AdjunctionWitness:
    """``C.(omega) + C.C = 0`` for a section; the infinity section uses
    ``omega = dt/t^2`` so that the canonical divisor avoids it."""
    Ct = C if isinstance(C, ArakelovDivisor) else ArakelovDivisor.curve(C)
    S = _section_of(Ct)
    omega = canonical_divisor(0 if S is INFINITY else None, res)
    k = arakelov_pairing(Ct, omega).total
    s = self_intersection(Ct, m, res).total
    r = abs(k + s)
    return AdjunctionWitness(_curve_str(S), k, s, r, r < tol)


HYPERPLANE_WEIGHT = 0.5


def hyperplane_divisor(a: float = HYPERPLANE_WEIGHT) -> ArakelovDivisor:
    """The infinity section with fiber coefficient ``a``; with ``a = 1/2``
    its pairing with the section ``(r : s)`` is ``1/2 log(r^2 + s^2)``."""
    return ArakelovDivisor(((INFINITY, 1),), (), a)


def height_pairing(r: int, s: int) -> PairingValue:
    """Pairing of the section ``t = r/s`` with :func:`hyperplane_divisor`."""
    if s == 0:
        raise ArithmeticDomainError("the section at infinity is the hyperplane itself")
    return arakelov_pairing(ArakelovDivisor.curve(Fraction(r, s)), hyperplane_divisor())

