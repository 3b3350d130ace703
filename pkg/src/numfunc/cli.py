"""Command-line front end.

Every computation is a subcommand; results print as aligned text or, with
``--json``, as a stable JSON report.  Exit status: 0 success, 1 a
verification failed, 2 usage error.

Expressions use a small grammar over integers, ``/``, ``t``, ``+ - * ^``
and parentheses (see the README for the EBNF).
"""
from __future__ import annotations

import argparse
import json
import math
import random
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import arakelov, completions, core, heights, places, surface, symbols
from .core import INFINITY, ArithmeticDomainError, ExactLog, Poly, RationalFunction

DEFAULT_SEED = 20240601


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# expression grammar

_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|([-+*/^()]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"unexpected character {text[pos]!r} in {text!r}")
        out.append(m.group(m.lastindex))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text: str, p: int):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.p = p

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise UsageError(f"malformed expression {self.text!r}")
        self.i += 1
        return tok

    def const(self, c) -> RationalFunction:
        return RationalFunction.const(Fraction(c), self.p)

    def parse(self) -> RationalFunction:
        if not self.tokens:
            raise UsageError("empty expression")
        val = self.expr()
        if self.peek() is not None:
            raise UsageError(f"trailing input in {self.text!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while True:
            tok = self.peek()
            if tok in ("*", "/"):
                self.take()
                rhs = self.factor()
                if tok == "/":
                    if not rhs:
                        raise UsageError("division by zero")
                    val = val / rhs
                else:
                    val = val * rhs
            elif tok is not None and (tok == "t" or tok == "(" or tok.isdigit()):
                val = val * self.factor()  # juxtaposition, e.g. 5t
            else:
                return val

    def factor(self):
        if self.peek() in ("+", "-"):
            op = self.take()
            val = self.factor()
            return -val if op == "-" else val
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = -1 if self.peek() == "-" and self.take() else 1
            tok = self.take()
            if not tok.isdigit():
                raise UsageError(f"exponent must be an integer in {self.text!r}")
            e = sign * int(tok)
            if e < 0 and not base:
                raise UsageError("division by zero")
            base = base**e
        return base

    def atom(self):
        tok = self.take()
        if tok.isdigit():
            return self.const(int(tok))
        if tok == "t":
            return RationalFunction.t(self.p)
        if tok == "(":
            val = self.expr()
            self.take(")")
            return val
        raise UsageError(f"malformed expression {self.text!r}")


def parse_function(text: str, p: int = 0) -> RationalFunction:
    """Parse an expression into a rational function over Q (``p = 0``) or F_p."""
    if p:
        core.require_prime(p)
    return _Parser(text, p).parse()


def parse_rational(text: str) -> Fraction:
    F = parse_function(text)
    if F.num.degree > 0 or F.den.degree > 0:
        raise UsageError(f"expected a number, got {text!r}")
    return Fraction(F.num.coeff(0)) if F else Fraction(0)


def parse_poly(text: str, p: int = 0) -> Poly:
    F = parse_function(text, p)
    if F.den.degree > 0:
        raise UsageError(f"expected a polynomial, got {text!r}")
    return F.num


def parse_int(text: str) -> int:
    x = parse_rational(text)
    if x.denominator != 1:
        raise UsageError(f"expected an integer, got {text!r}")
    return int(x)


def _is_inf(text: str) -> bool:
    return text.strip().lower() in ("inf", "oo", "infinity")


def parse_point(text: str, p: int = 0):
    """A point of the line: ``inf``, a number, or (for closed points) a polynomial."""
    if _is_inf(text):
        return INFINITY
    F = parse_function(text, p)
    if F.den.degree > 0:
        raise UsageError(f"expected a point, got {text!r}")
    if F.num.degree >= 1:
        return F.num
    return F.num.coeff(0) if F else (0 if p else Fraction(0))


def parse_curve(text: str):
    if _is_inf(text):
        return INFINITY
    return surface.HorizontalCurve(parse_poly(text))


# ---------------------------------------------------------------------------
# reports

@dataclass
class Report:
    command: str
    inputs: dict
    results: dict
    passed: bool | None = None
    seconds: float = 0.0

    def to_json(self) -> str:
        # timing is excluded so identical invocations serialize identically
        payload = {"command": self.command, "inputs": self.inputs, "results": self.results}
        if self.passed is not None:
            payload["passed"] = self.passed
        return json.dumps(payload, sort_keys=True, indent=2)

    def to_text(self) -> str:
        rows = [("command", self.command)]
        rows += [(k, _fmt(v)) for k, v in self.inputs.items()]
        rows += [(k, _fmt(v)) for k, v in self.results.items()]
        if self.passed is not None:
            rows.append(("status", "PASS" if self.passed else "FAIL"))
        rows.append(("time", f"{self.seconds:.3f}s"))
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)} : {v}" for k, v in rows)


def _fmt(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt(x)}" for k, x in v.items()) + "}"
    return str(v)


def _exact(x) -> str:
    """Exact presentation of numbers, logs, polynomials and field elements."""
    if x is INFINITY:
        return "inf"
    if isinstance(x, core.Fp):
        return str(x.value)
    return str(x)


def _approx(value: float, bound: float) -> dict:
    return {"value": repr(float(value)), "error_bound": f"{bound:.3e}"}


def _sign(x: int) -> str:
    return {1: "+1", -1: "-1", 0: "0"}[x]


# ---------------------------------------------------------------------------
# subcommands

def _place_for(f_text: str, v_text: str, over: int | None):
    """Choose the place of ``val``/``norm`` from the inputs."""
    if over:
        f = parse_function(f_text, over)
        if _is_inf(v_text):
            return f, places.FunctionFieldInfinity(over)
        return f, places.FunctionFieldPoint(over, parse_poly(v_text, over).monic())
    F = parse_function(f_text)
    is_number = F.num.degree <= 0 and F.den.degree <= 0
    if is_number and "t" not in f_text:
        x = Fraction(F.num.coeff(0)) if F else Fraction(0)
        if _is_inf(v_text):
            return x, places.ArchimedeanQ()
        return x, places.FinitePrimeQ(parse_int(v_text))
    if _is_inf(v_text):
        return F, places.RationalInfinity()
    return F, places.RationalPoint(parse_rational(v_text))


def cmd_val(a):
    f, v = _place_for(a.f, a.v, a.over)
    r = places.val(f, v)
    return {"place": str(v), "value": r.value, "residue_degree": r.residue_degree}, None


def cmd_norm(a):
    f, v = _place_for(a.f, a.v, a.over)
    return {"place": str(v), "norm": _exact(places.norm(f, v, Fraction(a.c)))}, None


def cmd_metric(a):
    x_text, y_text = a.x, a.y
    if a.over:
        x, v = _place_for(x_text, a.v, a.over)
        y = parse_function(y_text, a.over)
    else:
        x, v = _place_for(x_text, a.v, None)
        y = parse_rational(y_text) if isinstance(x, Fraction) else parse_function(y_text)
    return {"place": str(v), "distance": _exact(completions.metric(x, y, v, Fraction(a.c)))}, None


def cmd_expand(a):
    e = completions.p_adic_digits(parse_rational(a.f), a.p, a.n)
    return {"start": "none" if e.is_zero else e.start, "digits": list(e.digits)}, None


def cmd_laurent(a):
    F = parse_function(a.F, a.over or 0)
    center = parse_point(a.t0, a.over or 0)
    e = completions.laurent_at(F, center, a.n)
    return {
        "start": "none" if e.is_zero else e.start,
        "coefficients": [_exact(c) for c in e.coefficients],
        "precision": e.precision,
    }, None


def cmd_product_formula(a):
    if a.world == "q":
        w = places.product_formula_check_q(parse_rational(a.f))
        res = {
            "valuations": [f"{p}: {nu}" for p, nu in w.local],
            "finite_product": _exact(w.finite_product),
            "archimedean": _exact(w.archimedean),
            "log_form": _exact(w.log_form),
        }
        return res, w.holds
    if a.world == "ff":
        if not a.over:
            raise UsageError("product-formula ff needs --over p")
        w = places.sum_formula_check_ff(parse_function(a.f, a.over))
    else:
        w = places.sum_formula_check_rational_coeff(parse_function(a.f))
    res = {
        "terms": [f"{P}: {nu} * deg {d}" for P, nu, d in w.terms],
        "order_at_infinity": w.order_at_infinity,
        "total": w.total,
    }
    return res, w.holds


def cmd_legendre(a):
    return {"symbol": _sign(symbols.legendre(a.a, a.p))}, None


def _hilbert_place(text: str):
    return "inf" if _is_inf(text) else parse_int(text)


def cmd_hilbert(a):
    x, y, v = parse_rational(a.a), parse_rational(a.b), _hilbert_place(a.v)
    closed = symbols.hilbert_quadratic(x, y, v)
    oracle = symbols.hensel_oracle(x, y, v)
    return {"symbol": _sign(closed), "oracle": _sign(oracle)}, closed == oracle


def cmd_hilbert_product(a):
    w = symbols.hilbert_product_check(parse_rational(a.a), parse_rational(a.b))
    return {
        "symbols": [f"{v}: {_sign(s)}" for v, s in w.symbols],
        "minus_places": list(w.minus_places),
        "product": "+1" if w.holds else "-1",
    }, w.holds


def cmd_reciprocity(a):
    w = symbols.gauss_reciprocity_check(a.a, a.b)
    return {
        "legendre_product": _sign(w.legendre_product),
        "parity_side": _sign(w.parity_sign),
        "hilbert": [f"{a.a}: {_sign(w.hilbert_at_a)}", f"{a.b}: {_sign(w.hilbert_at_b)}",
                    f"2: {_sign(w.hilbert_at_2)}", f"inf: {_sign(w.hilbert_at_inf)}"],
    }, w.holds


def cmd_tame(a):
    p = a.over or 0
    f, g = parse_function(a.f, p), parse_function(a.g, p)
    point = parse_point(a.at, p)
    return {"tame_symbol": _exact(symbols.tame_symbol(f, g, point))}, None


def cmd_residue(a):
    f, g = parse_function(a.f), parse_function(a.g)
    point = parse_point(a.point)
    return {"residue": _exact(symbols.residue_fdg(f, g, point))}, None


def cmd_residue_sum(a):
    w = symbols.residue_sum_check(parse_function(a.f), parse_function(a.g))
    res = {
        "finite": [f"{loc}: {_exact(v)}" for loc, v in w.finite],
        "at_infinity": _exact(w.at_infinity),
        "total": _exact(w.total),
    }
    return res, w.holds


def cmd_residue_pairing(a):
    A = symbols.FormalLaurentSeries.from_rational_function(parse_function(a.A), a.prec)
    B = symbols.FormalLaurentSeries.from_rational_function(parse_function(a.B), a.prec)
    ab = symbols.residue_pairing(A, B)
    ba = symbols.residue_pairing(B, A)
    return {"res(A dB)": _exact(ab), "res(B dA)": _exact(ba)}, ab + ba == 0


def cmd_intersect(a):
    C, D = parse_curve(a.f), parse_curve(a.g)
    cycle = surface.total_intersection(C, D)
    pts = surface.common_points(C, D)
    if a.at:
        pts = [x for x in pts if x.p == a.at]
    local = []
    for x in pts:
        if C.is_section or D.is_section:
            idx = surface.local_index(C, D, x)
            local.append(f"{x}: {idx}")
        else:
            local.append(f"{x}: see per-prime total")
    res = {
        "resultant": cycle.resultant,
        "points": [str(x) for x in pts],
        "local_indices": local,
        "located": [f"{x}: length {m}" for x, m in cycle.entries],
        "unlocated": [f"{p}: {m} * log({p})" for p, m in cycle.unlocated],
        "total": _exact(cycle.total),
    }
    if a.at:
        res["multiplicity_at_p"] = cycle.multiplicity_at(a.at)
    return res, cycle.exact


def cmd_tangency(a):
    return {"order": surface.tangency_order(parse_rational(a.a), parse_rational(a.b), a.p)}, None


def cmd_height(a):
    coords = [parse_rational(x) for x in a.coords]
    P = heights.ProjectivePoint(tuple(coords))
    h = heights.naive_height(P)
    m = heights.multi_place_height(coords)
    return {
        "point": str(P),
        "naive_height": _exact(h.exact),
        "product_of_norms": _exact(m.exact.arg),
    }, h.exact == m.exact


def cmd_enumerate(a):
    pts = heights.enumerate_points(a.n, a.bound)
    res = {"count": len(pts)}
    if a.list:
        res["points"] = [str(P) for P in pts]
    return res, None


def cmd_functoriality(a):
    w = heights.power_map_functoriality_check(heights.ProjectivePoint((a.x, a.y)), a.d)
    return {"image": str(w.image), "h(image)": _exact(w.image_height), "d*h(P)": _exact(w.scaled_height)}, w.holds


def _curve_and_point(a):
    E = heights.EllipticCurve(parse_rational(a.a), parse_rational(a.b))
    P = heights.ECPoint(parse_rational(a.x), parse_rational(a.y))
    return E, P


def cmd_ec_canonical_height(a):
    E, P = _curve_and_point(a)
    h = heights.canonical_height(E, P, a.tol)
    res = {"curve": str(E), "point": str(P)}
    if h.exact is not None:
        res["canonical_height"] = _exact(h.exact)
    else:
        res["canonical_height"] = _approx(h.approx, h.bound)
    res["naive_height_of_x"] = _exact(heights.x_height(P).exact)
    return res, None


def cmd_ec_multiply(a):
    E, P = _curve_and_point(a)
    Q = heights.ec_multiply(E, a.k, P)
    return {"curve": str(E), "result": str(Q)}, None


def cmd_ec_double(a):
    E, P = _curve_and_point(a)
    return {"curve": str(E), "result": str(heights.ec_double(E, P))}, None


def cmd_ec_add(a):
    E = heights.EllipticCurve(parse_rational(a.a), parse_rational(a.b))
    P = heights.ECPoint(parse_rational(a.x1), parse_rational(a.y1))
    Q = heights.ECPoint(parse_rational(a.x2), parse_rational(a.y2))
    return {"curve": str(E), "result": str(heights.ec_add(E, P, Q))}, None


def _divisor_from_args(curve_text: str, a_inf: float):
    return arakelov.ArakelovDivisor.curve(parse_curve(curve_text), a_inf)


def _pairing_result(pv) -> dict:
    return {
        "finite_part": _exact(pv.finite_part),
        "archimedean_part": _approx(pv.archimedean_part, pv.error),
        "degree_terms": repr(pv.degree_terms),
        "total": _approx(pv.total, pv.error),
    }


def cmd_arakelov(a):
    res_level = a.quad_res
    op = a.op
    if op == "pair":
        if len(a.args) != 2:
            raise UsageError("arakelov pair C D")
        pv = arakelov.arakelov_pairing(
            _divisor_from_args(a.args[0], a.a_c), _divisor_from_args(a.args[1], a.a_d)
        )
        return _pairing_result(pv), None
    if op == "green":
        if len(a.args) != 2:
            raise UsageError("arakelov green P Q")
        P, Q = (INFINITY if _is_inf(x) else complex(x.replace(" ", "").replace("i", "j")) for x in a.args)
        return {"log_G": repr(arakelov.green(P, Q))}, None
    if op == "divisor-of":
        if len(a.args) != 1:
            raise UsageError("arakelov divisor-of F")
        D = arakelov.divisor_of_function(parse_function(a.args[0]), res_level)
        return {"divisor": str(D), "a_inf": _approx(D.a_inf, D.a_error)}, None
    if op == "canonical":
        D = arakelov.canonical_divisor(a.pole, res_level)
        return {"divisor": str(D), "degree": D.degree, "a_inf": _approx(D.a_inf, D.a_error)}, None
    if op == "self":
        if len(a.args) != 1:
            raise UsageError("arakelov self C")
        pv = arakelov.self_intersection(_divisor_from_args(a.args[0], a.a_c), a.m, res_level)
        return _pairing_result(pv), None
    if op == "adjunction":
        if len(a.args) != 1:
            raise UsageError("arakelov adjunction C")
        w = arakelov.adjunction_check(parse_curve(a.args[0]), max(a.tol, 1e-5), a.m, res_level)
        return {"C.omega": repr(w.canonical_term), "C.C": repr(w.self_term), "residual": f"{w.residual:.3e}"}, w.holds
    if op == "invariance":
        if len(a.args) != 3:
            raise UsageError("arakelov invariance C D F")
        w = arakelov.linear_equiv_invariance_check(
            _divisor_from_args(a.args[0], a.a_c),
            _divisor_from_args(a.args[1], a.a_d),
            parse_function(a.args[2]),
            max(a.tol, 1e-6),
            res_level,
        )
        return {"before": repr(w.before.total), "after": repr(w.after.total), "residual": f"{w.residual:.3e}"}, w.holds
    raise UsageError(f"unknown arakelov operation {op!r}")


def cmd_factor(a):
    sign, fs = core.factor_integer(a.n)
    return {"sign": "+" if sign > 0 else "-", "factors": [f"{p}^{e}" for p, e in fs]}, None


def cmd_factor_poly(a):
    if a.over:
        lc, fs = core.factor_poly_mod_p(parse_poly(a.f, a.over))
    else:
        lc, fs = core.factor_over_q(parse_poly(a.f))
    return {"leading": _exact(lc), "factors": [f"({g})^{e}" for g, e in fs]}, None


def cmd_resultant(a):
    p = a.over or 0
    return {"resultant": _exact(core.resultant(parse_poly(a.f, p), parse_poly(a.g, p)))}, None


def cmd_gcd(a):
    p = a.over or 0
    if "t" in a.f + a.g or p:
        return {"gcd": _exact(core.poly_gcd(parse_poly(a.f, p), parse_poly(a.g, p)))}, None
    return {"gcd": core.gcd(parse_int(a.f), parse_int(a.g))}, None


def cmd_reduce(a):
    return {"reduction": _exact(core.reduce_mod_p(parse_poly(a.f), a.p))}, None


def cmd_verify(a):
    if a.suite not in SUITES:
        raise UsageError(f"unknown suite {a.suite!r}; choose from {', '.join(sorted(SUITES))}")
    names = sorted(n for n in SUITES if n != "all") if a.suite == "all" else [a.suite]
    results, ok = {}, True
    for name in names:
        rng = random.Random(f"{a.seed}:{name}")
        passed, detail = SUITES[name](rng, a)
        results[name] = ("PASS" if passed else "FAIL") + (f" ({detail})" if detail else "")
        ok = ok and passed
    return results, ok


# ---------------------------------------------------------------------------
# verification suites (reduced sizes of the invariant sweeps)

def _rand_poly(rng, deg, p=0, lo=-9, hi=9):
    while True:
        cs = [rng.randint(lo, hi) for _ in range(deg + 1)]
        f = Poly(cs, p)
        if f:
            return f


def suite_padic(rng, a):
    ok = completions.p_adic_digits(2, 3, 3).digits == (2, 0, 0)
    ok &= completions.p_adic_digits(Fraction(1, 5), 3, 3).digits == (2, 0, 1)
    return ok, ""


def suite_product_formula(rng, a):
    n = 200
    ok = all(
        places.product_formula_check_q(Fraction(rng.randint(-10**6, 10**6) or 1, rng.randint(1, 10**6))).holds
        for _ in range(n)
    )
    return ok, f"{n} rationals"


def suite_sum_formula(rng, a):
    n = 0
    ok = True
    for p in (2, 3, 5, 7):
        for _ in range(25):
            F = RationalFunction(_rand_poly(rng, rng.randint(0, 8), p), _rand_poly(rng, rng.randint(0, 8), p))
            ok &= places.sum_formula_check_ff(F).holds
            n += 1
    return ok, f"{n} functions"


def suite_hilbert(rng, a):
    ok = True
    for x in range(-30, 31):
        for y in range(-30, 31):
            if x and y:
                ok &= symbols.hilbert_product_check(x, y).holds
    for _ in range(200):
        x = Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 50))
        y = Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 50))
        for v in symbols.relevant_places(x, y):
            ok &= symbols.hilbert_quadratic(x, y, v) == symbols.hensel_oracle(x, y, v)
    return ok, "products on [-30, 30]^2, 200 oracle pairs"


def suite_gauss(rng, a):
    primes = [q for q in range(3, 200) if core.is_prime(q)]
    ok = all(symbols.gauss_reciprocity_check(x, y).holds for x in primes for y in primes if x != y)
    return ok, f"{len(primes)} odd primes"


def suite_residues(rng, a):
    n = 100
    ok = True
    for _ in range(n):
        f = RationalFunction(_rand_poly(rng, rng.randint(0, 6)), _rand_poly(rng, rng.randint(0, 6)))
        g = RationalFunction(_rand_poly(rng, rng.randint(1, 6)), _rand_poly(rng, rng.randint(0, 6)))
        if not f or (g.num.degree <= 0 and g.den.degree <= 0):
            continue
        ok &= symbols.residue_sum_check(f, g).holds
    return ok, f"{n} pairs"


def _rand_series(rng):
    start = rng.randint(-5, 3)
    prec = start + rng.randint(1, 10)
    cs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(prec - start)]
    return symbols.FormalLaurentSeries(start, cs, prec + 12)


def suite_residue_pairing(rng, a):
    n = 200
    ok = True
    for _ in range(n):
        A, B = _rand_series(rng), _rand_series(rng)
        ok &= symbols.residue_pairing(A, B) + symbols.residue_pairing(B, A) == 0
    return ok, f"{n} pairs"


def suite_intersection(rng, a):
    ok = True
    for _ in range(100):
        x = Fraction(rng.randint(-20, 20), rng.randint(1, 20))
        y = Fraction(rng.randint(-20, 20), rng.randint(1, 20))
        if x == y:
            continue
        cyc = surface.total_intersection(x, y)
        for p, m in core.factor_integer(cyc.resultant)[1] if abs(cyc.resultant) > 1 else []:
            if x.denominator % p and y.denominator % p:
                ok &= surface.tangency_order(x, y, p) == m
    return ok, "100 section pairs"


def suite_heights(rng, a):
    ok = True
    prev = 0
    for H in range(1, 31):
        cnt = len(heights.enumerate_points(1, H))
        brute = len({Fraction(x, y) for x in range(-H, H + 1) for y in range(1, H + 1)}) + 1
        ok &= cnt == brute and cnt >= prev
        prev = cnt
    for d in range(1, 6):
        ok &= heights.power_map_functoriality_check(heights.ProjectivePoint((3, 5)), d).holds
    return ok, "H <= 30, d <= 5"


BATTERY = [
    ((0, -2), (3, 5)),
    ((0, 17), (-2, 3)),
    ((0, 17), (2, 5)),
    ((-1, 1), (1, 1)),
    ((-16, 16), (0, 4)),
    ((2, 3), (3, 6)),
]


def suite_canonical_height(rng, a):
    ok = True
    tol = a.tol
    for (ca, cb), (x, y) in BATTERY:
        E = heights.EllipticCurve(ca, cb)
        P = heights.ECPoint(x, y)
        h = heights.canonical_height(E, P, tol).approx
        h2 = heights.canonical_height(E, heights.ec_double(E, P), tol).approx
        ok &= abs(h2 - 4 * h) < 10 * tol
    ok &= heights.canonical_height(heights.EllipticCurve(0, 1), heights.ECPoint(-1, 0)).approx == 0
    return ok, f"{len(BATTERY)} points, tol {tol:g}"


def suite_green(rng, a):
    ok = True
    for _ in range(20):
        P = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
        Q = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
        ok &= abs(arakelov.green(P, Q) - arakelov.green(Q, P)) < 1e-12
    for P in (0, 1 + 2j, INFINITY):
        ok &= abs(arakelov.green_normalization(P, a.quad_res).value) < 1e-7
    lap = arakelov.laplacian_check(0, [1 + 1j, 2 - 1j, -0.5 + 0.7j])
    ok &= min(lap.orders) >= 1.8
    return ok, f"Laplacian orders {', '.join(f'{o:.2f}' for o in lap.orders)}"


def suite_invariance(rng, a):
    t = RationalFunction.t()
    worst = 0.0
    for _ in range(10):
        r1, r2, r3, r4 = rng.sample(range(-6, 7), 4)
        C = arakelov.ArakelovDivisor.curve(r1, rng.uniform(-1, 1))
        D = arakelov.ArakelovDivisor.curve(r2, rng.uniform(-1, 1))
        w = arakelov.linear_equiv_invariance_check(C, D, (t - r3) / (t - r4), res=a.quad_res)
        worst = max(worst, w.residual)
    return worst < 1e-6, f"max residual {worst:.2e}"


def suite_adjunction(rng, a):
    rs = [arakelov.adjunction_check(C, res=a.quad_res).residual for C in (0, 1, INFINITY)]
    return max(rs) < 1e-5, f"max residual {max(rs):.2e}"


def suite_height_intersection(rng, a):
    diffs = []
    for r in range(-20, 21):
        for s in range(1, 21):
            if math.gcd(r, s) == 1:
                pv = arakelov.height_pairing(r, s)
                diffs.append(abs(pv.total - math.log(max(abs(r), s))))
    return max(diffs) <= 0.5 * math.log(2) + 1e-12, f"max |pairing - height| {max(diffs):.4f}"


SUITES = {
    "padic": suite_padic,
    "product-formula": suite_product_formula,
    "sum-formula": suite_sum_formula,
    "hilbert": suite_hilbert,
    "gauss": suite_gauss,
    "residues": suite_residues,
    "residue-pairing": suite_residue_pairing,
    "intersection": suite_intersection,
    "heights": suite_heights,
    "canonical-height": suite_canonical_height,
    "green": suite_green,
    "invariance": suite_invariance,
    "adjunction": suite_adjunction,
    "height-intersection": suite_height_intersection,
    "all": None,
}


# ---------------------------------------------------------------------------
# parser and dispatch

COMMANDS = {
    "val": cmd_val,
    "norm": cmd_norm,
    "metric": cmd_metric,
    "expand": cmd_expand,
    "laurent": cmd_laurent,
    "product-formula": cmd_product_formula,
    "legendre": cmd_legendre,
    "hilbert": cmd_hilbert,
    "hilbert-product": cmd_hilbert_product,
    "reciprocity": cmd_reciprocity,
    "tame": cmd_tame,
    "residue": cmd_residue,
    "residue-sum": cmd_residue_sum,
    "residue-pairing": cmd_residue_pairing,
    "intersect": cmd_intersect,
    "tangency": cmd_tangency,
    "height": cmd_height,
    "enumerate": cmd_enumerate,
    "functoriality": cmd_functoriality,
    "ec-canonical-height": cmd_ec_canonical_height,
    "ec-add": cmd_ec_add,
    "ec-double": cmd_ec_double,
    "ec-multiply": cmd_ec_multiply,
    "arakelov": cmd_arakelov,
    "factor": cmd_factor,
    "factor-poly": cmd_factor_poly,
    "resultant": cmd_resultant,
    "gcd": cmd_gcd,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
}

# library operation -> subcommand that reaches it
OPERATIONS = {
    "core.gcd": "gcd",
    "core.factor_integer": "factor",
    "core.factor_poly_mod_p": "factor-poly",
    "core.resultant": "resultant",
    "core.poly_gcd": "gcd",
    "core.reduce_mod_p": "reduce",
    "places.val": "val",
    "places.norm": "norm",
    "places.product_formula_check_q": "product-formula",
    "places.sum_formula_check_ff": "product-formula",
    "places.sum_formula_check_rational_coeff": "product-formula",
    "completions.p_adic_digits": "expand",
    "completions.laurent_at": "laurent",
    "completions.metric": "metric",
    "symbols.legendre": "legendre",
    "symbols.hilbert_quadratic": "hilbert",
    "symbols.hensel_oracle": "hilbert",
    "symbols.hilbert_product_check": "hilbert-product",
    "symbols.gauss_reciprocity_check": "reciprocity",
    "symbols.tame_symbol": "tame",
    "symbols.residue": "residue",
    "symbols.residue_fdg": "residue",
    "symbols.residue_sum_check": "residue-sum",
    "symbols.residue_pairing": "residue-pairing",
    "surface.common_points": "intersect",
    "surface.local_index": "intersect",
    "surface.total_intersection": "intersect",
    "surface.tangency_order": "tangency",
    "heights.naive_height": "height",
    "heights.multi_place_height": "height",
    "heights.enumerate_points": "enumerate",
    "heights.power_map_functoriality_check": "functoriality",
    "heights.ec_add": "ec-add",
    "heights.ec_double": "ec-double",
    "heights.ec_multiply": "ec-multiply",
    "heights.canonical_height": "ec-canonical-height",
    "arakelov.green": "arakelov",
    "arakelov.arch_pairing": "arakelov",
    "arakelov.arakelov_pairing": "arakelov",
    "arakelov.divisor_of_function": "arakelov",
    "arakelov.linear_equiv_invariance_check": "arakelov",
    "arakelov.canonical_divisor": "arakelov",
    "arakelov.self_intersection": "arakelov",
    "arakelov.adjunction_check": "arakelov",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized suites")
    common.add_argument("--tol", type=float, default=1e-8, help="numerical tolerance")
    common.add_argument("--quad-res", type=int, default=1, help="quadrature resolution level")

    # the common flags go after the subcommand: numfunc intersect f g --json
    ap = argparse.ArgumentParser(prog="numfunc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_text, *args):
        sp = sub.add_parser(name, help=help_text, parents=[common])
        for arg in args:
            flag, kw = arg if isinstance(arg, tuple) else (arg, {})
            sp.add_argument(flag, **kw)
        return sp

    over = ("--over", {"type": int, "default": None, "help": "work over F_p"})
    cflag = ("--c", {"default": "2", "help": "metric base at rational-coefficient places"})
    add("val", "valuation of f at a place", "f", "v", over)
    add("norm", "normalized absolute value of f at a place", "f", "v", over, cflag)
    add("metric", "valuation distance between x and y", "x", "y", "v", over, cflag)
    add("expand", "p-adic digits of a rational", "f", ("p", {"type": int}), ("n", {"type": int}))
    add("laurent", "Laurent expansion at a point, inf, or an irreducible", "F", "t0", ("n", {"type": int}), over)
    add("product-formula", "product/sum formula witness", ("world", {"choices": ["q", "ff", "rat"]}), "f", over)
    add("legendre", "Legendre symbol", ("a", {"type": int}), ("p", {"type": int}))
    add("hilbert", "quadratic Hilbert symbol at a place", "a", "b", "v")
    add("hilbert-product", "product of Hilbert symbols over all places", "a", "b")
    add("reciprocity", "quadratic reciprocity for two odd primes", ("a", {"type": int}), ("b", {"type": int}))
    add("tame", "tame symbol at a point", "f", "g", ("--at", {"default": "0"}), over)
    add("residue", "residue of f dg at a point", "f", "g", "point")
    add("residue-sum", "sum of residues of f dg over the projective line", "f", "g")
    add("residue-pairing", "res(A dB) of expansions at 0", "A", "B", ("--prec", {"type": int, "default": 12}))
    add("intersect", "intersection of two horizontal curves", "f", "g", ("--at", {"type": int, "default": None}))
    add("tangency", "tangency order of two sections at p", "a", "b", ("p", {"type": int}))
    add("height", "naive and product-of-norms height", ("coords", {"nargs": "+"}))
    add("enumerate", "points of P^n of bounded height", ("n", {"type": int}), ("bound", {"type": int}),
        ("--list", {"action": "store_true"}))
    add("functoriality", "power map height check on P^1", ("x", {"type": int}), ("y", {"type": int}),
        ("d", {"type": int}))
    add("ec-canonical-height", "canonical height on y^2 = x^3 + a x + b", "a", "b", "x", "y")
    add("ec-add", "sum of two points", "a", "b", "x1", "y1", "x2", "y2")
    add("ec-double", "double of a point", "a", "b", "x", "y")
    add("ec-multiply", "k-fold multiple of a point", "a", "b", ("k", {"type": int}), "x", "y")
    add("arakelov", "Arakelov pairing on P^1 over Z",
        ("op", {"choices": ["pair", "green", "divisor-of", "canonical", "self", "adjunction", "invariance"]}),
        ("args", {"nargs": "*"}),
        ("--a-c", {"type": float, "default": 0.0, "help": "fiber coefficient of the first divisor"}),
        ("--a-d", {"type": float, "default": 0.0, "help": "fiber coefficient of the second divisor"}),
        ("--pole", {"type": int, "default": None}),
        ("--m", {"type": int, "default": 7, "help": "moving point for self-intersection"}))
    add("factor", "factor an integer", ("n", {"type": int}))
    add("factor-poly", "factor a polynomial over Q or F_p", "f", over)
    add("resultant", "Sylvester resultant", "f", "g", over)
    add("gcd", "gcd of integers or polynomials", "f", "g", over)
    add("reduce", "reduce a polynomial mod p", "f", ("p", {"type": int}))
    add("verify", "run an invariant suite", ("suite", {"choices": sorted(SUITES)}))
    return ap


def run(argv=None, out=None, err=None) -> tuple[int, Report | None]:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0), None
    t0 = time.perf_counter()
    inputs = {k: (v if isinstance(v, (int, float, str, list, type(None))) else str(v))
              for k, v in sorted(vars(args).items()) if k not in ("command", "json")}
    try:
        results, passed = COMMANDS[args.command](args)
    except (UsageError, ArithmeticDomainError, ZeroDivisionError) as e:
        print(f"numfunc {args.command}: error: {e}", file=err)
        return 2, None
    report = Report(args.command, inputs, results, passed, time.perf_counter() - t0)
    print(report.to_json() if args.json else report.to_text(), file=out)
    return (1 if passed is False else 0), report


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
