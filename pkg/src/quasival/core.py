"""Quasi-valuations: constructions, checkers and associated rings."""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterable, Sequence

from .fields import (QuadElem, as_fraction, in_Ov, padic, squarefree, vp_int)
from .ordered import (INF, TWO_CHAIN, DivElem, LexProductElem, MaxElem, Verdict)
from .reports import Report
from .sampling import Sampler
from .valuation import DomainError, QuasiValuation, Valuation

__all__ = [
    "QuasiValuation", "Valuation", "nadic", "nadic_exponent", "min_family", "kummer",
    "squared", "truncated", "lexmax_demo", "constant_minus_one", "negated",
    "check_axioms", "check_exponential", "is_stable", "in_Ow", "in_Iw", "coset_count",
    "coset_period", "quotient_qv", "check_sign_symmetry", "check_strict_min",
    "check_finite", "check_unit_value",
]


def _is_rational(x) -> bool:
    try:
        as_fraction(x)
        return True
    except TypeError:
        return False


def _is_integer(x) -> bool:
    return _is_rational(x) and as_fraction(x).denominator == 1


# ---- constructions ----------------------------------------------------------

def nadic_exponent(n: int, x) -> int | None:
    """The unique e with x = n^e a/b, n not dividing a, (n, b) = (a, b) = 1.

    Multiplies by n until the denominator is prime to n, then strips n from
    the numerator; the side conditions are re-checked before returning.
    """
    x = as_fraction(x)
    if x == 0:
        return None
    e = 0
    while math.gcd(x.denominator, n) != 1:
        x *= n
        e -= 1
    while x.numerator % n == 0:
        x /= n
        e += 1
    a, b = x.numerator, x.denominator
    if a % n == 0 or math.gcd(n, b) != 1 or math.gcd(a, b) != 1:
        raise ArithmeticError(f"no n-adic decomposition of {x} for n={n}")
    return e


def nadic(n: int) -> QuasiValuation:
    if n < 2:
        raise ValueError("n must be at least 2")

    def w(x):
        e = nadic_exponent(n, x)
        return INF if e is None else DivElem((e,))

    return QuasiValuation(f"w_{n}", w, domain="Q", contains=_is_rational,
                          params={"kind": "nadic", "n": n, "squarefree": squarefree(n)})


def min_family(ws: Sequence[QuasiValuation]) -> QuasiValuation:
    ws = list(ws)
    if not ws:
        raise ValueError("min over an empty family")
    first = ws[0]
    for w in ws[1:]:
        if (w.codomain, w.rank) != (first.codomain, first.rank):
            raise TypeError(f"codomain mismatch: {first.name} vs {w.name}")
    if len(ws) == 1:
        return first

    def fn(x):
        return min(w(x) for w in ws)

    return QuasiValuation("min{" + ",".join(w.name for w in ws) + "}", fn,
                          codomain=first.codomain, rank=first.rank, domain=first.domain,
                          contains=first.contains,
                          params={"kind": "min", "of": [w.name for w in ws], "members": ws})


def kummer(v: Valuation, gamma, d: int) -> QuasiValuation:
    """a + b sqrt(d) -> min{v(a), v(b) - gamma} for gamma >= 0."""
    gamma = gamma if isinstance(gamma, DivElem) else DivElem((as_fraction(gamma),))
    if gamma < DivElem.zero(gamma.rank):
        raise ValueError("gamma must be non-negative")
    if v(d) < DivElem.zero(v.rank):
        raise ValueError(f"sqrt({d}) must have a square in O_v")

    def fn(x: QuadElem):
        va, vb = v(x.a), v(x.b)
        return min(va, INF if vb is INF else vb - gamma)

    return QuasiValuation(f"kummer({v.name},{gamma},{d})", fn, rank=v.rank,
                          domain=f"Q(sqrt {d})",
                          contains=lambda x: isinstance(x, QuadElem) and x.d == d,
                          params={"kind": "kummer", "gamma": gamma, "d": d, "base": v})


def squared(v: Valuation) -> QuasiValuation:
    """x -> v(x)^2 on the integers."""
    def fn(x):
        e = v(x)
        if e is INF:
            return INF
        c = e.coords[0]
        return DivElem((c * c,))

    return QuasiValuation(f"({v.name})^2", fn, domain="Z", contains=_is_integer,
                          params={"kind": "squared", "base": v})


def truncated(v: Valuation, alpha) -> QuasiValuation:
    """v below alpha, INF at or above it, on O_v."""
    alpha = alpha if isinstance(alpha, DivElem) else DivElem((as_fraction(alpha),))
    if alpha <= DivElem.zero(alpha.rank):
        raise ValueError("alpha must be positive")
    p = v.params.get("p")

    def fn(x):
        e = v(x)
        return e if e is not INF and e < alpha else INF

    def contains(x):
        return _is_rational(x) and in_Ov(p, x)

    return QuasiValuation(f"{v.name}<{alpha}", fn, domain="O_v", contains=contains,
                          params={"kind": "truncated", "alpha": alpha, "base": v})


def lexmax_demo(p: int) -> QuasiValuation:
    """The four-case quasi-valuation on Q(sqrt p) with values in Z x {a0 < a1}."""
    v = padic(p)
    a0, a1 = MaxElem(0, TWO_CHAIN), MaxElem(1, TWO_CHAIN)

    def val(x):
        return int(v(x).coords[0])

    def fn(x: QuadElem):
        if x.a == 0 and x.b == 0:
            return INF
        if x.a == 0:
            return LexProductElem(val(x.b), a1)
        if x.b == 0:
            return LexProductElem(val(x.a), a0)
        return min(LexProductElem(val(x.a), a0), LexProductElem(val(x.b), a1))

    return QuasiValuation(f"lexmax_{p}", fn, codomain="lexmax", domain=f"Q(sqrt {p})",
                          contains=lambda x: isinstance(x, QuadElem) and x.d == p,
                          params={"kind": "lexmax", "p": p, "chain": TWO_CHAIN})


def constant_minus_one() -> QuasiValuation:
    """0 -> INF, everything else -> -1 (on the integers)."""
    return QuasiValuation("const(-1)", lambda x: INF if x == 0 else DivElem((-1,)),
                          domain="Z", contains=_is_integer, params={"kind": "trivial"})


def negated(w: QuasiValuation) -> QuasiValuation:
    """x -> -w(x); multiplicative but violates the min inequality (e.g. at 1 + (p - 1))."""
    if w.codomain != "div":
        raise TypeError("only group-valued maps can be negated")

    def fn(x):
        e = w(x)
        return INF if e is INF else -e

    return QuasiValuation(f"-{w.name}", fn, rank=w.rank, domain=w.domain, contains=w.contains,
                          params={"kind": "negated", "base": w})


# ---- associated rings -------------------------------------------------------

def in_Ow(w: QuasiValuation, x) -> bool:
    return w(x) >= w.zero_value()


def in_Iw(w: QuasiValuation, x) -> bool:
    return w(x) > w.zero_value()


# ---- checkers ---------------------------------------------------------------

def _samples(sampler: Sampler, count: int, seed: int, extra: Iterable = ()):
    rng = random.Random(seed)
    out = list(extra)
    out.extend(sampler(rng) for _ in range(count))
    return out


def check_axioms(w: QuasiValuation, sampler: Sampler, count: int = 1000, seed: int = 0,
                 zero=None) -> Report:
    """w(0) = INF once, then w(xy) >= w(x) + w(y) and w(x+y) >= min on sampled pairs."""
    rng = random.Random(seed)
    violations = 0
    first = None
    x0 = sampler(rng)
    zero = x0 - x0 if zero is None else zero
    if w(zero) is not INF:
        return Report(f"axioms[{w.name}]", False, 0, 1, seed, ("B1", zero, w(zero)))
    for _ in range(count):
        x, y = sampler(rng), sampler(rng)
        wx, wy = w(x), w(y)
        prod, total = w(x * y), w(x + y)
        bad = None
        if not prod >= wx + wy:
            bad = ("B2", x, y, prod, wx + wy)
        elif not total >= min(wx, wy):
            bad = ("B3", x, y, total, min(wx, wy))
        if bad:
            violations += 1
            first = first or bad
    return Report(f"axioms[{w.name}]", violations == 0, count, violations, seed, first)


def check_exponential(w: QuasiValuation, sampler: Sampler, count: int = 500, n_max: int = 6,
                      seed: int = 0, square_only: bool = False, extra: Iterable = ()) -> Report:
    """w(x^n) == n w(x) for n <= n_max (or n == 2 only)."""
    ns = [2] if square_only else list(range(2, n_max + 1))
    violations = 0
    first = None
    xs = _samples(sampler, count, seed, extra)
    for x in xs:
        wx = w(x)
        if wx is INF:
            continue
        for n in ns:
            lhs = w(x ** n)
            if lhs != n * wx:
                violations += 1
                first = first or (x, n, lhs, n * wx)
                break
    name = "square" if square_only else f"exponential(n<={n_max})"
    return Report(f"{name}[{w.name}]", violations == 0, len(xs), violations, seed, first)


def is_stable(w: QuasiValuation, c, sampler: Sampler, count: int = 200, seed: int = 0,
              extra: Iterable = ()) -> Verdict:
    """w(cx) == w(c) + w(x) on samples; returns the first failing x."""
    wc = w(c)
    for x in _samples(sampler, count, seed, extra):
        if w(c * x) != wc + w(x):
            return Verdict(False, (x,))
    return Verdict(True)


def check_sign_symmetry(w: QuasiValuation, sampler: Sampler, count=500, seed=0) -> Report:
    """If w(-1) = 0 then w(a) = w(-a)."""
    one = w.params.get("one", None)
    xs = _samples(sampler, count, seed)
    x0 = xs[0]
    one = one if one is not None else (x0 - x0) + 1
    if w(-one) != w.zero_value():
        return Report(f"sign-symmetry[{w.name}]", True, 0, 0, seed, details={"vacuous": True})
    bad = [x for x in xs if w(x) != w(-x)]
    return Report(f"sign-symmetry[{w.name}]", not bad, len(xs), len(bad), seed,
                  bad[0] if bad else None)


def check_strict_min(w: QuasiValuation, sampler: Sampler, count=500, seed=0) -> Report:
    """w(a) != w(b) implies w(a+b) = min{w(a), w(b)} (when w(-1) = 0)."""
    rng = random.Random(seed)
    n = violations = 0
    first = None
    for _ in range(count):
        a, b = sampler(rng), sampler(rng)
        wa, wb = w(a), w(b)
        if wa == wb:
            continue
        n += 1
        if w(a + b) != min(wa, wb):
            violations += 1
            first = first or (a, b)
    return Report(f"strict-min[{w.name}]", violations == 0, n, violations, seed, first)


def check_finite(w: QuasiValuation, sampler: Sampler, count=500, seed=0) -> Report:
    """No nonzero sample takes the value INF."""
    xs = _samples(sampler, count, seed)
    bad = [x for x in xs if not _is_zero(x) and w(x) is INF]
    return Report(f"finite[{w.name}]", not bad, len(xs), len(bad), seed, bad[0] if bad else None)


def check_unit_value(w: QuasiValuation, one) -> Verdict:
    """w(1) <= 0 (cancellative codomain); returns the value as witness on failure."""
    v1 = w(one)
    return Verdict(v1 <= w.zero_value(), None if v1 <= w.zero_value() else (v1,))


def _is_zero(x) -> bool:
    return x == 0 or (hasattr(x, "is_zero") and x.is_zero())


# ---- cosets -----------------------------------------------------------------

def _coset_key(value: DivElem) -> tuple:
    return tuple(c - math.floor(c) for c in value.coords)


def coset_count(w: QuasiValuation, sampler: Sampler, count: int = 500, seed: int = 0,
                extra: Iterable = ()) -> int:
    """Distinct classes of w(x) modulo the integer lattice over nonzero samples."""
    if w.codomain != "div":
        raise TypeError("coset analysis needs group values")
    keys = set()
    for x in _samples(sampler, count, seed, extra):
        val = w(x)
        if val is not INF:
            keys.add(_coset_key(val))
    return len(keys)


def coset_period(w: QuasiValuation, b, t_max: int = 8) -> int | None:
    """Least t <= t_max with w(b^t) in the integer lattice (None if none found)."""
    if w.codomain != "div":
        raise TypeError("coset analysis needs group values")
    for t in range(1, t_max + 1):
        val = w(b ** t)
        if val is INF:
            raise ValueError("b must be nonzero")
        if val.is_integral():
            return t
    return None


# ---- quotient ---------------------------------------------------------------

def quotient_qv(w: QuasiValuation, level: int) -> QuasiValuation:
    """w followed by Z^k -> Z^k / H_level: keep the first k - level coordinates."""
    if w.codomain != "div":
        raise TypeError("the quotient construction needs group values")
    k = w.rank
    if not 0 <= level <= k:
        raise ValueError(f"level {level} outside 0..{k}")
    if level == 0:
        return w

    def fn(x):
        val = w(x)
        return INF if val is INF else DivElem(val.coords[: k - level])

    return QuasiValuation(f"{w.name}/H{level}", fn, rank=k - level, domain=w.domain,
                          contains=w.contains,
                          params={"kind": "quotient", "level": level, "base": w})
