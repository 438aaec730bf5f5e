"""Exact fields and their valuations.

* Q with p-adic valuations,
* Q(sqrt d) as ``QuadElem`` with the extensions of v_p to it,
* Q(t) as ``RankTwoElem`` with the rank-2 valuation (ord_t, v_p of the
  lowest coefficient), valued in Z^2 with the lex order.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from sympy import isprime
from sympy.ntheory.residue_ntheory import sqrt_mod

from .ordered import INF, DivElem
from .valuation import DomainError, Valuation


class NotPrime(ValueError):
    pass


class Unsupported(ValueError):
    pass


@lru_cache(maxsize=None)
def _check_prime(p: int) -> int:
    if not isinstance(p, int) or not isprime(p):
        raise NotPrime(f"{p!r} is not prime")
    return p


def _mult(n: int, p: int) -> int:
    """Multiplicity of p in the nonzero integer n."""
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def vp_int(p: int, x) -> int | None:
    """Integer p-adic valuation of a rational; None for zero."""
    x = as_fraction(x)
    if x == 0:
        return None
    return _mult(x.numerator, p) - _mult(x.denominator, p)


def vp(p: int, x):
    """v_p(x) as a rank-1 DivElem, INF at zero."""
    _check_prime(p)
    e = vp_int(p, x)
    return INF if e is None else DivElem((e,))


def padic(p: int) -> Valuation:
    _check_prime(p)
    return Valuation(f"v_{p}", lambda x: vp(p, x), rank=1, domain="Q",
                     params={"p": p, "kind": "padic"})


def trivial_valuation(rank: int = 1) -> Valuation:
    return Valuation("trivial", lambda x: INF if as_fraction(x) == 0 else DivElem.zero(rank),
                     rank=rank, domain="Q", params={"kind": "trivial"})


def in_Ov(p: int, x) -> bool:
    e = vp_int(p, x)
    return e is None or e >= 0


def squarefree(d: int) -> bool:
    if d == 0:
        return False
    n = abs(d)
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


# ---- Q(sqrt d) --------------------------------------------------------------

@dataclass(frozen=True)
class QuadElem:
    """a + b*sqrt(d) with exact rational a, b."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))
        if self.d in (0, 1) or not squarefree(self.d):
            raise ValueError(f"d={self.d} must be a squarefree integer other than 0, 1")

    @classmethod
    def of(cls, a, b, d) -> "QuadElem":
        return cls(as_fraction(a), as_fraction(b), d)

    @classmethod
    def sqrt(cls, d) -> "QuadElem":
        return cls(Fraction(0), Fraction(1), d)

    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise ValueError(f"mixing Q(sqrt {self.d}) and Q(sqrt {other.d})")
            return other
        return QuadElem(as_fraction(other), Fraction(0), self.d)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadElem(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadElem(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conj(self) -> "QuadElem":
        return QuadElem(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conj()
        return QuadElem(c.a / n, c.b / n, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadElem(Fraction(1), Fraction(0), self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def in_base(self) -> bool:
        return self.b == 0

    def __str__(self):
        root = "i" if self.d == -1 else f"sqrt({self.d})"
        if self.b == 0:
            return str(self.a)
        tail = root if self.b == 1 else f"{self.b}*{root}"
        if self.a == 0:
            return tail if self.b != -1 else f"-{root}"
        sign = "+" if self.b > 0 else "-"
        mag = root if abs(self.b) == 1 else f"{abs(self.b)}*{root}"
        return f"{self.a}{sign}{mag}"


class Splitting(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


def classify_prime(p: int, d: int) -> Splitting:
    _check_prime(p)
    if d % p == 0:
        return Splitting.RAMIFIED
    if p == 2:
        raise Unsupported("split/inert classification at p = 2 is not supported")
    return Splitting.SPLIT if pow(d % p, (p - 1) // 2, p) == 1 else Splitting.INERT


def hensel_sqrt(d: int, p: int, m: int) -> int:
    """r in [0, p^m) with r^2 = d mod p^m, lifted from the smallest root mod p."""
    _check_prime(p)
    if p == 2:
        raise Unsupported("Hensel square roots need an odd prime")
    if d % p == 0:
        raise ValueError(f"p={p} divides d={d}")
    roots = sqrt_mod(d % p, p, all_roots=True)
    if not roots:
        raise ValueError(f"{d} is not a square mod {p}")
    r = min(x for x in roots if x)
    k = 1
    while k < m:
        k = min(2 * k, m)
        mod = p ** k
        r = (r - (r * r - d) * pow(2 * r, -1, mod)) % mod
    return r % p ** m


def _integral_coords(x: QuadElem) -> tuple[int, int, int]:
    """(A, B, D) with x = (A + B sqrt d) / D, D > 0."""
    D = math.lcm(x.a.denominator, x.b.denominator)
    return int(x.a * D), int(x.b * D), D


def split_value(p: int, d: int, x: QuadElem, conjugate: bool = False) -> int | None:
    """v_p(a + b r) for the Hensel root r of d (or -r when ``conjugate``).

    Precision starts at v_p(N(x)) + 2 and doubles until the residue is not
    zero modulo p^m, at which point its valuation is exact.
    """
    if x.is_zero():
        return None
    A, B, D = _integral_coords(x)
    if conjugate:
        B = -B
    N = A * A - d * B * B
    m = _mult(N, p) + 2
    while True:
        mod = p ** m
        r = hensel_sqrt(d, p, m)
        y = (A + B * r) % mod
        if y:
            return _mult(y, p) - _mult(D, p)
        m *= 2


def extend_valuation(p: int, d: int) -> list[Valuation]:
    """All extensions of v_p from Q to Q(sqrt d), as DivElem-valued valuations."""
    kind = classify_prime(p, d)

    def in_field(x):
        return isinstance(x, QuadElem) and x.d == d

    domain = f"Q(sqrt {d})"
    if kind is not Splitting.SPLIT:
        def u(x):
            if x.is_zero():
                return INF
            return DivElem((Fraction(vp_int(p, x.norm()), 2),))

        return [Valuation(f"u_{p}", u, domain=domain, contains=in_field,
                          params={"p": p, "d": d, "kind": kind.value})]

    def make(conj):
        def u(x):
            e = split_value(p, d, x, conjugate=conj)
            return INF if e is None else DivElem((e,))
        return u

    r = hensel_sqrt(d, p, 1)
    return [
        Valuation(f"u1_{p}", make(False), domain=domain, contains=in_field,
                  params={"p": p, "d": d, "kind": "split", "root": r, "index": 1}),
        Valuation(f"u2_{p}", make(True), domain=domain, contains=in_field,
                  params={"p": p, "d": d, "kind": "split", "root": r, "index": 2}),
    ]


# ---- Q(t) ------------------------------------------------------------------

Poly = tuple  # dense coefficients, lowest degree first, no trailing zeros


def _trim(c) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pmul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim(out)


def _padd(f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    return _trim((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n))


def _pscale(f: Poly, c) -> Poly:
    return _trim(a * c for a in f)


def _pshift(f: Poly, e: int) -> Poly:
    return (Fraction(0),) * e + f if f else ()


def _pdivmod(f: Poly, g: Poly):
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    r = list(f)
    lead = g[-1]
    while len(r) >= len(g) and r:
        coef = r[-1] / lead
        shift = len(r) - len(g)
        q[shift] = coef
        for i, b in enumerate(g):
            r[shift + i] -= coef * b
        r = list(_trim(r))
    return _trim(q), tuple(r)


def _pgcd(f: Poly, g: Poly) -> Poly:
    while g:
        f, g = g, _pdivmod(f, g)[1]
    return _pscale(f, 1 / f[-1]) if f else ()


def _low(f: Poly) -> int:
    for i, c in enumerate(f):
        if c:
            return i
    raise ValueError("zero polynomial")


@dataclass(frozen=True)
class RankTwoElem:
    """t^e * num(t) / den(t) with num(0), den(0) nonzero, coprime, den(0) = 1."""

    e: int
    num: Poly
    den: Poly

    @classmethod
    def make(cls, num, den=(1,), e: int = 0) -> "RankTwoElem":
        num = _trim(Fraction(c) for c in num)
        den = _trim(Fraction(c) for c in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return ZERO_T
        ln, ld = _low(num), _low(den)
        num, den, e = num[ln:], den[ld:], e + ln - ld
        g = _pgcd(num, den)
        if len(g) > 1:
            num, den = _pdivmod(num, g)[0], _pdivmod(den, g)[0]
        c = den[0]
        return cls(e, _pscale(num, 1 / c), _pscale(den, 1 / c))

    @classmethod
    def const(cls, c) -> "RankTwoElem":
        return cls.make((Fraction(c),))

    @classmethod
    def monomial(cls, c, e: int) -> "RankTwoElem":
        return cls.make((Fraction(c),), e=e)

    @classmethod
    def from_terms(cls, terms: dict[int, Fraction]) -> "RankTwoElem":
        """Sparse Laurent polynomial {exponent: coefficient}."""
        terms = {k: Fraction(v) for k, v in terms.items() if v}
        if not terms:
            return ZERO_T
        lo = min(terms)
        hi = max(terms)
        return cls.make(tuple(terms.get(lo + i, 0) for i in range(hi - lo + 1)), e=lo)

    def is_zero(self) -> bool:
        return not self.num

    def _parts(self):
        # as (num', den') polynomials with nonnegative shifts
        if self.e >= 0:
            return _pshift(self.num, self.e), self.den
        return self.num, _pshift(self.den, -self.e)

    def _coerce(self, other):
        if isinstance(other, RankTwoElem):
            return other
        return RankTwoElem.const(as_fraction(other))

    def __add__(self, other):
        o = self._coerce(other)
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        n1, d1 = self._parts()
        n2, d2 = o._parts()
        return RankTwoElem.make(_padd(_pmul(n1, d2), _pmul(n2, d1)), _pmul(d1, d2))

    __radd__ = __add__

    def __neg__(self):
        return RankTwoElem(self.e, _pscale(self.num, -1), self.den) if self.num else self

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if self.is_zero() or o.is_zero():
            return ZERO_T
        # monomial factor: scaling keeps the fraction reduced
        if len(o.num) == 1 and len(o.den) == 1:
            return RankTwoElem(self.e + o.e, _pscale(self.num, o.num[0]), self.den)
        if len(self.num) == 1 and len(self.den) == 1:
            return RankTwoElem(self.e + o.e, _pscale(o.num, self.num[0]), o.den)
        return RankTwoElem.make(_pmul(self.num, o.num), _pmul(self.den, o.den), self.e + o.e)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RankTwoElem.make(self.den, self.num, -self.e)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE_T
        for _ in range(n):
            out = out * self
        return out

    def lowest_coefficient(self) -> Fraction:
        return self.num[0] / self.den[0]

    def __str__(self):
        def poly(f):
            terms = []
            for i, c in enumerate(f):
                if c:
                    terms.append(f"{c}" if i == 0 else f"{c}*t^{i}")
            return " + ".join(terms) or "0"

        if self.is_zero():
            return "0"
        body = poly(self.num)
        if self.den != (1,):
            body = f"({body})/({poly(self.den)})"
        return body if self.e == 0 else f"t^{self.e}*({body})"


ZERO_T = RankTwoElem(0, (), (Fraction(1),))
ONE_T = RankTwoElem(0, (Fraction(1),), (Fraction(1),))
T = RankTwoElem(1, (Fraction(1),), (Fraction(1),))


def composite_value(p: int, f: RankTwoElem):
    if f.is_zero():
        return INF
    c = f.lowest_coefficient()
    return DivElem((f.e, vp_int(p, c)))


def composite_valuation(p: int, f: RankTwoElem | None = None):
    """The rank-2 valuation f -> (ord_t f, v_p(lowest coefficient)).

    Called with an element, evaluates it; called without, returns the
    valuation object.
    """
    _check_prime(p)
    if f is not None:
        return composite_value(p, f)

    def contains(x):
        return isinstance(x, RankTwoElem)

    return Valuation(f"v_(t,{p})", lambda x: composite_value(p, x), rank=2, domain="Q(t)",
                     contains=contains, params={"p": p, "kind": "composite"})


def parse_field_record(rec: dict):
    """Field/valuation record: {"field": "Q"|"Q_sqrt"|"Q_t", "p": int, "d": int}."""
    field = rec.get("field")
    p = int(rec["p"])
    if field == "Q":
        return padic(p)
    if field == "Q_sqrt":
        return extend_valuation(p, int(rec["d"]))
    if field == "Q_t":
        return composite_valuation(p)
    raise DomainError(f"unknown field {field!r}")
