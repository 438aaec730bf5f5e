"""Filter quasi-valuations w(x) = v(S_x)^+ for three O_v-algebra shapes.

Divisibility in a valuation ring is decided by values (a | b iff
v(a) <= v(b)), so the supports S_x = {a in O_v : xR in aR} are
determined by their value sets.  Each shape has a closed form and a
brute-force oracle that decides ``x in aR`` with explicit ring arithmetic
over a window of values.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import kummer
from .cuts import Cut, IsolatedSubgroup, cut_sub_group, principal, project_cut
from .fields import (QuadElem, RankTwoElem, as_fraction, composite_valuation, in_Ov, padic,
                     vp_int, _check_prime)
from .ordered import INF, DivElem, GroupElem
from .reports import Report
from .sampling import Sampler, ov_elements, rational
from .valuation import DomainError, QuasiValuation


def _g(*coords) -> GroupElem:
    return GroupElem(tuple(int(c) for c in coords))


# ---- algebra shapes ---------------------------------------------------------

@dataclass(frozen=True)
class QuadOrder:
    """R = O_v + O_v*(c*e) inside Q(sqrt d), e = sqrt d."""

    p: int
    d: int
    c: Fraction

    def __post_init__(self):
        _check_prime(self.p)
        object.__setattr__(self, "c", as_fraction(self.c))
        if self.c == 0 or vp_int(self.p, self.c) < 0:
            raise ValueError("c must be a nonzero element of O_v")
        if vp_int(self.p, self.d) < 0:
            raise ValueError("d must lie in O_v")
        QuadElem.sqrt(self.d)  # validates d

    kind = "quad_order"
    rank = 1
    torsion_free = True

    def coords(self, x: QuadElem) -> tuple[Fraction, Fraction]:
        """(alpha, beta) with x = alpha + beta*(c*e)."""
        if not isinstance(x, QuadElem) or x.d != self.d:
            raise DomainError(f"{x} is not in Q(sqrt {self.d})")
        return x.a, x.b / self.c

    def element(self, alpha, beta) -> QuadElem:
        return QuadElem(as_fraction(alpha), as_fraction(beta) * self.c, self.d)

    def contains(self, x) -> bool:
        if not isinstance(x, QuadElem) or x.d != self.d:
            return False
        alpha, beta = self.coords(x)
        return in_Ov(self.p, alpha) and in_Ov(self.p, beta)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def one(self):
        return QuadElem(Fraction(1), Fraction(0), self.d)

    def __str__(self):
        return f"O_v[{self.c}*sqrt({self.d})] (p={self.p})"


@dataclass(frozen=True)
class QuotientAlg:
    """R = O_v / I with I = {x : v(x) >= ideal_min_value}; elements are representatives."""

    p: int
    ideal_min_value: int

    def __post_init__(self):
        _check_prime(self.p)
        mu = as_fraction(self.ideal_min_value)
        if mu.denominator != 1 or mu < 1:
            raise ValueError("the ideal must be proper and nonzero: min value an integer >= 1")
        object.__setattr__(self, "ideal_min_value", int(mu))

    kind = "quotient"
    rank = 1
    torsion_free = False

    @classmethod
    def from_cut(cls, p: int, cut: Cut) -> "QuotientAlg":
        """I = values outside the left set of a principal cut gamma^+ of Gamma_v^{>=0}."""
        if not cut.is_principal or cut.rank != 1:
            raise ValueError("ideal cuts of Z are principal cuts gamma^+")
        return cls(p, cut.gamma.coords[0] + 1)

    def contains(self, x) -> bool:
        try:
            return in_Ov(self.p, x)
        except TypeError:
            return False

    def in_ideal(self, x) -> bool:
        x = as_fraction(x)
        return x == 0 or vp_int(self.p, x) >= self.ideal_min_value

    def is_zero(self, x) -> bool:
        return self.in_ideal(x)

    def one(self):
        return Fraction(1)

    def __str__(self):
        return f"O_v/(p^{self.ideal_min_value}) (p={self.p})"


@dataclass(frozen=True)
class LocalizationAlg:
    """R = S^-1 O_v over the rank-2 valuation on Q(t), S = O_v minus P, P <-> H_level."""

    p: int
    h_level: int

    def __post_init__(self):
        _check_prime(self.p)
        if not 0 <= self.h_level < 2:
            raise ValueError("H must be a proper isolated subgroup of Z^2 (level 0 or 1)")

    kind = "localization"
    rank = 2
    torsion_free = True

    @property
    def h(self) -> IsolatedSubgroup:
        return IsolatedSubgroup(2, self.h_level)

    @property
    def base(self):
        return composite_valuation(self.p)

    def u(self, x) -> tuple:
        """The value of x modulo H (first 2 - level coordinates)."""
        val = composite_valuation(self.p, x)
        return INF if val is INF else val.coords[: 2 - self.h_level]

    def contains(self, x) -> bool:
        if not isinstance(x, RankTwoElem):
            return False
        val = self.u(x)
        return val is INF or val >= (0,) * len(val)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def one(self):
        return RankTwoElem.const(1)

    def __str__(self):
        return f"S^-1 O_v, H level {self.h_level} (p={self.p})"


Algebra = QuadOrder | QuotientAlg | LocalizationAlg


def parse_algebra(rec: dict) -> Algebra:
    kind = rec.get("kind")
    p = int(rec["p"])
    if kind == "quad_order":
        return QuadOrder(p, int(rec["d"]), Fraction(str(rec.get("c", 1))))
    if kind == "quotient":
        return QuotientAlg(p, Fraction(str(rec["ideal_min_value"])))
    if kind == "localization":
        return LocalizationAlg(p, int(rec["h_level"]))
    raise DomainError(f"unknown algebra kind {kind!r}")


# ---- supports ---------------------------------------------------------------

def support_cut(R: Algebra, x):
    """Closed-form v(S_x)^+."""
    if not R.contains(x):
        raise DomainError(f"{x} is not an element of {R}")
    if isinstance(R, QuadOrder):
        if x.is_zero():
            return INF
        alpha, beta = R.coords(x)
        vals = [vp_int(R.p, t) for t in (alpha, beta) if t != 0]
        return principal(_g(min(vals)))
    if isinstance(R, QuotientAlg):
        if R.in_ideal(x):
            return INF
        return principal(_g(vp_int(R.p, x)))
    if isinstance(R, LocalizationAlg):
        if x.is_zero():
            return INF
        val = composite_valuation(R.p, x)
        return Cut.of(val.to_group(), R.h_level)
    raise TypeError(f"unsupported algebra {R!r}")


def filter_qv(R: Algebra) -> QuasiValuation:
    return QuasiValuation(f"filter[{R}]", lambda x: support_cut(R, x), codomain="cut",
                          rank=R.rank, domain=str(R), contains=R.contains,
                          params={"kind": "filter", "algebra": R})


# ---- brute-force support oracles --------------------------------------------

def _in_aR_quad(R: QuadOrder, x: QuadElem, a) -> bool:
    r = x / a
    return R.contains(r)


def _in_aR_quotient(R: QuotientAlg, x, a) -> bool:
    # x + I in aR iff x - a*r in I for some residue r mod p^mu
    mod = R.p ** R.ideal_min_value
    x = as_fraction(x)
    xr = x.numerator * pow(x.denominator, -1, mod) % mod
    a = as_fraction(a)
    ar = a.numerator * pow(a.denominator, -1, mod) % mod
    return any((xr - ar * r) % mod == 0 for r in range(mod))


def _in_aR_local(R: LocalizationAlg, x: RankTwoElem, a: RankTwoElem, h_max: int) -> bool:
    # x in a S^-1 O_v iff s*x/a in O_v for some s in S.  S is searched through
    # p^h (value (0, h) in H^{>=0}) when H is nontrivial and through units
    # otherwise; v(s*q) = v(q) + v(s).
    q = x / a
    vq = composite_valuation(R.p, q)
    if vq is INF:
        return True
    i, j = (int(c) for c in vq.coords)
    hs = range(h_max + 1) if R.h_level == 1 else (0,)
    return any((i, j + h) >= (0, 0) for h in hs)


def oracle_support(R: Algebra, x, window: int = 8) -> tuple[object, bool]:
    """Brute-force v(S_x)^+ as a cut, plus the initial-subset verdict.

    Candidate divisors are a = p^k (rank 1) or t^i p^j (rank 2) for values
    in the window.  Returns (cut, initial) where cut is INF when every
    window value divides x.
    """
    p = R.p
    if isinstance(R, (QuadOrder, QuotientAlg)):
        ks = range(0, window + 1)
        if isinstance(R, QuadOrder):
            hits = [k for k in ks if _in_aR_quad(R, x, Fraction(p) ** k)]
        else:
            hits = [k for k in ks if _in_aR_quotient(R, x, Fraction(p) ** k)]
        initial = hits == list(range(len(hits)))
        if len(hits) == len(ks):
            return INF, initial
        if not hits:
            return Cut.minus_inf(1), initial
        return principal(_g(max(hits))), initial
    if isinstance(R, LocalizationAlg):
        B = window
        cands = [(i, j) for i in range(0, B + 1) for j in range(-B, B + 1) if (i, j) >= (0, 0)]
        hits = set()
        for i, j in cands:
            a = RankTwoElem.monomial(Fraction(p) ** j, i)
            if _in_aR_local(R, x, a, 4 * B):
                hits.add((i, j))
        # initial subset among non-negative window values
        initial = all(c in hits for c in cands if any(c <= h for h in hits))
        if len(hits) == len(cands):
            return INF, initial
        top = max(hits)
        # identify the cut from the window: the left set is the downward closure of hits
        # if it is unbounded in the second coordinate at the top first coordinate it is
        # an H-cut, else principal
        if R.h_level == 1 and (top[0], B) in hits:
            return Cut.of(_g(top[0], 0), 1), initial
        return principal(_g(*top)), initial
    raise TypeError(f"unsupported algebra {R!r}")


def check_support_oracle(R: Algebra, sampler: Sampler, count: int = 200, seed: int = 0,
                         window: int = 8) -> Report:
    """Closed form against the brute-force oracle, plus the initial-subset property."""
    rng = random.Random(seed)
    n = violations = 0
    first = None
    for _ in range(count):
        x = sampler(rng)
        closed = support_cut(R, x)
        if closed is not INF and not _fits(closed, window):
            continue
        n += 1
        brute, initial = oracle_support(R, x, window)
        if brute != closed or not initial:
            violations += 1
            first = first or (x, closed, brute, initial)
    return Report(f"support-oracle[{R.kind}]", violations == 0, n, violations, seed, first,
                  {"window": window})


def _fits(cut: Cut, window: int) -> bool:
    # the window must reach strictly past the cut for the oracle to see its edge
    if cut.kind != "cut":
        return True
    g = cut.gamma.coords
    if cut.rank == 1:
        return 0 <= g[0] < window
    return 0 <= g[0] < window and -window < g[1] < window


# ---- samplers for algebra elements -------------------------------------------

def elements(R: Algebra, zero_rate: float = 0.05) -> Sampler:
    p = R.p
    ov = ov_elements(p, 0.0)
    if isinstance(R, QuadOrder):
        def draw(rng):
            alpha = Fraction(0) if rng.random() < 0.15 else ov(rng)
            beta = Fraction(0) if rng.random() < 0.15 else ov(rng)
            return R.element(alpha, beta)
        return draw
    if isinstance(R, QuotientAlg):
        def draw(rng):
            if rng.random() < zero_rate:
                return Fraction(0)
            return ov(rng)
        return draw
    if isinstance(R, LocalizationAlg):
        def draw(rng):
            if rng.random() < zero_rate:
                return RankTwoElem.const(0)
            c = rational(rng, p, max_exp=3, height=500)
            e = rng.randint(0, 3)
            x = RankTwoElem.monomial(c, e)
            if rng.random() < 0.5:
                x = x + RankTwoElem.monomial(rational(rng, p, 3, 500), e + rng.randint(1, 2))
            if rng.random() < 0.3:
                den = RankTwoElem.const(1) + RankTwoElem.monomial(rational(rng, p, 2, 50), 1)
                x = x / den
            while not R.contains(x):
                x = x * RankTwoElem.monomial(1, 1) if R.h_level == 1 else \
                    x * RankTwoElem.const(p)
            return x
        return draw
    raise TypeError(f"unsupported algebra {R!r}")


# ---- extension to the fraction field -------------------------------------------

def clearing_exponent(R: QuadOrder, x: QuadElem) -> int:
    """Least e >= 0 with p^e x in R."""
    if x.is_zero():
        return 0
    alpha, beta = R.coords(x)
    vals = [vp_int(R.p, t) for t in (alpha, beta) if t != 0]
    return max(0, -min(vals))


def filter_qv_extend(R: QuadOrder) -> QuasiValuation:
    """W(r / beta) = w(r) - v(beta) on Q(sqrt d), with beta = p^e the minimal clearing power."""
    if not isinstance(R, QuadOrder):
        raise TypeError("only the quadratic orders are integral domains here")
    w = filter_qv(R)

    def W(x):
        if not isinstance(x, QuadElem) or x.d != R.d:
            raise DomainError(f"{x} is not in Q(sqrt {R.d})")
        e = clearing_exponent(R, x)
        r = x * (Fraction(R.p) ** e)
        return cut_sub_group(w(r), _g(e))

    return QuasiValuation(f"W[{R}]", W, codomain="cut", rank=1, domain=f"Q(sqrt {R.d})",
                          params={"kind": "filter_ext", "algebra": R, "filter": w})


def check_well_defined(R: QuadOrder, sampler: Sampler, count: int = 300, seed: int = 0) -> Report:
    """w(beta x) - v(beta) does not depend on the chosen denominator beta."""
    W = filter_qv_extend(R)
    w = filter_qv(R)
    rng = random.Random(seed)
    violations = 0
    first = None
    for _ in range(count):
        x = sampler(rng)
        extra = rng.randint(0, 3)
        unit = Fraction(rng.choice([u for u in range(1, 30) if u % R.p]),
                        rng.choice([u for u in range(1, 30) if u % R.p]))
        beta = unit * Fraction(R.p) ** (clearing_exponent(R, x) + extra)
        alt = cut_sub_group(w(x * beta), _g(vp_int(R.p, beta)))
        if alt != W(x):
            violations += 1
            first = first or (x, beta)
    return Report(f"well-defined[{R}]", violations == 0, count, violations, seed, first)


def _value_as_cut(val):
    return INF if val is INF else principal(val.to_group())


def kummer_equivalence(p: int, d: int, c, sampler: Sampler, count: int = 1000,
                       seed: int = 0) -> Report:
    """W for O_v[ce] equals the Kummer map with gamma = v(c) (principal cuts = values)."""
    R = QuadOrder(p, d, c)
    W = filter_qv_extend(R)
    k = kummer(padic(p), vp_int(p, R.c), d)
    rng = random.Random(seed)
    violations = 0
    first = None
    for _ in range(count):
        x = sampler(rng)
        lhs, rhs = W(x), _value_as_cut(k(x))
        if lhs != rhs:
            violations += 1
            first = first or (x, lhs, rhs)
    return Report(f"filter=kummer[p={p},d={d},c={c}]", violations == 0, count, violations,
                  seed, first)


def ring_identity(R: QuadOrder, sampler: Sampler, count: int = 1000, seed: int = 0) -> Report:
    """x in R iff W(x) >= 0^+; also W never takes the value MinusInf."""
    W = filter_qv_extend(R)
    zero = principal(_g(0))
    rng = random.Random(seed)
    violations = 0
    first = None
    for _ in range(count):
        x = sampler(rng)
        val = W(x)
        bad = (val is not INF and val.kind == "minus_inf") or (R.contains(x) != (val >= zero))
        if bad:
            violations += 1
            first = first or (x, val)
    return Report(f"ring-identity[{R}]", violations == 0, count, violations, seed, first)


def extends_base(R: QuadOrder, sampler: Sampler, count: int = 1000, seed: int = 0) -> Report:
    """W(a) = v(a)^+ for a in the base field."""
    W = filter_qv_extend(R)
    v = padic(R.p)
    rng = random.Random(seed)
    violations = 0
    first = None
    for _ in range(count):
        a = as_fraction(sampler(rng))
        lhs = W(QuadElem(a, Fraction(0), R.d))
        rhs = _value_as_cut(v(a))
        if lhs != rhs:
            violations += 1
            first = first or (a, lhs, rhs)
    return Report(f"extends-v[{R}]", violations == 0, count, violations, seed, first)


def iw_equals_IvR(R: QuadOrder, sampler: Sampler | None = None, count: int = 1000,
                  seed: int = 0) -> Report:
    """W(x) > 0^+ iff both R-coordinates of x lie in I_v."""
    sampler = sampler or elements(R)
    W = filter_qv_extend(R)
    zero = principal(_g(0))
    rng = random.Random(seed)
    violations = 0
    first = None
    for _ in range(count):
        x = sampler(rng)
        alpha, beta = R.coords(x)
        in_IvR = all(t == 0 or vp_int(R.p, t) > 0 for t in (alpha, beta))
        if (W(x) > zero) != in_IvR:
            violations += 1
            first = first or (x, W(x))
    return Report(f"I_w=I_vR[{R}]", violations == 0, count, violations, seed, first)


def coarsest_check(R: Algebra, other: QuasiValuation, sampler: Sampler,
                   count: int = 1000, seed: int = 0,
                   ambient: Sampler | None = None) -> Report:
    """w_filter(x) < w_filter(y) implies other(x) < other(y) on sampled pairs of R.

    If ``ambient`` is given, O_other = R is confirmed on its samples first.
    """
    w = filter_qv(R)
    rng = random.Random(seed)
    if ambient is not None:
        zero = other.zero_value()
        for _ in range(count):
            x = ambient(rng)
            if R.contains(x) != (other(x) >= zero):
                return Report(f"coarsest[{other.name}]", False, 0, 1, seed, ("ring", x),
                              {"precondition": "O_other != R"})
    violations = 0
    first = None
    for _ in range(count):
        x, y = sampler(rng), sampler(rng)
        if w(x) < w(y) and not other(x) < other(y):
            violations += 1
            first = first or (x, y)
    return Report(f"coarsest[{other.name}]", violations == 0, count, violations, seed, first)


def scalar_linearity(R: Algebra, sampler: Sampler, count: int = 500, seed: int = 0,
                     extra: Iterable = ()) -> Report:
    """w(cx) = v(c) + w(x) for c in O_v and x in R; counterexamples expose torsion."""
    w = filter_qv(R)
    v = padic(R.p) if R.rank == 1 else composite_valuation(R.p)
    scal = ov_elements(R.p, 0.0)
    rng = random.Random(seed)
    pairs = list(extra)
    for _ in range(count):
        c = scal(rng)
        if R.rank == 2:
            c = RankTwoElem.const(c)
        pairs.append((c, sampler(rng)))
    violations = 0
    first = None
    for c, x in pairs:
        vc = v(c)
        shift = vc.to_group()
        lhs = w(c * x) if not isinstance(R, QuadOrder) else w(x * c)
        rhs = w(x)
        rhs = INF if rhs is INF else rhs.shift(shift)
        if lhs != rhs:
            violations += 1
            first = first or (c, x, lhs, rhs)
    return Report(f"scalar-linear[{R.kind}]", violations == 0, len(pairs), violations, seed, first)


def torsion_witness_pair(R: QuotientAlg):
    """(c, x) with x not in I but c*x in I."""
    return Fraction(R.p) ** R.ideal_min_value, Fraction(1)


def unit_bound(R: Algebra, sampler: Sampler, count: int = 300, seed: int = 0) -> Report:
    """w(c * 1_R) >= v(c)^+ and w(r) >= 0^+ for sampled c in O_v and r in R."""
    w = filter_qv(R)
    v = padic(R.p) if R.rank == 1 else composite_valuation(R.p)
    scal = ov_elements(R.p, 0.0)
    zero = principal(GroupElem.zero(R.rank))
    rng = random.Random(seed)
    violations = 0
    first = None
    for _ in range(count):
        c = scal(rng)
        if R.rank == 2:
            c = RankTwoElem.const(c)
        if not w(R.one() * c) >= principal(v(c).to_group()):
            violations += 1
            first = first or ("unit", c)
        r = sampler(rng)
        if not w(r) >= zero:
            violations += 1
            first = first or ("nonneg", r)
    return Report(f"unit-bound[{R.kind}]", violations == 0, count, violations, seed, first)


# ---- localization --------------------------------------------------------------

def trivial_filter_value(x_is_zero: bool):
    """Filter value over the trivially valued field: rank-0 cut monoid."""
    return INF if x_is_zero else Cut.of(GroupElem(()), 0)


def localization_compat(instance: str, sampler: Sampler | None = None, count: int = 300,
                        seed: int = 0, p: int = 5, d: int = -1) -> Report:
    """Projected filter values of (R, v) against the filter of (S^-1 R, u).

    Instances: "rank1-max" (P = I_v, S units), "rank1-zero" (P = 0, u trivial),
    "rank2" (base O_v over Q(t), P <-> H = 0 x Z, u the first coordinate).
    """
    rng = random.Random(seed)
    violations = 0
    first = None
    n = 0
    if instance in ("rank1-max", "rank1-zero"):
        R = QuadOrder(p, d, 1)
        w = filter_qv(R)
        sampler = sampler or elements(R)
        level = 0 if instance == "rank1-max" else 1
        h = IsolatedSubgroup(1, level)
        for _ in range(count):
            x = sampler(rng)
            lhs = project_cut(w(x), h)
            if instance == "rank1-max":
                rhs = w(x)  # S^-1 R = R and u = v
            else:
                rhs = trivial_filter_value(x.is_zero())
            n += 1
            if lhs != rhs:
                violations += 1
                first = first or (x, lhs, rhs)
    elif instance == "rank2":
        R0 = LocalizationAlg(p, 0)
        R1 = LocalizationAlg(p, 1)
        w0, w1 = filter_qv(R0), filter_qv(R1)
        h = IsolatedSubgroup(2, 1)
        s0 = sampler or elements(R0)
        s1 = elements(R1)
        for _ in range(count):
            for x, w in ((s0(rng), w0), (s1(rng), w1)):
                if not (x.is_zero() or R0.contains(x)) and w is w0:
                    continue
                lhs = project_cut(w(x), h)
                u = R1.u(x)
                rhs = INF if u is INF else principal(_g(u[0]))
                n += 1
                if lhs != rhs:
                    violations += 1
                    first = first or (x, lhs, rhs)
    else:
        raise ValueError(f"unknown localization instance {instance!r}")
    return Report(f"localization[{instance}]", violations == 0, n, violations, seed, first)
