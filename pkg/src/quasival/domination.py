"""Amalgamated order of a value monoid with Gamma_div, domination, and
exponential decomposition."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import check_exponential, min_family
from .cuts import CUT, Cut, principal
from .ordered import (INF, TWO_CHAIN, DivElem, GroupElem, LexProductElem, MaxChain, Ordering,
                      lattice_box, torsion_witness)
from .reports import Report
from .sampling import Sampler
from .valuation import QuasiValuation

M_KINDS = ("cut", "lexmax", "div")
ORACLE_T = 12
ORACLE_N = 12


@dataclass(frozen=True)
class Amalgam:
    """T = M disjoint-union Gamma_div for a supported value monoid M.

    ``kind`` is "cut" (cut monoid of Z^rank), "lexmax" (Z x chain) or
    "div" (M is Gamma_div itself, for group-valued maps).
    """

    kind: str
    rank: int = 1
    chain: MaxChain = TWO_CHAIN

    def __post_init__(self):
        if self.kind not in M_KINDS:
            raise ValueError(f"unsupported monoid kind {self.kind!r}")
        if self.kind == "lexmax" and self.rank != 1:
            raise ValueError("Z x chain has a rank-1 group part")

    def from_m(self, m) -> "AmalgamElem":
        return AmalgamElem("M", m, self)

    def from_div(self, q) -> "AmalgamElem":
        if not isinstance(q, DivElem):
            q = DivElem((Fraction(q),))
        return AmalgamElem("div", q, self)

    def embed(self, g: GroupElem):
        """Gamma inside M."""
        if self.kind == "cut":
            return principal(g)
        if self.kind == "lexmax":
            return LexProductElem(g.coords[0], self.chain.zero())
        return DivElem.embed(g)

    def phi(self, x: "AmalgamElem") -> tuple:
        """phi(x) = (m, n) in M_div, with m in M."""
        if x.side == "M":
            return x.value, 1
        n = torsion_witness(x.value)
        return self.embed((x.value * n).to_group()), n

    def compare(self, x: "AmalgamElem", y: "AmalgamElem") -> Ordering:
        """Order on T-bar.

        Two M elements compare in M (phi is injective because every
        supported M is N-strictly ordered, so this agrees with the phi
        rule); every comparison involving Gamma_div goes through phi:
        (m1, n1) <= (m2, n2) iff n2 m1 <= n1 m2.
        """
        self._check(x)
        self._check(y)
        if x.side == "M" and y.side == "M":
            return Ordering.of(x.value, y.value)
        (m1, n1), (m2, n2) = self.phi(x), self.phi(y)
        return Ordering.of(m1 * n2, m2 * n1)

    def equivalent(self, x: "AmalgamElem", y: "AmalgamElem") -> bool:
        if x.side == "M" and y.side == "M":
            return x.value == y.value
        return self.compare(x, y) == Ordering.EQ

    def is_singular(self, x: "AmalgamElem") -> bool:
        """M elements: no Gamma_div element is equivalent.  Gamma_div elements:
        no M element is equivalent."""
        self._check(x)
        if self.kind == "div":
            return False
        if x.side == "M":
            if self.kind == "cut":
                return not x.value.is_principal
            return not x.value.m.is_zero()
        return not x.value.is_integral()

    def _check(self, x: "AmalgamElem"):
        if x.amalgam != self:
            raise ValueError(f"element of {x.amalgam} used in {self}")

    # ---- definition-level oracles (bounded search) ---------------------------

    def oracle_leq(self, x: "AmalgamElem", y: "AmalgamElem", T: int = ORACLE_T) -> bool:
        """[x] <= [y] from the definition: direct order for two singular M
        elements, else some t <= T with t n2 m1 <= t n1 m2."""
        if x.side == "M" and y.side == "M" and self.is_singular(x) and self.is_singular(y):
            return x.value <= y.value
        (m1, n1), (m2, n2) = self._raw_phi(x), self._raw_phi(y)
        return any(m1 * (t * n2) <= m2 * (t * n1) for t in range(1, T + 1))

    def oracle_equiv(self, x: "AmalgamElem", y: "AmalgamElem", T: int = ORACLE_T) -> bool:
        if x.side == "M" and y.side == "M":
            return x.value == y.value
        (m1, n1), (m2, n2) = self._raw_phi(x), self._raw_phi(y)
        return any(m1 * (t * n2) == m2 * (t * n1) for t in range(1, T + 1))

    def oracle_singular(self, x: "AmalgamElem", N: int = ORACLE_N, T: int = ORACLE_T,
                        box: int = 6) -> bool:
        """Search for an equivalent element on the other side.

        For x in M: (gamma, n) with gamma in a box and n <= N.  For x in
        Gamma_div: m among cuts / chain elements built from a box.
        """
        if self.kind == "div":
            return False
        if x.side == "M":
            for n in range(1, N + 1):
                for g in lattice_box(self.rank, box * n):
                    q = self.from_div(DivElem(tuple(Fraction(c, n) for c in g.coords)))
                    if self.oracle_equiv(x, q, T):
                        return False
            return True
        for m in self.sample_m(box):
            if self.oracle_equiv(self.from_m(m), x, T):
                return False
        return True

    def _raw_phi(self, x):
        # (gamma, n) with the smallest n from the stored rational form
        return self.phi(x)

    def sample_m(self, box: int) -> list:
        """Every M element built from a box of group elements (all levels)."""
        out = []
        if self.kind == "cut":
            for g in lattice_box(self.rank, box):
                for level in range(self.rank + 1):
                    out.append(Cut.of(g, level))
            out += [Cut.minus_inf(self.rank), Cut.plus_inf(self.rank)]
            return sorted(set(out), key=lambda c: c._key())
        if self.kind == "lexmax":
            levels = self.chain.elements(3)
            return [LexProductElem(z, m) for z in range(-box, box + 1) for m in levels]
        return [DivElem.embed(g) for g in lattice_box(self.rank, box)]


@dataclass(frozen=True)
class AmalgamElem:
    side: str  # "M" or "div"
    value: object
    amalgam: Amalgam = field(compare=True)

    def __post_init__(self):
        if self.side not in ("M", "div"):
            raise ValueError("side must be 'M' or 'div'")

    @property
    def singular(self) -> bool:
        return self.amalgam.is_singular(self)

    def __str__(self):
        tag = "M" if self.side == "M" else "div"
        return f"{tag}:{self.value}"


def is_singular(x: AmalgamElem) -> bool:
    return x.amalgam.is_singular(x)


def amalgam_cmp(x: AmalgamElem, y: AmalgamElem) -> Ordering:
    if x.amalgam != y.amalgam:
        raise ValueError(f"monoid kind mismatch: {x.amalgam.kind} vs {y.amalgam.kind}")
    return x.amalgam.compare(x, y)


def amalgam_for(w: QuasiValuation) -> Amalgam:
    if w.codomain == "cut":
        return Amalgam("cut", w.rank)
    if w.codomain == "lexmax":
        return Amalgam("lexmax", 1, w.params["chain"])
    return Amalgam("div", w.rank)


def random_amalgam_elem(am: Amalgam, rng: random.Random, box: int = 8, n_max: int = 6) -> AmalgamElem:
    if rng.random() < 0.5:
        if am.kind == "cut":
            r = rng.random()
            if r < 0.04:
                return am.from_m(Cut.minus_inf(am.rank))
            if r < 0.08:
                return am.from_m(Cut.plus_inf(am.rank))
            g = GroupElem(tuple(rng.randint(-box, box) for _ in range(am.rank)))
            return am.from_m(Cut.of(g, rng.randint(0, am.rank - 1)))
        if am.kind == "lexmax":
            return am.from_m(LexProductElem(rng.randint(-box, box),
                                            am.chain.elem(rng.randrange(am.chain.size or 4))))
    n = rng.randint(1, n_max)
    q = DivElem(tuple(Fraction(rng.randint(-box * n, box * n), n) for _ in range(am.rank)))
    return am.from_div(q)


def check_total_order(am: Amalgam, count: int = 10_000, seed: int = 0, box: int = 8) -> Report:
    """Totality, antisymmetry up to equivalence and transitivity on sampled triples."""
    rng = random.Random(seed)
    violations = 0
    first = None
    for _ in range(count):
        x, y, z = (random_amalgam_elem(am, rng, box) for _ in range(3))
        xy, yx = am.compare(x, y), am.compare(y, x)
        yz, xz = am.compare(y, z), am.compare(x, z)
        bad = None
        if xy != -yx:
            bad = ("totality", x, y)
        elif xy == Ordering.EQ and not am.equivalent(x, y):
            bad = ("antisymmetry", x, y)
        elif xy <= 0 and yz <= 0 and xz > 0:
            bad = ("transitivity", x, y, z)
        elif xy != (Ordering.LT if not am.oracle_leq(y, x) else
                    (Ordering.EQ if am.oracle_leq(x, y) else Ordering.GT)):
            bad = ("oracle", x, y)
        if bad:
            violations += 1
            first = first or bad
    return Report(f"amalgam-order[{am.kind},rank={am.rank}]", violations == 0, count, violations,
                  seed, first, {"oracle_t": ORACLE_T})


def equivalent_partner(am: Amalgam, x: AmalgamElem) -> AmalgamElem:
    """An element ~ x on the other side when x is non-singular, else x."""
    if am.is_singular(x):
        return x
    if x.side == "M":
        if am.kind == "cut":
            return am.from_div(DivElem.embed(x.value.gamma))
        if am.kind == "lexmax":
            return am.from_div(DivElem((Fraction(x.value.z),)))
        return am.from_div(x.value)
    return am.from_m(am.embed(x.value.to_group()))


def check_well_defined(am: Amalgam, count: int = 1000, seed: int = 0, box: int = 8) -> Report:
    """x ~ x', y ~ y' give the same verdict."""
    rng = random.Random(seed)
    violations = 0
    first = None
    for _ in range(count):
        x, y = random_amalgam_elem(am, rng, box), random_amalgam_elem(am, rng, box)
        x2, y2 = equivalent_partner(am, x), equivalent_partner(am, y)
        if not (am.oracle_equiv(x, x2) and am.oracle_equiv(y, y2)):
            violations += 1
            first = first or ("partner", x, x2)
            continue
        if am.compare(x, y) != am.compare(x2, y2):
            violations += 1
            first = first or (x, y, x2, y2)
    return Report(f"amalgam-well-defined[{am.kind}]", violations == 0, count, violations, seed, first)


# ---- domination -------------------------------------------------------------------

def dominates(u: QuasiValuation, w: QuasiValuation, sampler: Sampler, count: int = 1000,
              seed: int = 0) -> Report:
    """w(x) <= u(x) in T-bar on samples, after checking O_w inside O_u."""
    am = amalgam_for(w)
    rng = random.Random(seed)
    xs = [sampler(rng) for _ in range(count)]
    wz, uz = w.zero_value(), u.zero_value()
    for x in xs:
        if w(x) >= wz and not u(x) >= uz:
            return Report("domination", False, 0, 0, seed, x,
                          {"precondition": "O_u does not contain O_w", "w": w.name, "u": u.name})
    violations = 0
    first = None
    for x in xs:
        wx, ux = w(x), u(x)
        if wx is INF or ux is INF:
            if wx is INF and ux is not INF:
                violations += 1
                first = first or (x, wx, ux)
            continue
        if amalgam_cmp(am.from_m(wx), am.from_div(ux)) > 0:
            violations += 1
            first = first or (x, wx, ux)
    return Report("domination", violations == 0, len(xs), violations, seed, first,
                  {"w": w.name, "u": u.name})


# ---- exponential decomposition -----------------------------------------------------

def _agree(f, g, xs) -> object | None:
    for x in xs:
        if f(x) != g(x):
            return x
    return None


@dataclass
class Decomposition:
    members: list
    report: Report

    @property
    def names(self) -> list[str]:
        return [u.name for u in self.members]


def decompose_exponential(w: QuasiValuation, candidates: Sequence[QuasiValuation],
                          sampler: Sampler, count: int = 500, seed: int = 0,
                          extra: Iterable = ()) -> Decomposition:
    """Smallest subset U of the candidates with w = min U on samples.

    Subsets are tried by increasing size (there are at most 2^[E:F] - 1 of
    them); a failure report carries a point where w differs from the
    minimum of all candidates.
    """
    candidates = list(candidates)
    if not candidates:
        raise ValueError("empty candidate set")
    rng = random.Random(seed)
    xs = list(extra) + [sampler(rng) for _ in range(count)]
    for r in range(1, len(candidates) + 1):
        for sub in itertools.combinations(candidates, r):
            if _agree(w, min_family(list(sub)), xs) is None:
                kept = list(sub)
                rep = Report(f"decompose[{w.name}]", True, len(xs), 0, seed,
                             details={"members": [u.name for u in kept]})
                return Decomposition(kept, rep)
    full = min_family(candidates)
    miss = _agree(w, full, xs)
    rep = Report(f"decompose[{w.name}]", False, len(xs), 1, seed, (miss, w(miss), full(miss)),
                 {"reason": "no minimum of candidates matches w"})
    return Decomposition([], rep)


def count_exponentials(candidates: Sequence[QuasiValuation], sampler: Sampler, count: int = 300,
                       seed: int = 0, extra: Iterable = ()) -> int:
    """Pairwise distinct (on samples) minima over nonempty subsets."""
    candidates = list(candidates)
    rng = random.Random(seed)
    xs = list(extra) + [sampler(rng) for _ in range(count)]
    sigs = set()
    for r in range(1, len(candidates) + 1):
        for sub in itertools.combinations(candidates, r):
            f = min_family(list(sub))
            sigs.add(tuple(f(x) for x in xs))
    n = len(candidates)
    assert len(sigs) <= 2 ** n - 1
    return len(sigs)


def max_ideal_census(w: QuasiValuation, candidates: Sequence[QuasiValuation], sampler: Sampler,
                     count: int = 500, seed: int = 0, extra: Iterable = (),
                     n_power: int = 4) -> Report:
    """K_i = {x in O_w : u_i(x) > 0}: distinct count, J_w and the radical of I_w."""
    candidates = list(candidates)
    exp = check_exponential(w, sampler, count=min(count, 200), n_max=3, seed=seed, extra=extra)
    if not exp.passed:
        raise ValueError(f"{w.name} is not exponential: {exp.counterexample}")
    rng = random.Random(seed)
    zero = w.zero_value()
    pool = list(extra) + [sampler(rng) for _ in range(count)]
    ow = [x for x in pool if w(x) >= zero]

    def member(u, x):
        return u(x) > u.zero_value()

    # classes of K_i under "no separating witness"
    classes: list[list[int]] = []
    witnesses = {}
    for i, u in enumerate(candidates):
        for cls in classes:
            rep = candidates[cls[0]]
            sep = next((x for x in ow if member(u, x) != member(rep, x)), None)
            if sep is None:
                cls.append(i)
                break
            witnesses[(cls[0], i)] = sep
        else:
            classes.append([i])
    distinct = len(classes)
    violations = 0
    first = None
    for x in ow:
        in_J = all(member(u, x) for u in candidates)
        in_rad = any(w(x ** k) > zero for k in range(1, n_power + 1))
        if in_J != in_rad:
            violations += 1
            first = first or x
    ok = violations == 0 and distinct <= len(candidates)
    return Report(f"census[{w.name}]", ok, len(ow), violations, seed, first,
                  {"maximal_ideals": distinct, "bound": len(candidates),
                   "witnesses": {f"K{a + 1}/K{b + 1}": str(x) for (a, b), x in witnesses.items()}})


def integrality_probe(w: QuasiValuation, integral: Sampler, count: int = 300, seed: int = 0,
                      extra: Iterable = ()) -> Report:
    """Integral elements over O_v against O_w.

    For exponential w every sampled integral element must lie in O_w.  The
    first integral element outside O_w, if any, is reported in details
    (for non-exponential maps this is expected rather than a failure).
    """
    rng = random.Random(seed)
    xs = list(extra) + [integral(rng) for _ in range(count)]
    exp = check_exponential(w, integral, count=min(count, 200), n_max=3, seed=seed, extra=extra)
    zero = w.zero_value()
    outside = [x for x in xs if not w(x) >= zero]
    ok = not (exp.passed and outside)
    return Report(f"integrality[{w.name}]", ok, len(xs), len(outside) if exp.passed else 0, seed,
                  outside[0] if (outside and exp.passed) else None,
                  {"exponential": exp.passed, "outside": str(outside[0]) if outside else None})
