"""Cuts of Z^k (lex) and the cut monoid.

Every cut handled here is one of ``MinusInf`` (empty left set),
``PlusInf`` (left set the whole group) or ``CutOf(gamma, H)`` whose left
set is ``(-inf, gamma] + H^{>=0}``.  That left set only depends on the
coordinates of ``gamma`` outside ``H``, so the canonical form zeroes the
coordinates inside ``H``.  The class is closed under left sums, scaling
and shifts by group elements.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .ordered import INF, GroupElem, Ordering, RankMismatch, _Infinity

MINUS_INF = "minus_inf"
CUT = "cut"
PLUS_INF = "plus_inf"


@dataclass(frozen=True, order=True)
class IsolatedSubgroup:
    """H_j: elements of Z^k whose first k - j coordinates vanish."""

    rank: int
    level: int

    def __post_init__(self):
        if not 0 <= self.level <= self.rank:
            raise ValueError(f"level {self.level} outside 0..{self.rank}")

    def contains(self, g: GroupElem) -> bool:
        return not any(g.coords[: self.rank - self.level])

    @property
    def is_trivial(self) -> bool:
        return self.level == 0

    @property
    def is_whole(self) -> bool:
        return self.level == self.rank

    def __str__(self):
        return f"H{self.level}/Z^{self.rank}"


def isolated_subgroups(k: int) -> list[IsolatedSubgroup]:
    if k < 0:
        raise ValueError("rank must be non-negative")
    return [IsolatedSubgroup(k, j) for j in range(k + 1)]


@dataclass(frozen=True)
class Cut:
    kind: str
    rank: int
    gamma: GroupElem | None = None
    level: int = 0

    # construction ---------------------------------------------------------

    @classmethod
    def of(cls, gamma: GroupElem, h: IsolatedSubgroup | int = 0) -> "Cut":
        """The cut with left set (-inf, gamma] + H^{>=0}, canonicalized."""
        k = gamma.rank
        level = h.level if isinstance(h, IsolatedSubgroup) else h
        if isinstance(h, IsolatedSubgroup) and h.rank != k:
            raise RankMismatch(f"subgroup of Z^{h.rank} used with Z^{k}")
        if not 0 <= level <= k:
            raise ValueError(f"level {level} outside 0..{k}")
        if level == k:
            return cls.plus_inf(k)
        head = gamma.coords[: k - level]
        return cls(CUT, k, GroupElem(head + (0,) * level), level)

    @classmethod
    def minus_inf(cls, k: int) -> "Cut":
        return cls(MINUS_INF, k)

    @classmethod
    def plus_inf(cls, k: int) -> "Cut":
        return cls(PLUS_INF, k)

    # queries --------------------------------------------------------------

    @property
    def subgroup(self) -> IsolatedSubgroup:
        return IsolatedSubgroup(self.rank, self.level)

    @property
    def is_principal(self) -> bool:
        return self.kind == CUT and self.level == 0

    def _key(self):
        # Position of the supremum of the left set: the first k - level
        # coordinates of gamma followed by +inf in the free coordinates.
        if self.kind == MINUS_INF:
            return ((-1, 0),)
        if self.kind == PLUS_INF:
            return ((1, 0),)
        k = self.rank
        head = tuple((0, c) for c in self.gamma.coords[: k - self.level])
        return head + ((1, 0),) if self.level else head

    def contains(self, x: GroupElem) -> bool:
        """Membership of x in the left set."""
        if x.rank != self.rank:
            raise RankMismatch("rank mismatch")
        if self.kind == MINUS_INF:
            return False
        if self.kind == PLUS_INF:
            return True
        n = self.rank - self.level
        return x.coords[:n] <= self.gamma.coords[:n]

    # order ----------------------------------------------------------------

    def _cmp(self, other) -> int:
        if other is INF:
            return -1
        if not isinstance(other, Cut):
            raise TypeError(f"cannot compare Cut with {type(other).__name__}")
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        a, b = self._key(), other._key()
        return -1 if a < b else (0 if a == b else 1)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if other is INF:
            return INF
        if isinstance(other, GroupElem):
            return self.shift(other)
        if not isinstance(other, Cut):
            return NotImplemented
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        kinds = {self.kind, other.kind}
        if kinds == {MINUS_INF, PLUS_INF}:
            raise ValueError("sum of the empty cut and the full cut is undefined")
        if MINUS_INF in kinds:
            return Cut.minus_inf(self.rank)
        if PLUS_INF in kinds:
            return Cut.plus_inf(self.rank)
        return Cut.of(self.gamma + other.gamma, max(self.level, other.level))

    __radd__ = __add__

    def __mul__(self, n):
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        if n < 1:
            raise ValueError("cut scalars must be positive integers")
        if self.kind != CUT:
            return self
        return Cut.of(n * self.gamma, self.level)

    __rmul__ = __mul__

    def shift(self, alpha: GroupElem) -> "Cut":
        """The cut whose left set is {b + alpha : b in left set}."""
        if alpha.rank != self.rank:
            raise RankMismatch("rank mismatch")
        if self.kind != CUT:
            return self
        return Cut.of(self.gamma + alpha, self.level)

    def __sub__(self, alpha):
        if isinstance(alpha, GroupElem):
            return self.shift(-alpha)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.kind == CUT and self.level == 0 and self.gamma.is_zero()

    def zero_like(self) -> "Cut":
        return principal(GroupElem.zero(self.rank))

    # display --------------------------------------------------------------

    def __str__(self):
        if self.kind == MINUS_INF:
            return "(empty|G)"
        if self.kind == PLUS_INF:
            return "(G|empty)"
        g = str(self.gamma)
        if self.level == 0:
            return f"{g}+"
        return f"({g}+H{self.level})+"

    def __repr__(self):
        if self.kind == CUT:
            return f"Cut.of({self.gamma!r}, {self.level})"
        return f"Cut.{self.kind}({self.rank})"


CutValue = Union[Cut, _Infinity]


def principal(gamma: GroupElem) -> Cut:
    return Cut.of(gamma, 0)


def subgroup_cut(h: IsolatedSubgroup) -> Cut:
    """H^+ : the cut with left set (-inf, 0] u H^{>=0}."""
    return Cut.of(GroupElem.zero(h.rank), h.level)


def cut_add(a: CutValue, b: CutValue) -> CutValue:
    if a is INF or b is INF:
        return INF
    return a + b


def cut_scalar(n: int, a: CutValue) -> CutValue:
    if not isinstance(n, int) or n < 1:
        raise ValueError("cut scalars must be positive integers")
    return a if a is INF else n * a


def cut_cmp(a: CutValue, b: CutValue) -> Ordering:
    if a is INF:
        return Ordering.EQ if b is INF else Ordering.GT
    if b is INF:
        return Ordering.LT
    return Ordering(a._cmp(b))


def cut_sub_group(a: CutValue, alpha: GroupElem) -> CutValue:
    if a is INF:
        return INF
    return a.shift(-alpha)


def project_cut(a: CutValue, h: IsolatedSubgroup) -> CutValue:
    """Image of a cut of Z^k in the cut monoid of Z^k / H = Z^(k-j)."""
    if a is INF:
        return INF
    k, j = a.rank, h.level
    if h.rank != k:
        raise RankMismatch("rank mismatch")
    if a.kind == MINUS_INF:
        return Cut.minus_inf(k - j)
    if a.kind == PLUS_INF:
        return Cut.plus_inf(k - j)
    gamma = GroupElem(a.gamma.coords[: k - j])
    return Cut.of(gamma, max(a.level - j, 0))


# ---- serialization ----------------------------------------------------------

def cut_to_record(a: CutValue, rank: int | None = None) -> dict:
    if a is INF:
        rec = {"kind": "infinity"}
        if rank is not None:
            rec["rank"] = rank
        return rec
    rec = {"kind": a.kind, "rank": a.rank}
    if a.kind == CUT:
        rec["gamma"] = list(a.gamma.coords)
        rec["h_level"] = a.level
    return rec


def cut_from_record(rec: dict) -> CutValue:
    kind = rec["kind"]
    if kind == "infinity":
        return INF
    if kind == CUT:
        gamma = GroupElem(tuple(int(c) for c in rec["gamma"]))
        cut = Cut.of(gamma, int(rec.get("h_level", 0)))
        if "rank" in rec and int(rec["rank"]) != gamma.rank:
            raise ValueError("rank field disagrees with gamma")
        return cut
    rank = int(rec["rank"])
    if kind == MINUS_INF:
        return Cut.minus_inf(rank)
    if kind == PLUS_INF:
        return Cut.plus_inf(rank)
    raise ValueError(f"unknown cut kind {kind!r}")


# ---- positive isolated monoids ---------------------------------------------

@dataclass(frozen=True)
class PimDescriptor:
    """hull_M(H^{>=0}) (closed=False) or its closure (closed=True) in the cut monoid."""

    h: IsolatedSubgroup
    closed: bool = False

    def __contains__(self, m: Cut) -> bool:
        return pim_membership(m, self)

    def __str__(self):
        name = "closure" if self.closed else "hull"
        return f"{name}({self.h})"


@dataclass(frozen=True)
class LexMaxPim:
    """{(0, i) : i <= j} inside Z x chain."""

    j: int
    chain: object = None

    def __contains__(self, m) -> bool:
        return m.z == 0 and m.m.level <= self.j

    def __str__(self):
        return f"{{(0,i) : i <= {self.j}}}"


@dataclass(frozen=True)
class PimListing:
    pims: list
    truncated: bool = False

    def __len__(self):
        return len(self.pims)


def pim_membership(m: Cut, pim: PimDescriptor) -> bool:
    if m is INF:
        return False
    zero = principal(GroupElem.zero(m.rank))
    if m < zero:
        raise ValueError(f"{m} is negative; PIMs live in M^(>=0)")
    h = pim.h
    if h.is_trivial:
        return m == zero
    top = subgroup_cut(h)
    return m <= top if pim.closed else m < top


def pims_over(h: IsolatedSubgroup | None, monoid_kind: str = "cut", bound: int = 0,
              chain=None) -> PimListing:
    """PIMs lying over H^{>=0}.

    For the cut monoid these are the hull and its closure (equal when H is
    trivial).  For Z x chain over {0} the family {(0, i)}_{i <= j}, one per
    chain level, enumerated up to ``bound`` for an unbounded chain.
    """
    if monoid_kind == "cut":
        if h.is_trivial:
            return PimListing([PimDescriptor(h, False)])
        return PimListing([PimDescriptor(h, False), PimDescriptor(h, True)])
    if monoid_kind == "lexmax":
        from .ordered import NATURALS

        chain = chain or NATURALS
        level = 0 if h is None else h.level
        if level != 0:
            # over Z^{>=0} the only PIM is the whole non-negative part
            return PimListing(["M>=0"])
        if chain.size is None:
            return PimListing([LexMaxPim(j, chain) for j in range(bound + 1)], truncated=True)
        return PimListing([LexMaxPim(j, chain) for j in range(chain.size)])
    raise ValueError(f"unknown monoid kind {monoid_kind!r}")
