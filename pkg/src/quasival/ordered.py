"""Exact ordered groups and monoids.

``GroupElem`` is an element of Z^k under the lexicographic order and
``DivElem`` an element of its divisible hull Q^k.  ``MaxElem`` lives in a
chain monoid whose addition is ``max`` and ``LexProductElem`` pairs an
integer with such a chain element.  ``INF`` is the adjoined top element
shared by every codomain.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, NamedTuple, Sequence


class RankMismatch(ValueError):
    pass


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1

    @classmethod
    def of(cls, a, b) -> "Ordering":
        if a < b:
            return cls.LT
        if a == b:
            return cls.EQ
        return cls.GT


class _Infinity:
    """Top element: larger than every monoid value and absorbing under +."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self

    def __mul__(self, n):
        return self

    __rmul__ = __mul__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("quasival.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinity()


def is_inf(x) -> bool:
    return x is INF


def _check_same(a, b):
    if type(a) is not type(b):
        raise TypeError(f"cannot combine {type(a).__name__} with {type(b).__name__}")
    if a.rank != b.rank:
        raise RankMismatch(f"rank {a.rank} vs rank {b.rank}")


class _LexVector:
    """Shared behaviour of integer and rational lex vectors."""

    __slots__ = ()
    coords: tuple

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __len__(self):
        return len(self.coords)

    def _cmp(self, other):
        if other is INF:
            return -1
        _check_same(self, other)
        if self.coords < other.coords:
            return -1
        return 0 if self.coords == other.coords else 1

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __add__(self, other):
        if other is INF:
            return INF
        _check_same(self, other)
        return type(self)(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if other is INF:
            raise ValueError("cannot subtract infinity")
        _check_same(self, other)
        return type(self)(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return type(self)(tuple(-x for x in self.coords))

    def __mul__(self, n):
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        return type(self)(tuple(n * x for x in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def sign(self) -> int:
        for x in self.coords:
            if x:
                return 1 if x > 0 else -1
        return 0

    def prefix(self, n: int) -> tuple:
        return self.coords[:n]


@dataclass(frozen=True, eq=True, repr=False)
class GroupElem(_LexVector):
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        for c in coords:
            if isinstance(c, bool) or not isinstance(c, int):
                raise TypeError(f"GroupElem coordinates must be ints, got {c!r}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *coords: int) -> "GroupElem":
        return cls(tuple(coords))

    @classmethod
    def zero(cls, k: int) -> "GroupElem":
        return cls((0,) * k)

    def __repr__(self):
        return f"GroupElem{self.coords!r}"

    def __str__(self):
        if self.rank == 1:
            return str(self.coords[0])
        return "(" + ",".join(map(str, self.coords)) + ")"


@dataclass(frozen=True, eq=True, repr=False)
class DivElem(_LexVector):
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *coords) -> "DivElem":
        return cls(tuple(coords))

    @classmethod
    def zero(cls, k: int) -> "DivElem":
        return cls((Fraction(0),) * k)

    @classmethod
    def embed(cls, g: GroupElem) -> "DivElem":
        return cls(g.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def to_group(self) -> GroupElem:
        if not self.is_integral():
            raise ValueError(f"{self} is not in the integer lattice")
        return GroupElem(tuple(int(c) for c in self.coords))

    def __repr__(self):
        return f"DivElem({', '.join(map(str, self.coords))})"

    def __str__(self):
        if self.rank == 1:
            return str(self.coords[0])
        return "(" + ",".join(map(str, self.coords)) + ")"


@dataclass(frozen=True)
class MaxChain:
    """A chain monoid with ``max`` as addition.

    ``size=None`` is N u {0}; otherwise the chain has ``size`` elements,
    optionally labelled (e.g. alpha0 < alpha1).
    """

    size: int | None = None
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.labels is not None and self.size != len(self.labels):
            raise ValueError("labels must match chain size")

    def elem(self, level: int) -> "MaxElem":
        return MaxElem(level, self)

    def zero(self) -> "MaxElem":
        return MaxElem(0, self)

    def elements(self, bound: int | None = None) -> list["MaxElem"]:
        n = self.size if self.size is not None else (bound or 0) + 1
        return [MaxElem(i, self) for i in range(n)]


NATURALS = MaxChain()
TWO_CHAIN = MaxChain(2, ("a0", "a1"))


@dataclass(frozen=True)
class MaxElem:
    level: int
    chain: MaxChain = NATURALS

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("chain levels are non-negative")
        if self.chain.size is not None and self.level >= self.chain.size:
            raise ValueError(f"level {self.level} outside chain of size {self.chain.size}")

    @property
    def rank(self):
        return 0

    def _other(self, other):
        if not isinstance(other, MaxElem):
            raise TypeError(f"cannot combine MaxElem with {type(other).__name__}")
        if other.chain != self.chain:
            raise RankMismatch("different chains")
        return other

    def __add__(self, other):
        if other is INF:
            return INF
        other = self._other(other)
        return self if self.level >= other.level else other

    def __mul__(self, n):
        if not isinstance(n, int) or n < 1:
            return NotImplemented
        return self

    __rmul__ = __mul__

    def __lt__(self, other):
        if other is INF:
            return True
        return self.level < self._other(other).level

    def __le__(self, other):
        if other is INF:
            return True
        return self.level <= self._other(other).level

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def is_zero(self):
        return self.level == 0

    def __str__(self):
        if self.chain.labels:
            return self.chain.labels[self.level]
        return str(self.level)


@dataclass(frozen=True)
class LexProductElem:
    """Element (z, m) of Z x chain, added componentwise, ordered left to right."""

    z: int
    m: MaxElem

    @property
    def g(self) -> GroupElem:
        return GroupElem((self.z,))

    @property
    def rank(self):
        return 1

    @classmethod
    def from_int(cls, z: int, chain: MaxChain = NATURALS) -> "LexProductElem":
        return cls(z, chain.zero())

    def _key(self, other):
        if not isinstance(other, LexProductElem):
            raise TypeError(f"cannot compare LexProductElem with {type(other).__name__}")
        if other.m.chain != self.m.chain:
            raise RankMismatch("different chains")
        return (self.z, self.m.level), (other.z, other.m.level)

    def __add__(self, other):
        if other is INF:
            return INF
        self._key(other)
        return LexProductElem(self.z + other.z, self.m + other.m)

    def __mul__(self, n):
        if not isinstance(n, int) or n < 1:
            return NotImplemented
        return LexProductElem(n * self.z, self.m)

    __rmul__ = __mul__

    def __lt__(self, other):
        if other is INF:
            return True
        a, b = self._key(other)
        return a < b

    def __le__(self, other):
        if other is INF:
            return True
        a, b = self._key(other)
        return a <= b

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def is_zero(self):
        return self.z == 0 and self.m.level == 0

    def is_invertible(self):
        return self.m.level == 0

    def __str__(self):
        return f"({self.z},{self.m})"


# ---- functional surface ---------------------------------------------------

def lex_compare(a, b) -> Ordering:
    if type(a) is not type(b):
        raise TypeError(f"cannot compare {type(a).__name__} with {type(b).__name__}")
    return Ordering.of(a, b)


def add(a, b):
    return a + b


def neg(a):
    if not isinstance(a, (GroupElem, DivElem)):
        raise TypeError(f"{type(a).__name__} has no additive inverse")
    return -a


def scalar_mul(n: int, a):
    if not isinstance(n, int) or n < 1:
        raise ValueError("scalar must be a positive integer")
    return n * a


def zero_like(x):
    if isinstance(x, (GroupElem, DivElem)):
        return type(x).zero(x.rank)
    if isinstance(x, MaxElem):
        return x.chain.zero()
    if isinstance(x, LexProductElem):
        return LexProductElem(0, x.m.chain.zero())
    if hasattr(x, "zero_like"):
        return x.zero_like()
    raise TypeError(f"no zero known for {type(x).__name__}")


def torsion_witness(m: DivElem) -> int:
    """Least n >= 1 with n*m in the integer lattice."""
    return reduce(math.lcm, (c.denominator for c in m.coords), 1)


class Verdict(NamedTuple):
    ok: bool
    counterexample: tuple | None = None


def is_weakly_cancellative(samples: Sequence) -> Verdict:
    """a + b == a forces b == 0, on every sampled pair."""
    samples = list(samples)
    if not samples:
        return Verdict(True)
    zero = zero_like(samples[0])
    for a in samples:
        for b in samples:
            if a + b == a and b != zero:
                return Verdict(False, (a, b))
    return Verdict(True)


def is_n_strictly_ordered(samples: Sequence, n_max: int) -> Verdict:
    samples = list(samples)
    for a in samples:
        for b in samples:
            if a < b:
                for n in range(1, n_max + 1):
                    if not n * a < n * b:
                        return Verdict(False, (a, b, n))
    return Verdict(True)


def lattice_box(k: int, bound: int) -> Iterable[GroupElem]:
    """All elements of [-bound, bound]^k."""
    import itertools

    for coords in itertools.product(range(-bound, bound + 1), repeat=k):
        yield GroupElem(coords)
