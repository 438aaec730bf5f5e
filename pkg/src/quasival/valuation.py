"""The evaluator type shared by valuations and quasi-valuations."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .ordered import INF


class DomainError(ValueError):
    """Raised when an element is outside a (quasi-)valuation's domain."""


@dataclass(frozen=True, eq=False)
class QuasiValuation:
    """x -> value in a totally ordered monoid, or INF.

    ``codomain`` is a short tag: ``"div"`` (rational lex vectors),
    ``"cut"`` (cut monoid), ``"lexmax"`` (Z x chain).  ``rank`` is the
    rank of the underlying group.  ``domain`` names the ring the
    evaluator accepts and ``contains`` optionally decides membership.
    The axioms are not enforced here; see ``quasival.core.check_axioms``.
    """

    name: str
    fn: Callable[[Any], Any]
    codomain: str = "div"
    rank: int = 1
    domain: str = "Q"
    contains: Callable[[Any], bool] | None = None
    params: dict = field(default_factory=dict)
    is_valuation: bool = False

    def __call__(self, x):
        if self.contains is not None and not self.contains(x):
            raise DomainError(f"{x} is outside the domain {self.domain} of {self.name}")
        return self.fn(x)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"

    def zero_value(self):
        from .cuts import principal
        from .ordered import DivElem, GroupElem, LexProductElem

        if self.codomain == "div":
            return DivElem.zero(self.rank)
        if self.codomain == "cut":
            return principal(GroupElem.zero(self.rank))
        if self.codomain == "lexmax":
            return LexProductElem.from_int(0, self.params["chain"])
        raise ValueError(f"unknown codomain {self.codomain!r}")

    def finite_values(self, xs):
        return [v for v in map(self, xs) if v is not INF]


class Valuation(QuasiValuation):
    """A quasi-valuation that is claimed to satisfy the valuation axioms."""

    def __init__(self, name, fn, codomain="div", rank=1, domain="Q", contains=None,
                 params=None, is_valuation=True):
        super().__init__(name, fn, codomain, rank, domain, contains, params or {}, True)
