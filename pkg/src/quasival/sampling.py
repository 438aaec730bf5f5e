"""Seeded samplers over bounded-height elements.

A sampler is a callable taking a ``random.Random`` and returning one
element.  Rationals have numerator and denominator at most 10^4 and are
biased towards powers of the prime in play so that valuations vary.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .fields import QuadElem, RankTwoElem

HEIGHT = 10 ** 4

Sampler = Callable[[random.Random], object]


def _unit(rng: random.Random, p: int, bound: int) -> int:
    """Random integer in [1, bound] prime to p (1 if bound < 1)."""
    if bound < 2:
        return 1
    while True:
        u = rng.randint(1, bound)
        if u % p:
            return u


def rational(rng: random.Random, p: int, max_exp: int = 4, height: int = HEIGHT) -> Fraction:
    while True:
        e = rng.randint(-max_exp, max_exp)
        pe = p ** abs(e)
        if pe <= height:
            break
    small = rng.random() < 0.5
    cap = 30 if small else height
    num = _unit(rng, p, min(cap, height // pe if e > 0 else height))
    den = _unit(rng, p, min(cap, height // pe if e < 0 else height))
    if e > 0:
        num *= pe
    elif e < 0:
        den *= pe
    sign = -1 if rng.random() < 0.5 else 1
    return Fraction(sign * num, den)


def rationals(p: int, zero_rate: float = 0.05) -> Sampler:
    def draw(rng):
        if rng.random() < zero_rate:
            return Fraction(0)
        return rational(rng, p)
    return draw


def ov_elements(p: int, zero_rate: float = 0.05) -> Sampler:
    """Rationals with non-negative p-adic valuation."""
    def draw(rng):
        if rng.random() < zero_rate:
            return Fraction(0)
        x = rational(rng, p)
        while x.denominator % p == 0:
            x *= p
        return x
    return draw


def integers(p: int, zero_rate: float = 0.05) -> Sampler:
    def draw(rng):
        if rng.random() < zero_rate:
            return 0
        e = rng.randint(0, 6)
        while p ** e > HEIGHT:
            e -= 1
        u = _unit(rng, p, HEIGHT // p ** e)
        return (-1 if rng.random() < 0.5 else 1) * u * p ** e
    return draw


def quad_elements(p: int, d: int, zero_rate: float = 0.15, coeff: Sampler | None = None) -> Sampler:
    coeff = coeff or (lambda rng: rational(rng, p))

    def draw(rng):
        a = Fraction(0) if rng.random() < zero_rate else coeff(rng)
        b = Fraction(0) if rng.random() < zero_rate else coeff(rng)
        return QuadElem(a, b, d)
    return draw


def quad_integral(p: int, d: int, zero_rate: float = 0.15) -> Sampler:
    """a + b sqrt(d) with a, b in O_v."""
    return quad_elements(p, d, zero_rate, coeff=ov_elements(p, 0.0))


def rank_two_elements(p: int, zero_rate: float = 0.05, max_terms: int = 3) -> Sampler:
    def poly(rng):
        n = rng.randint(1, max_terms)
        exps = rng.sample(range(-2, 4), n)
        return RankTwoElem.from_terms({e: rational(rng, p, max_exp=3, height=500) for e in exps})

    def draw(rng):
        if rng.random() < zero_rate:
            return RankTwoElem.const(0)
        f = poly(rng)
        if rng.random() < 0.4:
            g = poly(rng)
            if not g.is_zero():
                f = f / g
        return f
    return draw


def pairs(sampler: Sampler, count: int, seed: int):
    rng = random.Random(seed)
    for _ in range(count):
        yield sampler(rng), sampler(rng)


def draw(sampler: Sampler, count: int, seed: int) -> list:
    rng = random.Random(seed)
    return [sampler(rng) for _ in range(count)]
