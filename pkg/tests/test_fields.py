from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quasival.fields import (NotPrime, QuadElem, RankTwoElem, Splitting, T, Unsupported,
                             classify_prime, composite_valuation, extend_valuation, hensel_sqrt,
                             in_Ov, padic, parse_field_record, split_value, squarefree, vp, vp_int)
from quasival.ordered import INF, DivElem

nonzero = st.fractions(max_denominator=10 ** 4).filter(lambda q: q != 0 and abs(q) < 10 ** 6)


def D(*c):
    return DivElem(tuple(Fraction(x) for x in c))


# ---- Q --------------------------------------------------------------------------

def test_vp_examples():
    assert vp(2, 12) == D(2)
    assert vp(3, Fraction(5, 18)) == D(-2)
    assert vp(5, 0) is INF
    assert vp_int(7, 1) == 0
    with pytest.raises(NotPrime):
        vp(6, 3)


def test_in_Ov_and_squarefree():
    assert in_Ov(3, Fraction(9, 2)) and not in_Ov(3, Fraction(1, 3))
    assert squarefree(-1) and squarefree(10) and not squarefree(12) and not squarefree(0)


@given(nonzero, nonzero)
def test_padic_is_a_valuation(x, y):
    v = padic(5)
    assert v(x * y) == v(x) + v(y)
    if x + y != 0:
        assert v(x + y) >= min(v(x), v(y))


def test_vp_brute_force():
    for e in range(-12, 13):
        for u in (1, 2, 3, 4, 6, 7, 11):
            assert vp_int(5, Fraction(5) ** e * u) == e


# ---- quadratic fields ----------------------------------------------------------

def test_classify_examples():
    assert classify_prime(5, -1) is Splitting.SPLIT
    assert classify_prime(3, -1) is Splitting.INERT
    assert classify_prime(5, 5) is Splitting.RAMIFIED
    assert classify_prime(2, 2) is Splitting.RAMIFIED
    with pytest.raises(Unsupported):
        classify_prime(2, -1)
    with pytest.raises(NotPrime):
        classify_prime(9, -1)


def test_hensel_examples():
    assert hensel_sqrt(-1, 5, 2) == 7
    assert hensel_sqrt(2, 7, 1) == 3
    for m in range(1, 8):
        r = hensel_sqrt(-1, 5, m)
        assert (r * r + 1) % 5 ** m == 0 and r % 5 == 2


def test_extension_examples():
    u1, u2 = extend_valuation(5, -1)
    i = QuadElem.sqrt(-1)
    assert u1(2 + i) == D(0) and u2(2 + i) == D(1)
    assert u1(2 - i) == D(1) and u2(2 - i) == D(0)
    (u,) = extend_valuation(3, -1)
    assert u(3 + 3 * i) == D(1)
    (r,) = extend_valuation(5, 5)
    assert r(QuadElem.sqrt(5)) == D(Fraction(1, 2))
    assert u1.params["root"] == 2


def test_parse_field_record():
    assert parse_field_record({"field": "Q", "p": 3})(9) == D(2)
    assert len(parse_field_record({"field": "Q_sqrt", "p": 5, "d": -1})) == 2
    assert parse_field_record({"field": "Q_t", "p": 3})(T) == D(1, 0)


quad = st.builds(lambda a, b: QuadElem.of(a, b, -1), nonzero, nonzero)


@settings(max_examples=60)
@given(quad)
def test_norm_identity_split(x):
    # u1 + u2 recovers v_p of the norm
    u1, u2 = extend_valuation(5, -1)
    assert u1(x) + u2(x) == vp(5, x.norm())


@settings(max_examples=60)
@given(quad)
def test_conjugation_swaps_extensions(x):
    u1, u2 = extend_valuation(5, -1)
    assert u1(x.conj()) == u2(x)


@settings(max_examples=60)
@given(quad, quad)
def test_split_extension_is_a_valuation(x, y):
    for u in extend_valuation(13, -1):
        assert u(x * y) == u(x) + u(y)
        if not (x + y).is_zero():
            assert u(x + y) >= min(u(x), u(y))


@settings(max_examples=60)
@given(quad)
def test_split_value_stable_under_more_precision(x):
    # recomputing the residue at twice the starting precision gives the same value
    from math import lcm
    A = int(x.a * lcm(x.a.denominator, x.b.denominator))
    B = int(x.b * lcm(x.a.denominator, x.b.denominator))
    Dn = lcm(x.a.denominator, x.b.denominator)
    N = A * A + B * B
    m = (vp_int(5, N) or 0) + 2
    for prec in (m, 2 * m, 4 * m):
        r = hensel_sqrt(-1, 5, prec)
        y = (A + B * r) % 5 ** prec
        if y:
            assert vp_int(5, y) - vp_int(5, Dn) == split_value(5, -1, x)


@settings(max_examples=60)
@given(nonzero)
def test_extensions_restrict_to_vp(q):
    for d, p in ((-1, 5), (-1, 3), (5, 5), (2, 7)):
        for u in extend_valuation(p, d):
            assert u(QuadElem.of(q, 0, d)) == vp(p, q)


# ---- Q(t) ------------------------------------------------------------------------

def test_composite_examples():
    v = composite_valuation(3)
    assert v(T ** 2 * 3) == D(2, 1)
    assert v(1 / T) == D(-1, 0)
    assert v(RankTwoElem.const(Fraction(1, 9)) + T) == D(0, -2)
    assert v(RankTwoElem.const(0)) is INF


polys = st.dictionaries(st.integers(-3, 3), nonzero, min_size=1, max_size=3)


@settings(max_examples=60)
@given(polys, polys)
def test_composite_is_a_valuation(f, g):
    v = composite_valuation(3)
    a, b = RankTwoElem.from_terms(f), RankTwoElem.from_terms(g)
    assert v(a * b) == v(a) + v(b)
    if not (a + b).is_zero():
        assert v(a + b) >= min(v(a), v(b))
