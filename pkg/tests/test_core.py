import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quasival.core import (check_axioms, check_exponential, check_finite, check_sign_symmetry,
                           check_strict_min, check_unit_value, constant_minus_one, coset_count,
                           coset_period, in_Iw, in_Ow, is_stable, kummer, lexmax_demo, min_family,
                           nadic, nadic_exponent, negated, quotient_qv, squared, truncated)
from quasival.fields import (QuadElem, RankTwoElem, T, composite_valuation, extend_valuation,
                             padic)
from quasival.ordered import INF, TWO_CHAIN, DivElem, LexProductElem, MaxElem
from quasival.sampling import (integers, ov_elements, quad_elements, rank_two_elements,
                               rationals)

I = QuadElem.sqrt(-1)


def D(*c):
    return DivElem(tuple(Fraction(x) for x in c))


def brute_nadic(n, x):
    """Every e in [-64, 64] whose quotient x / n^e meets the side conditions."""
    out = []
    for e in range(-64, 65):
        y = Fraction(x) / Fraction(n) ** e
        a, b = y.numerator, y.denominator
        if a % n != 0 and math.gcd(n, b) == 1:
            out.append(e)
    return out


nonzero = st.fractions(max_denominator=5000).filter(lambda q: q != 0 and abs(q) < 10 ** 5)


# ---- n-adic ---------------------------------------------------------------------

def test_nadic_examples():
    w12 = nadic(12)
    assert w12(12) == D(1)
    assert w12(Fraction(3, 2)) == D(-1)
    assert w12(0) is INF
    assert brute_nadic(12, Fraction(3, 2)) == [-1]


@given(nonzero, st.sampled_from([2, 6, 10, 12, 30, 4, 9]))
def test_nadic_matches_brute_force(x, n):
    found = brute_nadic(n, x)
    assert found == [nadic_exponent(n, x)]


@given(nonzero)
def test_squarefree_nadic_is_min_of_padics(x):
    for n, ps in ((6, (2, 3)), (10, (2, 5)), (30, (2, 3, 5))):
        assert nadic(n)(x) == min_family([padic(p) for p in ps])(x)


def test_non_squarefree_witness():
    assert nadic(12)(18) == D(0)
    assert min_family([padic(2), padic(3)])(18) == D(1)


def test_nadic_rejects_small_n():
    with pytest.raises(ValueError):
        nadic(1)


# ---- constructions ---------------------------------------------------------------

def test_min_family_examples():
    u1, u2 = extend_valuation(5, -1)
    m = min_family([u1, u2])
    assert m(QuadElem.of(5, 0, -1)) == D(1)
    assert m(2 + I) == D(0)
    assert min_family([u1]) is u1
    with pytest.raises(ValueError):
        min_family([])
    with pytest.raises(TypeError):
        min_family([padic(5), composite_valuation(5)])


def test_kummer_examples():
    w = kummer(padic(5), 1, -1)
    assert w(I) == D(-1)
    assert w(5 + 5 * I) == D(0)
    assert w(QuadElem.of(Fraction(3, 25), 0, -1)) == D(-2)
    with pytest.raises(ValueError):
        kummer(padic(5), -1, -1)
    with pytest.raises(ValueError):
        kummer(padic(5), 1, Fraction(1, 5))


def test_squared_examples():
    w = squared(padic(2))
    assert w(4) == D(4)
    assert w(4) >= w(2) + w(2)
    assert w(0) is INF


def test_truncated_examples():
    w = truncated(padic(5), 2)
    assert w(5) == D(1) and w(25) is INF and w(1) == D(0)
    with pytest.raises(ValueError):
        w(Fraction(1, 5))
    with pytest.raises(ValueError):
        truncated(padic(5), 0)


def test_lexmax_examples():
    w = lexmax_demo(5)
    a0, a1 = MaxElem(0, TWO_CHAIN), MaxElem(1, TWO_CHAIN)
    s = QuadElem.sqrt(5)
    assert w(s) == LexProductElem(0, a1)
    assert w(QuadElem.of(1, 0, 5)) == LexProductElem(0, a0)
    assert w(5 + s) == LexProductElem(0, a1)
    assert w(QuadElem.of(0, 0, 5)) is INF


def test_rings():
    w = kummer(padic(5), 1, -1)
    assert in_Ow(w, 5 * I) and not in_Ow(w, I)
    assert in_Iw(w, QuadElem.of(5, 0, -1)) and not in_Iw(w, 5 * I)


# ---- checkers --------------------------------------------------------------------

@pytest.mark.parametrize("w,sampler", [
    (kummer(padic(5), 1, -1), quad_elements(5, -1)),
    (kummer(padic(3), 2, -1), quad_elements(3, -1)),
    (squared(padic(2)), integers(2)),
    (truncated(padic(5), 2), ov_elements(5)),
    (lexmax_demo(5), quad_elements(5, 5)),
    (nadic(12), rationals(12)),
    (constant_minus_one(), integers(2)),
])
def test_constructions_pass_axioms(w, sampler):
    assert check_axioms(w, sampler, 300, seed=3).passed


def test_negated_valuation_is_caught():
    rep = check_axioms(negated(padic(5)), rationals(5), 300, seed=1)
    assert not rep.passed and rep.violations > 0
    assert rep.counterexample[0] == "B3"


def test_negated_counterexample_by_hand():
    w = negated(padic(5))
    # product rule holds with equality, the min rule fails at 1 + 4 = 5
    assert w(Fraction(5) * 5) == w(5) + w(5)
    assert not w(Fraction(1) + 4) >= min(w(1), w(4))


def test_exponential_examples():
    u1, u2 = extend_valuation(5, -1)
    s = quad_elements(5, -1)
    assert check_exponential(min_family([u1, u2]), s, 200, 6, seed=2).passed
    assert check_exponential(u1, s, 200, 6, seed=2).passed
    rep = check_exponential(kummer(padic(5), 1, -1), s, 50, 6, seed=2, extra=[I])
    assert not rep.passed
    x, n, lhs, rhs = rep.counterexample
    assert x == I and n == 2 and lhs == D(0) and rhs == D(-2)


def test_square_only_agrees_with_full_check():
    s = quad_elements(5, -1)
    for w in (min_family(extend_valuation(5, -1)), kummer(padic(5), 1, -1),
              nadic(6), squared(padic(2))):
        sampler = integers(2) if w.domain == "Z" else (rationals(6) if w.domain == "Q" else s)
        full = check_exponential(w, sampler, 200, 6, seed=5)
        sq = check_exponential(w, sampler, 200, 6, seed=5, square_only=True)
        assert full.passed == sq.passed, w.name


def test_stability_examples():
    w = kummer(padic(5), 1, -1)
    s = quad_elements(5, -1)
    for c in (QuadElem.of(Fraction(3, 5), 0, -1), QuadElem.of(0, 0, -1)):
        assert is_stable(w, c, s, 100, seed=4).ok
    v = is_stable(w, I, s, 10, seed=4, extra=[I])
    assert not v.ok and v.counterexample == (I,)


def test_sign_symmetry_and_strict_min():
    for w, s in ((kummer(padic(5), 1, -1), quad_elements(5, -1)),
                 (min_family(extend_valuation(5, -1)), quad_elements(5, -1)),
                 (nadic(6), rationals(6))):
        assert check_sign_symmetry(w, s, 200, seed=1).passed
        assert check_strict_min(w, s, 200, seed=1).passed


def test_finiteness_and_unit_value():
    for d, p in ((-1, 5), (-1, 3), (5, 5)):
        w = min_family(extend_valuation(p, d))
        assert check_finite(w, quad_elements(p, d), 200, seed=1).passed
        assert w(QuadElem.of(1, 0, d)) == D(0)
    assert check_unit_value(kummer(padic(5), 1, -1), QuadElem.of(1, 0, -1)).ok
    assert check_unit_value(squared(padic(2)), 1).ok
    assert check_unit_value(constant_minus_one(), 1).ok
    assert not check_finite(truncated(padic(5), 2), ov_elements(5), 300, seed=1).passed


# ---- cosets ------------------------------------------------------------------------

def test_coset_counts():
    (u,) = extend_valuation(5, 5)
    s5 = quad_elements(5, 5)
    assert coset_count(u, s5, 200, seed=1, extra=[QuadElem.sqrt(5)]) == 2
    assert coset_count(min_family(extend_valuation(5, -1)), quad_elements(5, -1), 200, 1) == 1
    for d, p in ((-1, 5), (-1, 3), (5, 5), (2, 7)):
        for w in extend_valuation(p, d) + [kummer(padic(p), 1, d)]:
            assert coset_count(w, quad_elements(p, d), 200, 1) <= 2


def test_coset_periods():
    (u,) = extend_valuation(5, 5)
    assert coset_period(u, QuadElem.sqrt(5)) == 2
    assert coset_period(u, QuadElem.of(Fraction(7, 5), 0, 5)) == 1
    assert coset_period(min_family(extend_valuation(5, -1)), 2 + I) == 1
    with pytest.raises(TypeError):
        coset_period(lexmax_demo(5), QuadElem.sqrt(5))


# ---- quotient -----------------------------------------------------------------------

def test_quotient_examples():
    v = composite_valuation(3)
    q = quotient_qv(v, 1)
    assert q(T ** 2 * 3) == D(2)
    assert quotient_qv(v, 0) is v
    with pytest.raises(ValueError):
        quotient_qv(v, 3)


def test_quotient_ring_contains_original():
    v = composite_valuation(3)
    q = quotient_qv(v, 1)
    rng = random.Random(9)
    s = rank_two_elements(3)
    zero = v.zero_value()
    for _ in range(300):
        x = s(rng)
        if v(x) >= zero:
            assert q(x) >= q.zero_value()


def test_quotient_ring_is_localization():
    # q(x) >= 0 iff x s in O_v for some s = 3^-h, i.e. some power of 3 in the denominator
    v = composite_valuation(3)
    q = quotient_qv(v, 1)
    rng = random.Random(11)
    s = rank_two_elements(3)
    for _ in range(300):
        x = s(rng)
        in_q = q(x) >= q.zero_value()
        in_local = any(v(x * RankTwoElem.const(Fraction(3) ** h)) >= v.zero_value()
                       for h in range(0, 40))
        assert in_q == in_local
