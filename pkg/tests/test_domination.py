import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quasival.core import kummer, lexmax_demo, min_family
from quasival.cuts import Cut, principal
from quasival.domination import (Amalgam, amalgam_cmp, amalgam_for, check_total_order,
                                 check_well_defined, count_exponentials, decompose_exponential,
                                 dominates, equivalent_partner, integrality_probe, is_singular,
                                 max_ideal_census, random_amalgam_elem)
from quasival.fields import QuadElem, extend_valuation, padic
from quasival.filters import QuadOrder, elements, filter_qv_extend
from quasival.ordered import TWO_CHAIN, DivElem, GroupElem, LexProductElem, MaxElem, Ordering
from quasival.sampling import quad_elements, quad_integral

I = QuadElem.sqrt(-1)
CUT1 = Amalgam("cut", 1)
CUT2 = Amalgam("cut", 2)
LEX = Amalgam("lexmax", 1, TWO_CHAIN)


def pc(*c):
    return principal(GroupElem(tuple(c)))


# ---- singularity --------------------------------------------------------------------

def test_singular_examples():
    assert not is_singular(CUT1.from_m(pc(2)))
    assert is_singular(CUT1.from_div(Fraction(1, 2)))
    assert not is_singular(CUT1.from_div(3))
    assert is_singular(LEX.from_m(LexProductElem(0, MaxElem(1, TWO_CHAIN))))
    assert not is_singular(LEX.from_m(LexProductElem(4, MaxElem(0, TWO_CHAIN))))
    assert is_singular(CUT2.from_m(Cut.of(GroupElem((1, 0)), 1)))
    assert is_singular(CUT1.from_m(Cut.minus_inf(1)))
    assert is_singular(CUT1.from_m(Cut.plus_inf(1)))


def test_unsupported_kind():
    with pytest.raises(ValueError):
        Amalgam("semiring")
    with pytest.raises(ValueError):
        amalgam_cmp(CUT1.from_div(1), CUT2.from_div(DivElem.of(1, 0)))


@pytest.mark.parametrize("am", [CUT1, CUT2, LEX])
def test_singularity_matches_bounded_oracle(am):
    rng = random.Random(5)
    for _ in range(120):
        x = random_amalgam_elem(am, rng, box=3, n_max=4)
        assert am.is_singular(x) == am.oracle_singular(x, N=4, box=4), str(x)


# ---- comparison ----------------------------------------------------------------------

def test_compare_examples():
    assert amalgam_cmp(CUT1.from_div(Fraction(1, 2)), CUT1.from_m(pc(1))) == Ordering.LT
    assert amalgam_cmp(CUT1.from_m(pc(2)), CUT1.from_div(2)) == Ordering.EQ
    h = CUT2.from_m(Cut.of(GroupElem((0, 0)), 1))
    assert amalgam_cmp(h, CUT2.from_div(DivElem.of(0, 7))) == Ordering.GT
    assert amalgam_cmp(h, CUT2.from_div(DivElem.of(Fraction(1, 3), 0))) == Ordering.LT
    top = LEX.from_m(LexProductElem(0, MaxElem(1, TWO_CHAIN)))
    assert amalgam_cmp(top, LEX.from_div(0)) == Ordering.GT
    assert amalgam_cmp(top, LEX.from_div(Fraction(1, 5))) == Ordering.LT


@pytest.mark.parametrize("am", [CUT1, CUT2, LEX, Amalgam("div", 2)])
def test_total_order_on_samples(am):
    assert check_total_order(am, 1500, seed=2).passed


@pytest.mark.parametrize("am", [CUT1, CUT2, LEX])
def test_comparison_well_defined(am):
    assert check_well_defined(am, 500, seed=2).passed


def test_equivalent_partner():
    x = CUT1.from_m(pc(4))
    y = equivalent_partner(CUT1, x)
    assert y.side == "div" and CUT1.equivalent(x, y)
    s = CUT1.from_div(Fraction(1, 3))
    assert equivalent_partner(CUT1, s) is s


@settings(max_examples=200)
@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(0, 1), st.integers(0, 1),
       st.integers(-20, 20), st.integers(1, 6))
def test_sandwich_forces_order(a, b, la, lb, g, n):
    # n m <= gamma <= n m' for an invertible gamma gives m <= m'
    m, m2 = Cut.of(GroupElem((a,)), la), Cut.of(GroupElem((b,)), lb)
    gamma = pc(g)
    if n * m <= gamma <= n * m2:
        assert m <= m2


# ---- domination --------------------------------------------------------------------

def test_domination_examples():
    u1, u2 = extend_valuation(5, -1)
    s = quad_elements(5, -1)
    w = kummer(padic(5), 1, -1)
    for u in (u1, u2):
        rep = dominates(u, w, s, 400, seed=1)
        assert rep.passed and rep.check == "domination"
    W = filter_qv_extend(QuadOrder(5, -1, 5))
    assert dominates(u2, W, s, 400, seed=1).passed
    assert dominates(u1, u1, s, 200, seed=1).passed


def test_domination_precondition_reported():
    u1, _ = extend_valuation(5, -1)
    w = kummer(padic(5), 0, -1)
    # O_w = Z_(5)[i] is inside O_u1, so use a map with a larger ring: v-kummer on 1/5-scaled
    rep = dominates(kummer(padic(5), 1, -1), u1, quad_elements(5, -1), 300, seed=1)
    assert not rep.passed and "precondition" in rep.details
    assert dominates(u1, w, quad_elements(5, -1), 300, seed=1).passed


def test_lexmax_domination():
    (u,) = extend_valuation(5, 5)
    assert dominates(u, lexmax_demo(5), quad_elements(5, 5), 400, seed=3).passed
    assert amalgam_for(lexmax_demo(5)).kind == "lexmax"


def test_filter_rings_force_ideals():
    # O_u containing O_w gives I_u containing I_w, for filter quasi-valuations
    rng = random.Random(8)
    s = quad_elements(5, -1)
    for c in (1, 5, 25):
        W = filter_qv_extend(QuadOrder(5, -1, c))
        zero = pc(0)
        for u in extend_valuation(5, -1):
            uz = u.zero_value()
            xs = [s(rng) for _ in range(300)]
            if all(u(x) >= uz for x in xs if W(x) >= zero):
                assert all(u(x) > uz for x in xs if W(x) > zero)


# ---- exponential decomposition ------------------------------------------------------------

def test_decompose_examples():
    u1, u2 = extend_valuation(5, -1)
    s = quad_elements(5, -1)
    dec = decompose_exponential(min_family([u1, u2]), [u1, u2], s, 300, seed=1)
    assert dec.report.passed and dec.names == ["u1_5", "u2_5"]
    assert decompose_exponential(u1, [u1, u2], s, 300, seed=1).names == ["u1_5"]
    bad = decompose_exponential(kummer(padic(5), 1, -1), [u1, u2], s, 300, seed=1, extra=[I])
    assert not bad.report.passed and bad.members == []
    with pytest.raises(ValueError):
        decompose_exponential(u1, [], s)


def test_count_exponentials():
    assert count_exponentials(extend_valuation(5, -1), quad_elements(5, -1), 200, 1) == 3
    assert count_exponentials(extend_valuation(3, -1), quad_elements(3, -1), 200, 1) == 1
    assert count_exponentials(extend_valuation(5, 5), quad_elements(5, 5), 200, 1) == 1


def test_distinct_exponentials_are_separated():
    us = extend_valuation(5, -1)
    s = quad_elements(5, -1)
    rng = random.Random(3)
    xs = [s(rng) for _ in range(300)]
    subsets = [min_family(list(sub)) for r in (1, 2) for sub in itertools.combinations(us, r)]
    for f, g in itertools.combinations(subsets, 2):
        ring_witness = any((f(x) >= f.zero_value()) != (g(x) >= g.zero_value()) for x in xs)
        value_witness = any(f(x) != g(x) for x in xs)
        assert ring_witness or value_witness


def test_max_ideal_census():
    us = extend_valuation(5, -1)
    rep = max_ideal_census(min_family(us), us, quad_elements(5, -1), 300, seed=1,
                           extra=[2 + I, 2 - I])
    assert rep.passed and rep.details["maximal_ideals"] == 2
    (u,) = extend_valuation(3, -1)
    rep = max_ideal_census(u, [u], quad_elements(3, -1), 300, seed=1)
    assert rep.passed and rep.details["maximal_ideals"] == 1
    with pytest.raises(ValueError):
        max_ideal_census(kummer(padic(5), 1, -1), us, quad_elements(5, -1), 50, 1, extra=[I])


def test_integrality_probe():
    us = extend_valuation(5, -1)
    rep = integrality_probe(min_family(us), quad_integral(5, -1), 200, seed=1, extra=[I])
    assert rep.passed and rep.details["outside"] is None
    k = integrality_probe(kummer(padic(5), 1, -1), quad_integral(5, -1), 50, seed=1, extra=[I])
    assert not k.details["exponential"] and k.details["outside"] == str(I)
