import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quasival.core import check_axioms, kummer, lexmax_demo
from quasival.cuts import Cut, principal
from quasival.fields import QuadElem, RankTwoElem, T, padic
from quasival.filters import (LocalizationAlg, QuadOrder, QuotientAlg, check_support_oracle,
                              check_well_defined, clearing_exponent, coarsest_check, elements,
                              extends_base, filter_qv, filter_qv_extend, iw_equals_IvR,
                              kummer_equivalence, localization_compat, oracle_support,
                              parse_algebra, ring_identity, scalar_linearity, support_cut,
                              torsion_witness_pair, unit_bound)
from quasival.ordered import INF, GroupElem
from quasival.sampling import ov_elements, quad_elements
from quasival.valuation import DomainError

I = QuadElem.sqrt(-1)
R5 = QuadOrder(5, -1, 5)


def cut(*c, level=0):
    return Cut.of(GroupElem(tuple(c)), level)


# ---- shapes and parsing ---------------------------------------------------------

def test_parse_algebra_records():
    assert parse_algebra({"kind": "quad_order", "p": 5, "d": -1, "c": "5"}) == R5
    assert parse_algebra({"kind": "quotient", "p": 5, "ideal_min_value": "4"}) == QuotientAlg(5, 4)
    assert parse_algebra({"kind": "localization", "p": 5, "h_level": 1}) == LocalizationAlg(5, 1)
    with pytest.raises(DomainError):
        parse_algebra({"kind": "polynomial", "p": 5})


def test_invalid_shapes_rejected():
    with pytest.raises(ValueError):
        QuadOrder(5, -1, Fraction(1, 5))
    with pytest.raises(ValueError):
        QuotientAlg(5, 0)
    with pytest.raises(ValueError):
        LocalizationAlg(5, 2)


def test_quotient_from_cut():
    assert QuotientAlg.from_cut(5, cut(3)) == QuotientAlg(5, 4)


# ---- support examples -------------------------------------------------------------

def test_quad_order_support_examples():
    assert support_cut(R5, 5 * I) == cut(0)
    assert oracle_support(R5, 5 * I) == (cut(0), True)
    assert filter_qv(R5)(QuadElem.of(5, 0, -1)) == cut(1)
    assert support_cut(R5, QuadElem.of(0, 0, -1)) is INF
    with pytest.raises(DomainError):
        support_cut(R5, I)


def test_quotient_support_examples():
    R = QuotientAlg(5, 4)
    assert support_cut(R, Fraction(125, 3)) == cut(3)
    assert support_cut(R, 5 ** 5) is INF
    assert support_cut(R, 0) is INF
    assert oracle_support(R, Fraction(125, 3))[0] == cut(3)


def test_localization_support_example():
    R = LocalizationAlg(5, 1)
    x = T * 7
    assert support_cut(R, x) == cut(1, 0, level=1)
    assert oracle_support(R, x)[0] == cut(1, 0, level=1)
    R0 = LocalizationAlg(5, 0)
    assert support_cut(R0, x) == cut(1, 0)


@pytest.mark.parametrize("R", [R5, QuadOrder(3, -1, 9), QuadOrder(5, 5, 1), QuotientAlg(5, 4),
                               QuotientAlg(3, 2), LocalizationAlg(5, 1), LocalizationAlg(5, 0)])
def test_oracle_agreement(R):
    rep = check_support_oracle(R, elements(R), 200, seed=7)
    assert rep.passed and rep.pairs >= 100, rep.line()


@pytest.mark.parametrize("R", [R5, QuotientAlg(5, 4), LocalizationAlg(5, 1)])
def test_filter_axioms_and_unit_bound(R):
    assert check_axioms(filter_qv(R), elements(R), 300, seed=2).passed
    assert unit_bound(R, elements(R), 200, seed=2).passed


# ---- torsion ----------------------------------------------------------------------

def test_scalar_linearity_torsion_free():
    for R in (R5, LocalizationAlg(5, 1)):
        assert scalar_linearity(R, elements(R), 300, seed=1).passed


def test_quotient_torsion_witness():
    R = QuotientAlg(5, 4)
    c, x = torsion_witness_pair(R)
    assert not R.in_ideal(x) and R.in_ideal(c * x)
    rep = scalar_linearity(R, elements(R), 0, seed=1, extra=[(c, x)])
    assert not rep.passed


# ---- extension W --------------------------------------------------------------------

def test_W_examples():
    W = filter_qv_extend(R5)
    assert W(I) == cut(-1)
    assert clearing_exponent(R5, I) == 1
    assert W(QuadElem.of(Fraction(7, 25), 0, -1)) == cut(-2)
    assert W(QuadElem.of(0, 0, -1)) is INF


def test_W_rejects_non_domains():
    with pytest.raises(TypeError):
        filter_qv_extend(QuotientAlg(5, 2))


@pytest.mark.parametrize("p,d,c", [(5, -1, 5), (5, -1, 1), (3, -1, 9), (5, 5, 25)])
def test_kummer_equivalence(p, d, c):
    assert kummer_equivalence(p, d, c, quad_elements(p, d), 400, seed=3).passed


def test_W_properties():
    s = quad_elements(5, -1)
    assert check_well_defined(R5, s, 300, seed=1).passed
    assert ring_identity(R5, s, 500, seed=1).passed
    assert extends_base(R5, ov_elements(5), 300, seed=1).passed
    assert check_axioms(filter_qv_extend(R5), s, 300, seed=1).passed


def test_Iw_examples():
    W = filter_qv_extend(R5)
    zero = cut(0)
    assert W(QuadElem.of(5, 0, -1)) > zero
    assert not W(5 * I) > zero
    assert W(25 * I) == cut(1)
    assert iw_equals_IvR(R5, count=400, seed=2).passed


# ---- coarsest --------------------------------------------------------------------------

def test_coarsest_examples():
    R = QuadOrder(5, 5, 1)
    s = elements(R)
    amb = quad_elements(5, 5)
    assert coarsest_check(R, lexmax_demo(5), s, 400, seed=1, ambient=amb).passed
    assert coarsest_check(R, filter_qv(R), s, 400, seed=1).passed
    assert coarsest_check(R5, kummer(padic(5), 1, -1), elements(R5), 400, seed=1,
                          ambient=quad_elements(5, -1)).passed


def test_coarsest_rejects_ring_mismatch():
    rep = coarsest_check(R5, kummer(padic(5), 0, -1), elements(R5), 200, seed=1,
                         ambient=quad_elements(5, -1))
    assert not rep.passed and rep.details.get("precondition")


# ---- localization ------------------------------------------------------------------------

@pytest.mark.parametrize("instance", ["rank1-max", "rank1-zero", "rank2"])
def test_localization_compat(instance):
    rep = localization_compat(instance, count=200, seed=4)
    assert rep.passed and rep.pairs > 0


def test_localization_unknown_instance():
    with pytest.raises(ValueError):
        localization_compat("rank3")


# ---- properties ----------------------------------------------------------------------------

alphas = st.builds(lambda k, u: Fraction(5) ** k * u, st.integers(0, 4),
                   st.sampled_from([1, 2, 3, 4, 6, 7, Fraction(1, 2), Fraction(3, 7)]))


@settings(max_examples=80)
@given(alphas, alphas)
def test_support_is_an_initial_subset(a, b):
    x = R5.element(a, b)
    closed = support_cut(R5, x)
    brute, initial = oracle_support(R5, x, window=10)
    assert initial and brute == closed


@settings(max_examples=80)
@given(st.integers(-3, 3), st.integers(-3, 3), st.sampled_from([1, 2, 3, 7]),
       st.sampled_from([1, 2, 3, 7]))
def test_W_shifts_by_base_values(i, j, u1, u2):
    W = filter_qv_extend(R5)
    x = QuadElem.of(Fraction(5) ** i * u1, Fraction(5) ** j * u2, -1)
    c = Fraction(5) ** (i + j) * u2
    assert W(x * c) == W(x).shift(GroupElem((i + j,)))
