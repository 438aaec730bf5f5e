"""Named verification suites.

Each suite is a function ``(seed, samples) -> list[Report]``.  Every check
inside a suite draws from its own sub-seed, ``sub_seed(seed, suite, label)``,
so adding a check never perturbs the samples of another.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from . import core, domination as dom, filters as flt
from .cuts import IsolatedSubgroup, pims_over
from .fields import QuadElem, RankTwoElem, composite_valuation, extend_valuation, padic
from .ordered import NATURALS, DivElem
from .reports import Report, sub_seed
from .sampling import (integers, ov_elements, quad_elements, quad_integral, rank_two_elements,
                       rationals)
from .window import check_cut_oracle

I = QuadElem.sqrt(-1)


def _flag(check: str, flagged: bool, seed, witness=None, **details) -> Report:
    """A check whose expected outcome is that something is detected."""
    return Report(check, flagged, 1, 0 if flagged else 1, seed,
                  None if flagged else witness, {"witness": str(witness), **details})


# ---- instance catalogue ---------------------------------------------------------

def axiom_instances():
    """(quasi-valuation, sampler) pairs covered by the axiom suite."""
    out = []
    for n in (6, 10, 12, 30):
        out.append((core.nadic(n), rationals(n)))
    for p, d, g in ((5, -1, 1), (3, -1, 2)):
        out.append((core.kummer(padic(p), g, d), quad_elements(p, d)))
    out.append((core.squared(padic(2)), integers(2)))
    out.append((core.truncated(padic(5), 2), ov_elements(5)))
    out.append((core.lexmax_demo(5), quad_elements(5, 5)))
    for p in (3, 5):
        for d in (-1, 5):
            out.append((core.min_family(extend_valuation(p, d)), quad_elements(p, d)))
    for R in (flt.QuadOrder(5, -1, 5), flt.QuotientAlg(5, 4), flt.LocalizationAlg(5, 1),
              flt.LocalizationAlg(5, 0)):
        out.append((flt.filter_qv(R), flt.elements(R)))
    R = flt.QuadOrder(5, -1, 5)
    out.append((flt.filter_qv_extend(R), quad_elements(5, -1)))
    return out


def suite_axioms(seed: int, samples: int) -> list[Report]:
    return [core.check_axioms(w, s, samples, sub_seed(seed, "axioms", w.name))
            for w, s in axiom_instances()]


def suite_exponential(seed: int, samples: int) -> list[Report]:
    us = extend_valuation(5, -1)
    m = core.min_family(us)
    s = quad_elements(5, -1)
    n = min(samples, 500)
    full = core.check_exponential(m, s, n, 6, sub_seed(seed, "exp", "full"))
    sq = core.check_exponential(m, s, n, seed=sub_seed(seed, "exp", "full"), square_only=True)
    agree = Report("square-only agrees with full", full.passed == sq.passed, n, 0, full.seed)
    k = core.kummer(padic(5), 1, -1)
    kr = core.check_exponential(k, s, n, 6, sub_seed(seed, "exp", "kummer"), extra=[I])
    flag = _flag("kummer(gamma=1) flagged non-exponential", not kr.passed, kr.seed,
                 kr.counterexample[0] if kr.counterexample else None)
    dec = dom.decompose_exponential(m, us, s, n, sub_seed(seed, "exp", "decompose"),
                                    extra=[2 + I])
    rec = Report("decompose min{u1,u2}", dec.report.passed and dec.names == ["u1_5", "u2_5"],
                 dec.report.pairs, 0, dec.report.seed, details={"members": dec.names})
    counts = {}
    for p, d in ((5, -1), (3, -1), (5, 5)):
        counts[f"{p},{d}"] = dom.count_exponentials(extend_valuation(p, d), quad_elements(p, d),
                                                    200, sub_seed(seed, "exp", "count", p, d),
                                                    extra=[2 + I] if d == -1 else ())
    cnt = Report("count_exponentials", counts == {"5,-1": 3, "3,-1": 1, "5,5": 1}, 3, 0, seed,
                 details=counts)
    return [full, sq, agree, flag, rec, cnt]


def domination_pairs():
    us = extend_valuation(5, -1)
    k = core.kummer(padic(5), 1, -1)
    W = flt.filter_qv_extend(flt.QuadOrder(5, -1, 5))
    return [(us[0], k), (us[1], k), (us[0], W), (us[0], core.min_family(us))]


def suite_domination(seed: int, samples: int) -> list[Report]:
    s = quad_elements(5, -1)
    return [dom.dominates(u, w, s, samples, sub_seed(seed, "domination", w.name, u.name))
            for u, w in domination_pairs()]


def suite_filter_oracle(seed: int, samples: int) -> list[Report]:
    out = []
    for R in (flt.QuadOrder(5, -1, 5), flt.QuotientAlg(5, 4), flt.LocalizationAlg(5, 1),
              flt.LocalizationAlg(5, 0)):
        out.append(flt.check_support_oracle(R, flt.elements(R), max(200, samples // 5),
                                            sub_seed(seed, "filter", "support", str(R))))
    for p, d, c in ((5, -1, 5), (5, -1, 1), (3, -1, 9)):
        R = flt.QuadOrder(p, d, c)
        e = quad_elements(p, d)
        out.append(flt.kummer_equivalence(p, d, c, e, samples, sub_seed(seed, "filter", "kummer", c)))
        out.append(flt.ring_identity(R, e, samples, sub_seed(seed, "filter", "ring", c)))
        out.append(flt.extends_base(R, rationals(p), samples, sub_seed(seed, "filter", "extends", c)))
        out.append(flt.check_well_defined(R, e, min(samples, 300),
                                          sub_seed(seed, "filter", "well-defined", c)))
        out.append(flt.iw_equals_IvR(R, None, samples, sub_seed(seed, "filter", "IvR", c)))
    return out


def suite_cut_oracle(seed: int, samples: int) -> list[Report]:
    return [check_cut_oracle(1), check_cut_oracle(2)]


def suite_pims(seed: int, samples: int) -> list[Report]:
    out = []
    r1 = pims_over(IsolatedSubgroup(1, 0))
    out.append(Report("cut monoid Z, H={0}: one PIM", len(r1) == 1, 1, 0, seed,
                      details={"pims": [str(x) for x in r1.pims]}))
    r2 = pims_over(IsolatedSubgroup(2, 1))
    out.append(Report("cut monoid Z^2, H=0xZ: two PIMs", len(r2) == 2, 1, 0, seed,
                      details={"pims": [str(x) for x in r2.pims]}))
    r3 = pims_over(None, "lexmax", bound=5, chain=NATURALS)
    out.append(Report("Z x (N,max), J=5: six PIMs, truncated", len(r3) == 6 and r3.truncated,
                      1, 0, seed, details={"count": len(r3), "truncated": r3.truncated}))
    # lexmax demo: w(sqrt p) = (0, a1) is in the closure of hull({0}) but above H = {0}
    w = core.lexmax_demo(5)
    val = w(QuadElem.sqrt(5))
    zero = w.zero_value()
    listing = pims_over(None, "lexmax", chain=w.params["chain"])
    closure = listing.pims[-1]  # largest PIM over {0}
    ok = str(val) == "(0,a1)" and val in closure and val > zero
    out.append(Report("lexmax w(sqrt p) in closure, above {0}", ok, 1, 0, seed,
                      details={"value": str(val)}))
    return out


def suite_amalgam(seed: int, samples: int) -> list[Report]:
    out = []
    for am in (dom.Amalgam("cut", 1), dom.Amalgam("cut", 2), dom.Amalgam("lexmax", 1)):
        out.append(dom.check_total_order(am, 10 * samples,
                                         sub_seed(seed, "amalgam", am.kind, am.rank)))
        out.append(dom.check_well_defined(am, samples,
                                          sub_seed(seed, "amalgam-wd", am.kind, am.rank)))
    return out


def suite_coarsest(seed: int, samples: int) -> list[Report]:
    out = []
    for p in (5, 3):
        R = flt.QuadOrder(p, p, 1)
        out.append(flt.coarsest_check(R, core.lexmax_demo(p), flt.elements(R), samples,
                                      sub_seed(seed, "coarsest", p), ambient=quad_elements(p, p)))
    R = flt.QuadOrder(5, -1, 5)
    out.append(flt.coarsest_check(R, flt.filter_qv(R), flt.elements(R), samples,
                                  sub_seed(seed, "coarsest", "self")))
    return out


def quotient_reports(seed: int, samples: int) -> list[Report]:
    v = composite_valuation(5)
    wt = core.quotient_qv(v, 1)
    s = rank_two_elements(5)
    import random

    rng = random.Random(sub_seed(seed, "quotient"))
    zero2, zero1 = DivElem.zero(2), DivElem.zero(1)
    viol_sup = viol_eq = 0
    first = None
    n = min(samples, 500)
    for _ in range(n):
        x = s(rng)
        in_w, in_wt = v(x) >= zero2, wt(x) >= zero1
        if in_w and not in_wt:
            viol_sup += 1
            first = first or ("superset", x)
        # x in O_w S^-1 iff x * p^h in O_w for some h (S = O_v \ P, values (0, h))
        in_loc = any(v(x * RankTwoElem.const(Fraction(5) ** h)) >= zero2 for h in range(0, 40))
        if in_loc != in_wt:
            viol_eq += 1
            first = first or ("localization", x)
    rep = Report("quotient O_w~ = O_w S^-1", viol_sup + viol_eq == 0, n, viol_sup + viol_eq,
                 sub_seed(seed, "quotient"), first)
    axioms = core.check_axioms(wt, s, samples, sub_seed(seed, "quotient", "axioms"))
    return [rep, axioms]


def suite_localization(seed: int, samples: int) -> list[Report]:
    out = [flt.localization_compat(inst, None, min(samples, 300), sub_seed(seed, "loc", inst))
           for inst in ("rank1-max", "rank1-zero", "rank2")]
    return out + quotient_reports(seed, samples)


def suite_census(seed: int, samples: int) -> list[Report]:
    us5 = extend_valuation(5, -1)
    us3 = extend_valuation(3, -1)
    n = min(samples, 500)
    r5 = dom.max_ideal_census(core.min_family(us5), us5, quad_integral(5, -1), n,
                              sub_seed(seed, "census", 5), extra=[2 + I, 2 - I])
    r3 = dom.max_ideal_census(core.min_family(us3), us3, quad_integral(3, -1), n,
                              sub_seed(seed, "census", 3))
    c5 = Report("split p=5: two maximal ideals", r5.passed and r5.details["maximal_ideals"] == 2,
                r5.pairs, r5.violations, r5.seed, r5.counterexample, r5.details)
    c3 = Report("inert p=3: one maximal ideal", r3.passed and r3.details["maximal_ideals"] == 1,
                r3.pairs, r3.violations, r3.seed, r3.counterexample, r3.details)
    integ = dom.integrality_probe(core.min_family(us5), quad_integral(5, -1), n,
                                  sub_seed(seed, "census", "int"), extra=[I])
    k = dom.integrality_probe(core.kummer(padic(5), 1, -1), quad_integral(5, -1), n,
                              sub_seed(seed, "census", "int-k"), extra=[I])
    kflag = _flag("kummer(gamma=1): i outside O_w", k.details["outside"] == "i", k.seed, "i")
    return [c5, c3, integ, kflag]


def quadratic_instances():
    """Quasi-valuations on quadratic fields extending v, with samplers."""
    out = []
    for p, d in ((5, -1), (3, -1), (5, 5), (3, 5)):
        s = quad_elements(p, d)
        for u in extend_valuation(p, d):
            out.append((u, s))
        out.append((core.min_family(extend_valuation(p, d)), s))
    out.append((core.kummer(padic(5), 1, -1), quad_elements(5, -1)))
    out.append((core.kummer(padic(3), 2, -1), quad_elements(3, -1)))
    out.append((flt.filter_qv_extend(flt.QuadOrder(5, -1, 5)), quad_elements(5, -1)))
    return out


def suite_cosets(seed: int, samples: int) -> list[Report]:
    out = []
    n = min(samples, 500)
    for w, s in quadratic_instances():
        sd = sub_seed(seed, "cosets", w.name)
        if w.codomain == "div":
            c = core.coset_count(w, s, n, sd)
            out.append(Report(f"coset-count<=2[{w.name}]", c <= 2, n, 0 if c <= 2 else 1, sd,
                              details={"cosets": c}))
        out.append(core.check_finite(w, s, n, sd))
        out.append(core.check_sign_symmetry(w, s, n, sd))
        out.append(core.check_strict_min(w, s, n, sd))
    u = extend_valuation(5, 5)[0]
    out.append(Report("ramified coset period of sqrt 5 is 2",
                      core.coset_period(u, QuadElem.sqrt(5)) == 2, 1, 0, seed))
    R = flt.QuadOrder(5, -1, 5)
    out.append(flt.scalar_linearity(R, flt.elements(R), n, sub_seed(seed, "cosets", "lin")))
    Q = flt.QuotientAlg(5, 4)
    lin = flt.scalar_linearity(Q, flt.elements(Q), n, sub_seed(seed, "cosets", "tors"),
                               extra=[flt.torsion_witness_pair(Q)])
    out.append(_flag("quotient (torsion) breaks scalar linearity", not lin.passed, lin.seed,
                     lin.counterexample))
    return out


SUITES: dict[str, tuple[str, Callable[[int, int], list[Report]]]] = {
    "axioms": ("quasi-valuation axioms B1-B3", suite_axioms),
    "exponential": ("exponential quasi-valuations are minima of extensions", suite_exponential),
    "domination": ("valuations dominate quasi-valuations with smaller rings", suite_domination),
    "filter-oracle": ("filter quasi-valuation supports and extension", suite_filter_oracle),
    "cut-oracle": ("cut monoid operations against explicit left sets", suite_cut_oracle),
    "pims": ("positive isolated monoids over isolated subgroups", suite_pims),
    "amalgam-order": ("total order on the amalgam with the divisible hull", suite_amalgam),
    "coarsest": ("filter quasi-valuation is the coarsest with its ring", suite_coarsest),
    "localization": ("quotient quasi-valuation and localization", suite_localization),
    "census": ("maximal ideals of the quasi-valuation ring", suite_census),
    "cosets": ("value cosets, finiteness and symmetry facts", suite_cosets),
}


def run_suite(name: str, seed: int, samples: int) -> list[Report]:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name][1](seed, samples)
