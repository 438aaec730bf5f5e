"""Exact quasi-valuations: cut monoids, filter quasi-valuations, domination."""
from .ordered import (INF, DivElem, GroupElem, LexProductElem, MaxChain, MaxElem, NATURALS,
                      Ordering, TWO_CHAIN, lex_compare, torsion_witness)
from .cuts import (Cut, IsolatedSubgroup, PimDescriptor, cut_add, cut_cmp, cut_scalar,
                   cut_sub_group, isolated_subgroups, pim_membership, pims_over, principal)
from .fields import (QuadElem, RankTwoElem, classify_prime, composite_valuation,
                     extend_valuation, hensel_sqrt, padic, vp)
from .valuation import QuasiValuation, Valuation
from .core import (check_axioms, check_exponential, coset_count, coset_period, in_Iw, in_Ow,
                   is_stable, kummer, lexmax_demo, min_family, nadic, quotient_qv, squared,
                   truncated)
from .filters import (LocalizationAlg, QuadOrder, QuotientAlg, coarsest_check, filter_qv,
                      filter_qv_extend, iw_equals_IvR, kummer_equivalence, localization_compat,
                      support_cut)
from .domination import (Amalgam, AmalgamElem, amalgam_cmp, count_exponentials,
                         decompose_exponential, dominates, integrality_probe, is_singular,
                         max_ideal_census)

__version__ = "0.1.0"
