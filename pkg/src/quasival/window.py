"""Brute-force left sets of cuts on a finite box of Z^k.

Left sets are materialized from their definition ((-inf, gamma] plus the
non-negative part of an isolated subgroup) as boolean arrays on
[-L, L]^k, and sums of left sets are computed as sumsets (boolean
convolution).  Nothing here consults the symbolic rules in ``cuts``; the
module exists to check them.

Sums computed from truncated summands are only complete away from the
box boundary, so comparisons are made on an inner box whose radius the
caller chooses.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy import fft as sfft
from scipy.signal import fftconvolve

from .cuts import CUT, MINUS_INF, PLUS_INF, Cut
from .ordered import INF, GroupElem, Ordering


def _grid(k: int, L: int) -> list[np.ndarray]:
    axis = np.arange(-L, L + 1)
    return np.meshgrid(*([axis] * k), indexing="ij") if k else []


def lex_down_mask(gamma: GroupElem, L: int) -> np.ndarray:
    """{x in [-L, L]^k : x <=_lex gamma}."""
    k = gamma.rank
    coords = _grid(k, L)
    shape = (2 * L + 1,) * k
    less = np.zeros(shape, dtype=bool)
    equal = np.ones(shape, dtype=bool)
    for c, g in zip(coords, gamma.coords):
        less |= equal & (c < g)
        equal &= c == g
    return less | equal


def positive_subgroup_mask(k: int, level: int, L: int) -> np.ndarray:
    """H^{>=0} on [-L, L]^k where H has its first k - level coordinates zero."""
    coords = _grid(k, L)
    shape = (2 * L + 1,) * k
    inside = np.ones(shape, dtype=bool)
    for c in coords[: k - level]:
        inside &= c == 0
    return inside & _nonneg_mask(coords, shape)


def _nonneg_mask(coords, shape) -> np.ndarray:
    pos = np.zeros(shape, dtype=bool)
    zero = np.ones(shape, dtype=bool)
    for c in coords:
        pos |= zero & (c > 0)
        zero &= c == 0
    return pos | zero


def _sumset(a: np.ndarray, b: np.ndarray, La: int, Lb: int, L_out: int) -> np.ndarray:
    """(A + B) restricted to [-L_out, L_out]^k for A on [-La, La]^k, B on [-Lb, Lb]^k."""
    if not a.any() or not b.any():
        return np.zeros((2 * L_out + 1,) * a.ndim, dtype=bool)
    conv = fftconvolve(a.astype(np.float64), b.astype(np.float64), mode="full")
    full = conv > 0.5
    # index i of the full convolution is coordinate i - (La + Lb)
    off = La + Lb - L_out
    sl = tuple(slice(off, off + 2 * L_out + 1) for _ in range(a.ndim))
    return full[sl]


def raw_left_set(gamma: GroupElem | None, level: int, kind: str, k: int, L: int) -> np.ndarray:
    """Left set of a cut given by raw (possibly non-canonical) data, on [-L, L]^k."""
    shape = (2 * L + 1,) * k
    if kind == MINUS_INF:
        return np.zeros(shape, dtype=bool)
    if kind == PLUS_INF:
        return np.ones(shape, dtype=bool)
    big = 2 * L
    down = lex_down_mask(gamma, big)
    if level == 0:
        c = big - L
        return down[tuple(slice(c, c + 2 * L + 1) for _ in range(k))]
    hpos = positive_subgroup_mask(k, level, big)
    return _sumset(down, hpos, big, big, L)


@lru_cache(maxsize=4096)
def _left_set_cached(cut: Cut, L: int) -> np.ndarray:
    mask = raw_left_set(cut.gamma, cut.level, cut.kind, cut.rank, L)
    mask.flags.writeable = False
    return mask


def left_set(cut: Cut, L: int) -> np.ndarray:
    if cut is INF:
        raise ValueError("infinity is not a cut")
    return _left_set_cached(cut, L)


class SumsetTable:
    """Sumsets of one left set against many, sharing FFTs.

    All masks live on [-L, L]^k; results are cut down to [-R, R]^k.
    """

    def __init__(self, masks: list[np.ndarray], L: int, R: int):
        self.L, self.R = L, R
        self.k = masks[0].ndim
        n = 2 * L + 1
        self.shape = tuple(sfft.next_fast_len(2 * n - 1, real=True) for _ in range(self.k))
        axes = tuple(range(1, self.k + 1))
        stack = np.stack([m.astype(np.float64) for m in masks])
        self.spectra = sfft.rfftn(stack, s=self.shape, axes=axes)
        self.empty = np.array([not m.any() for m in masks])

    def sums(self, i: int, js) -> np.ndarray:
        js = np.asarray(js)
        axes = tuple(range(1, self.k + 1))
        prod = self.spectra[i][None, ...] * self.spectra[js]
        conv = sfft.irfftn(prod, s=self.shape, axes=axes)
        off = 2 * self.L - self.R
        sl = (slice(None),) + tuple(slice(off, off + 2 * self.R + 1) for _ in range(self.k))
        out = conv[sl] > 0.5
        if self.empty[i]:
            out[:] = False
        out[self.empty[js]] = False
        return out


def sum_left_sets(a: np.ndarray, b: np.ndarray, L: int) -> np.ndarray:
    return _sumset(a, b, L, L, L)


def nfold_left_set(a: np.ndarray, n: int, L: int) -> np.ndarray:
    acc = a
    for _ in range(n - 1):
        acc = _sumset(acc, a, L, L, L)
    return acc


def inner(mask: np.ndarray, L: int, R: int) -> np.ndarray:
    off = L - R
    return mask[tuple(slice(off, off + 2 * R + 1) for _ in range(mask.ndim))]


def compare_masks(a: np.ndarray, b: np.ndarray) -> Ordering:
    """Inclusion order of two left sets (both must be comparable)."""
    a_in_b = not (a & ~b).any()
    b_in_a = not (b & ~a).any()
    if a_in_b and b_in_a:
        return Ordering.EQ
    if a_in_b:
        return Ordering.LT
    if b_in_a:
        return Ordering.GT
    raise ValueError("left sets are not nested; not cuts")


def oracle_add(a: Cut, b: Cut, L: int, R: int) -> np.ndarray:
    return inner(sum_left_sets(left_set(a, L), left_set(b, L), L), L, R)


def oracle_scalar(n: int, a: Cut, L: int, R: int) -> np.ndarray:
    return inner(nfold_left_set(left_set(a, L), n, L), L, R)


def oracle_cmp(a: Cut, b: Cut, L: int) -> Ordering:
    return compare_masks(left_set(a, L), left_set(b, L))


# ---- the full comparison ------------------------------------------------------

def cuts_in_box(k: int, B: int) -> list[Cut]:
    """Every canonical cut CutOf(gamma, H_j) with gamma in [-B, B]^k, plus both extremes."""
    from .ordered import lattice_box

    out = {Cut.minus_inf(k), Cut.plus_inf(k)}
    for g in lattice_box(k, B):
        for level in range(k + 1):
            out.add(Cut.of(g, level))
    return sorted(out, key=lambda c: c._key())


def check_cut_oracle(k: int, B: int = 8, L: int = 24, scalar_ns=(1, 2, 3),
                     strict_n: int = 6):
    """Symbolic add / scalar / compare against explicit left sets.

    Sums are compared on the inner box of radius 2B (two summands from the
    box reach it without clipping); n-fold sums on radius L - (n - 1)B.
    Comparisons use inclusion of the full left sets.  Canonical forms are
    checked against left sets of every non-canonical representative, and
    N-strictness (A < B implies nA < nB) is checked on the symbolic side
    for n <= strict_n (the scalars themselves being oracle-checked).
    """
    from .reports import Report

    cuts = cuts_in_box(k, B)
    masks = [left_set(c, L) for c in cuts]
    index = {c: i for i, c in enumerate(cuts)}
    R = 2 * B
    counts = {"add": 0, "scalar": 0, "cmp": 0, "canonical": 0, "strict": 0}
    bad = []

    # addition
    table = SumsetTable(masks, L, R)
    for i, a in enumerate(cuts):
        js = [j for j in range(i, len(cuts))
              if {a.kind, cuts[j].kind} != {MINUS_INF, PLUS_INF}]
        got = table.sums(i, js)
        for j, sumset in zip(js, got):
            s = a + cuts[j]
            counts["add"] += 1
            if not np.array_equal(sumset, inner(left_set(s, L), L, R)):
                bad.append(("add", a, cuts[j], s))

    # scaling
    for n in scalar_ns:
        Rn = L - (n - 1) * B
        for a in cuts:
            counts["scalar"] += 1
            if not np.array_equal(oracle_scalar(n, a, L, Rn), inner(left_set(a * n, L), L, Rn)):
                bad.append(("scalar", n, a))

    # order
    for i, a in enumerate(cuts):
        for j, b in enumerate(cuts):
            counts["cmp"] += 1
            if compare_masks(masks[i], masks[j]) != Ordering.of(a, b):
                bad.append(("cmp", a, b))

    # canonical forms: every representative gamma + h gives the same left set
    from .ordered import lattice_box

    for g in lattice_box(k, B):
        for level in range(1, k):
            canon = Cut.of(g, level)
            raw = raw_left_set(g, level, CUT, k, L)
            counts["canonical"] += 1
            if not np.array_equal(raw, left_set(canon, L)):
                bad.append(("canonical", g, level))

    # N-strictness
    for i, a in enumerate(cuts):
        for b in cuts[i + 1:]:
            for n in range(1, strict_n + 1):
                counts["strict"] += 1
                if not a * n < b * n:
                    bad.append(("strict", n, a, b))
    total = sum(counts.values())
    return Report(f"cut-oracle[rank={k}]", not bad, total, len(bad), None,
                  bad[0] if bad else None, {**counts, "B": B, "L": L, "inner": R})
