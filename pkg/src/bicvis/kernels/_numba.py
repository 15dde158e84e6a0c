"""Loop kernels compiled with numba.

Array conventions shared with ``_numpy``: ``ord_r``/``ord_c`` are int64 block
orders (possibly partial), ``mr``/``mc`` boolean block-by-cluster membership,
``co`` the boolean row-block by column-block co-occurrence matrix and
``sz_r``/``sz_c`` int64 block sizes.
"""
import numpy as np
from numba import njit

from .codes import AREA, DEMERIT, PROX, UNINT

_opts = dict(cache=True, nogil=True)


@njit(**_opts)
def _prox(ord_r, ord_c, mr, mc, sz_r, sz_c):
    k = mr.shape[1]
    total = 0
    for i in range(k):
        lo_r, hi_r, pos = -1, -1, 0
        for b in ord_r:
            if mr[b, i]:
                if lo_r < 0:
                    lo_r = pos
                hi_r = pos + sz_r[b]
            pos += sz_r[b]
        if lo_r < 0:
            continue
        lo_c, hi_c, pos = -1, -1, 0
        for b in ord_c:
            if mc[b, i]:
                if lo_c < 0:
                    lo_c = pos
                hi_c = pos + sz_c[b]
            pos += sz_c[b]
        if lo_c < 0:
            continue
        total += (hi_r - lo_r) * (hi_c - lo_c)
    return total


@njit(**_opts)
def _runsq_member(order, m, i, sz):
    # sum of squared run lengths of blocks in cluster i along order
    acc, run = 0, 0
    for b in order:
        if m[b, i]:
            run += sz[b]
        else:
            acc += run * run
            run = 0
    return acc + run * run


@njit(**_opts)
def _area(ord_r, ord_c, mr, mc, sz_r, sz_c):
    total = 0
    for i in range(mr.shape[1]):
        a = _runsq_member(ord_r, mr, i, sz_r)
        if a == 0:
            continue
        total += a * _runsq_member(ord_c, mc, i, sz_c)
    return total


@njit(**_opts)
def _unint(ord_r, ord_c, co, sz_r, sz_c):
    total = 0
    for a in ord_r:
        acc, run = 0, 0
        for c in ord_c:
            if co[a, c]:
                run += sz_c[c]
            else:
                acc += run * run
                run = 0
        acc += run * run
        total += sz_r[a] * sz_r[a] * acc
    for c in ord_c:
        acc, run = 0, 0
        for a in ord_r:
            if co[a, c]:
                run += sz_r[a]
            else:
                acc += run * run
                run = 0
        acc += run * run
        total += sz_c[c] * sz_c[c] * acc
    return total


@njit(**_opts)
def _triple(ma, a, mb, i, j):
    n1, n2, n12 = 0, 0, 0
    for x in range(ma.shape[1]):
        if ma[a, x]:
            p = mb[i, x]
            q = mb[j, x]
            if p:
                n1 += 1
            if q:
                n2 += 1
            if p and q:
                n12 += 1
    union = n1 + n2 - n12
    if n1 == 0 or n2 == 0:
        return union + 1
    return union - n12


@njit(**_opts)
def _demerit_axis(ord_a, ord_b, ma, mb, sz_a):
    total = 0
    for a in ord_a:
        for p in range(len(ord_b) - 1):
            total += sz_a[a] * _triple(ma, a, mb, ord_b[p], ord_b[p + 1])
    return total


@njit(**_opts)
def score_blocks(kind, ord_r, ord_c, mr, mc, co, sz_r, sz_c):
    if kind == PROX:
        return _prox(ord_r, ord_c, mr, mc, sz_r, sz_c)
    if kind == AREA:
        return _area(ord_r, ord_c, mr, mc, sz_r, sz_c)
    if kind == UNINT:
        return _unint(ord_r, ord_c, co, sz_r, sz_c)
    return _demerit_axis(ord_r, ord_c, mr, mc, sz_r) + _demerit_axis(ord_c, ord_r, mc, mr, sz_c)


@njit(**_opts)
def insertion_scores(kind, seq, other, b, on_rows, mr, mc, co, sz_r, sz_c):
    p = len(seq)
    out = np.empty(p + 1, dtype=np.int64)
    cand = np.empty(p + 1, dtype=np.int64)
    for i in range(p + 1):
        cand[:i] = seq[:i]
        cand[i] = b
        cand[i + 1:] = seq[i:]
        if on_rows:
            out[i] = score_blocks(kind, cand, other, mr, mc, co, sz_r, sz_c)
        else:
            out[i] = score_blocks(kind, other, cand, mr, mc, co, sz_r, sz_c)
    return out


@njit(**_opts)
def pair_weights(ma, mb, sz_a):
    nb = mb.shape[0]
    w = np.zeros((nb, nb), dtype=np.int64)
    for i in range(nb):
        for j in range(i + 1, nb):
            acc = 0
            for a in range(ma.shape[0]):
                acc += sz_a[a] * _triple(ma, a, mb, i, j)
            w[i, j] = acc
            w[j, i] = acc
    return w


@njit(**_opts)
def two_opt_pass(w, tour):
    """One sweep of 2-opt over ``tour`` (modified in place).

    For each ``i`` the most improving ``j`` is applied. Returns the number of
    accepted moves.
    """
    n = len(tour)
    moves = 0
    for i in range(n - 2):
        best, best_j = 0, -1
        a, b = tour[i], tour[i + 1]
        jmax = n - 1 if i > 0 else n - 2
        for j in range(i + 2, jmax + 1):
            c, d = tour[j], tour[(j + 1) % n]
            delta = w[a, c] + w[b, d] - w[a, b] - w[c, d]
            if delta < best:
                best, best_j = delta, j
        if best_j >= 0:
            lo, hi = i + 1, best_j
            while lo < hi:
                tour[lo], tour[hi] = tour[hi], tour[lo]
                lo += 1
                hi -= 1
            moves += 1
    return moves
