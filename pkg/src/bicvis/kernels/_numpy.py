"""Vectorized numpy kernels, same signatures and results as ``_numba``."""
import numpy as np

from .codes import AREA, PROX, UNINT


def _runsq(mask, sizes):
    """Per row of ``mask`` (r, p): sum of squared run weights along axis 1."""
    r, p = mask.shape
    out = np.zeros(r, dtype=np.int64)
    if p == 0 or r == 0:
        return out
    starts = mask.copy()
    starts[:, 1:] &= ~mask[:, :-1]
    labels = np.cumsum(starts.ravel()).reshape(r, p)
    nlab = int(labels[-1, -1]) if labels.size else 0
    if nlab == 0:
        return out
    sel = mask.ravel()
    lab = labels.ravel()[sel]
    w = np.broadcast_to(sizes, (r, p)).ravel()[sel]
    run = np.zeros(nlab + 1, dtype=np.int64)
    np.add.at(run, lab, w)
    owner = np.zeros(nlab + 1, dtype=np.int64)
    owner[lab] = np.broadcast_to(np.arange(r)[:, None], (r, p)).ravel()[sel]
    np.add.at(out, owner[1:], run[1:] ** 2)
    return out


def _span(mask, sizes):
    # (lo, hi) element span of members per row of mask; lo=-1 when empty
    ends = np.cumsum(sizes)
    starts = ends - sizes
    big = np.iinfo(np.int64).max
    lo = np.where(mask, starts, big).min(axis=1, initial=big)
    hi = np.where(mask, ends, -1).max(axis=1, initial=-1)
    lo[hi < 0] = -1
    return lo, hi


def _prox(ord_r, ord_c, mr, mc, sz_r, sz_c):
    lo_r, hi_r = _span(mr[ord_r].T, sz_r[ord_r])
    lo_c, hi_c = _span(mc[ord_c].T, sz_c[ord_c])
    ok = (lo_r >= 0) & (lo_c >= 0)
    return int(((hi_r - lo_r) * (hi_c - lo_c))[ok].sum())


def _area(ord_r, ord_c, mr, mc, sz_r, sz_c):
    a = _runsq(mr[ord_r].T, sz_r[ord_r])
    b = _runsq(mc[ord_c].T, sz_c[ord_c])
    return int((a * b).sum())


def _unint(ord_r, ord_c, co, sz_r, sz_c):
    sub = co[np.ix_(ord_r, ord_c)]
    rows = _runsq(sub, sz_c[ord_c]) * sz_r[ord_r] ** 2
    cols = _runsq(sub.T, sz_r[ord_r]) * sz_c[ord_c] ** 2
    return int(rows.sum() + cols.sum())


def _demerit_axis(ord_a, ord_b, ma, mb, sz_a):
    if len(ord_b) < 2 or len(ord_a) == 0:
        return 0
    a = ma[ord_a].astype(np.int64)
    left, right = mb[ord_b[:-1]], mb[ord_b[1:]]
    n1 = a @ left.T.astype(np.int64)
    n2 = a @ right.T.astype(np.int64)
    n12 = a @ (left & right).T.astype(np.int64)
    union = n1 + n2 - n12
    d = np.where((n1 == 0) | (n2 == 0), union + 1, union - n12)
    return int((sz_a[ord_a][:, None] * d).sum())


def score_blocks(kind, ord_r, ord_c, mr, mc, co, sz_r, sz_c):
    ord_r = np.asarray(ord_r, dtype=np.int64)
    ord_c = np.asarray(ord_c, dtype=np.int64)
    if kind == PROX:
        return _prox(ord_r, ord_c, mr, mc, sz_r, sz_c)
    if kind == AREA:
        return _area(ord_r, ord_c, mr, mc, sz_r, sz_c)
    if kind == UNINT:
        return _unint(ord_r, ord_c, co, sz_r, sz_c)
    return _demerit_axis(ord_r, ord_c, mr, mc, sz_r) + _demerit_axis(ord_c, ord_r, mc, mr, sz_c)


def insertion_scores(kind, seq, other, b, on_rows, mr, mc, co, sz_r, sz_c):
    seq = np.asarray(seq, dtype=np.int64)
    out = np.empty(len(seq) + 1, dtype=np.int64)
    for i in range(len(seq) + 1):
        cand = np.concatenate((seq[:i], [b], seq[i:]))
        if on_rows:
            out[i] = score_blocks(kind, cand, other, mr, mc, co, sz_r, sz_c)
        else:
            out[i] = score_blocks(kind, other, cand, mr, mc, co, sz_r, sz_c)
    return out


def pair_weights(ma, mb, sz_a):
    nb = mb.shape[0]
    w = np.zeros((nb, nb), dtype=np.int64)
    b = mb.astype(np.int64)
    for a in range(ma.shape[0]):
        row = ma[a].astype(np.int64)
        inter = b * row  # clusters shared by block a and each b-block
        n = inter.sum(axis=1)
        n12 = inter @ inter.T
        union = n[:, None] + n[None, :] - n12
        empty = (n[:, None] == 0) | (n[None, :] == 0)
        w += sz_a[a] * np.where(empty, union + 1, union - n12)
    np.fill_diagonal(w, 0)
    return w


def two_opt_pass(w, tour):
    n = len(tour)
    moves = 0
    for i in range(n - 2):
        jmax = n - 1 if i > 0 else n - 2
        js = np.arange(i + 2, jmax + 1)
        if len(js) == 0:
            continue
        a, b = tour[i], tour[i + 1]
        c, d = tour[js], tour[(js + 1) % n]
        delta = w[a, c] + w[b, d] - w[a, b] - w[c, d]
        j = int(np.argmin(delta))
        if delta[j] < 0:
            lo, hi = i + 1, int(js[j])
            tour[lo:hi + 1] = tour[lo:hi + 1][::-1].copy()
            moves += 1
    return moves
