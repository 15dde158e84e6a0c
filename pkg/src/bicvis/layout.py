"""Search procedures that produce block orders (and hence layouts)."""
from __future__ import annotations

import enum
from typing import Sequence

import numpy as np

from . import kernels
from .model import COL, ROW, Biclustering, BlockDecomposition, Layout, importance_order
from .objectives import BlockArrays, ObjectiveKind
from .tsp import TspConfig, solve_tsp


class AlgorithmId(enum.Enum):
    GREEDY_PROXIMITY = "GreedyProximity"
    GREEDY_CONSECUTIVE_CLUSTERS_AREA = "GreedyConsecutiveClustersArea"
    GREEDY_UNINTERRUPTED_AREA = "GreedyUninterruptedArea"
    GREEDY_DEMERIT = "GreedyDemerit"
    TSP_HEURISTIC = "TspHeuristic"
    RANDOM = "Random"
    IDENTITY = "Identity"

    @classmethod
    def parse(cls, name: str) -> "AlgorithmId":
        key = name.replace("-", "").replace("_", "").lower()
        for alg in cls:
            if alg.value.lower() == key:
                return alg
        raise ValueError(f"unknown algorithm {name!r}; choose from {', '.join(a.value for a in cls)}")


GREEDY_KIND = {
    AlgorithmId.GREEDY_PROXIMITY: ObjectiveKind.PROXIMITY,
    AlgorithmId.GREEDY_CONSECUTIVE_CLUSTERS_AREA: ObjectiveKind.CONSECUTIVE_CLUSTER_AREA,
    AlgorithmId.GREEDY_UNINTERRUPTED_AREA: ObjectiveKind.UNINTERRUPTED_AREA,
}

DEMERIT_MODES = ("verbatim", "insertion-min")


def _order(seq) -> np.ndarray:
    return np.asarray(list(seq), dtype=np.int64)


def greedy_add(sigma: Sequence[int], b: int, other: Sequence[int], kind: ObjectiveKind,
               on_rows: bool, arrays: BlockArrays) -> list[int]:
    """Insert block ``b`` into ``sigma`` where the partial score is best.

    The append position is the initial candidate; earlier positions replace it
    only on strict improvement, so ties keep the earliest improving slot.
    """
    scores = kernels.insertion_scores(kind.code, _order(sigma), _order(other), b, on_rows, *arrays.args())
    best_i = len(sigma)
    best = scores[best_i]
    for i in range(len(sigma)):
        if kind.better(scores[i], best):
            best_i, best = i, scores[i]
    return list(sigma[:best_i]) + [b] + list(sigma[best_i:])


def greedy_layout(kind: ObjectiveKind, decomp: BlockDecomposition, bc: Biclustering,
                  arrays: BlockArrays | None = None) -> Layout:
    """Alternate row and column insertions in order of descending importance."""
    arrays = arrays or BlockArrays.from_decomp(decomp)
    rows = importance_order(decomp.row_blocks, bc)
    cols = importance_order(decomp.col_blocks, bc)
    sigma_r: list[int] = []
    sigma_c: list[int] = []
    for i in range(max(len(rows), len(cols))):
        if len(sigma_r) < len(rows):
            sigma_r = greedy_add(sigma_r, rows[i], sigma_c, kind, True, arrays)
        if len(sigma_c) < len(cols):
            sigma_c = greedy_add(sigma_c, cols[i], sigma_r, kind, False, arrays)
    return Layout.from_blocks(sigma_r, sigma_c, decomp, algorithm=f"greedy:{kind.value}")


def axis_weights(decomp: BlockDecomposition, axis: str, arrays: BlockArrays | None = None) -> np.ndarray:
    """Pairwise demerit weights between the blocks of ``axis``."""
    arrays = arrays or BlockArrays.from_decomp(decomp)
    if axis == COL:
        return kernels.pair_weights(arrays.mr, arrays.mc, arrays.sz_r)
    return kernels.pair_weights(arrays.mc, arrays.mr, arrays.sz_c)


def greedy_demerit_axis(decomp: BlockDecomposition, axis: str, bc: Biclustering, mode: str = "verbatim",
                        weights: np.ndarray | None = None) -> list[int]:
    """Importance-ordered insertion driven by pairwise demerit.

    ``verbatim`` applies the original insertion rule literally. The new block
    goes after the first block or at the end, whichever neighbour is cheaper,
    and an interior slot replaces that choice only when both of its neighbours
    cost more than the current choice yet no more than the pair they separate.
    ``insertion-min`` picks the slot with the smallest increase in total demerit.
    """
    if mode not in DEMERIT_MODES:
        raise ValueError(f"unknown demerit insertion mode {mode!r}")
    d = axis_weights(decomp, axis) if weights is None else weights
    sigma: list[int] = []
    for b in importance_order(decomp.blocks(axis), bc):
        if len(sigma) < 2:
            sigma.append(b)
            continue
        if mode == "verbatim":
            if d[b, sigma[0]] < d[b, sigma[-1]]:
                p, l = 1, d[b, sigma[0]]
            else:
                p, l = len(sigma), d[b, sigma[-1]]
            for i in range(2, len(sigma)):
                l_prec, l_succ = d[b, sigma[i - 1]], d[b, sigma[i]]
                l_curr = d[sigma[i - 1], sigma[i]]
                if min(l_prec, l_succ) > l and max(l_prec, l_succ) <= l_curr:
                    p, l = i, min(l_prec, l_succ)
        else:
            p, l = 0, d[b, sigma[0]]
            for i in range(1, len(sigma) + 1):
                if i == len(sigma):
                    inc = d[b, sigma[-1]]
                else:
                    inc = d[b, sigma[i - 1]] + d[b, sigma[i]] - d[sigma[i - 1], sigma[i]]
                if inc < l:
                    p, l = i, inc
        sigma.insert(p, b)
    return sigma


def greedy_demerit_layout(decomp: BlockDecomposition, bc: Biclustering, mode: str = "verbatim",
                          arrays: BlockArrays | None = None) -> Layout:
    arrays = arrays or BlockArrays.from_decomp(decomp)
    sigma_r = greedy_demerit_axis(decomp, ROW, bc, mode, axis_weights(decomp, ROW, arrays))
    sigma_c = greedy_demerit_axis(decomp, COL, bc, mode, axis_weights(decomp, COL, arrays))
    return Layout.from_blocks(sigma_r, sigma_c, decomp, algorithm=f"greedy-demerit:{mode}")


def path_cost(w: np.ndarray, order: Sequence[int]) -> int:
    order = np.asarray(order, dtype=np.int64)
    return int(w[order[:-1], order[1:]].sum())


CUT_RULES = ("path", "area")


def best_cut(tour: Sequence[int], other: Sequence[int], on_rows: bool, w: np.ndarray,
             arrays: BlockArrays, rule: str = "path") -> list[int]:
    """Rotate a cyclic tour into a linear block order.

    ``path`` takes the rotation with the lowest path demerit and breaks ties by
    the larger cluster area. ``area`` maximises cluster area first and uses
    the path demerit as tie-break. Remaining ties go to the earliest rotation.
    """
    other = _order(other)
    best_key, best_rot = None, None
    for j in range(len(tour)):
        rot = list(tour[j:]) + list(tour[:j])
        if on_rows:
            area = kernels.score_blocks(kernels.AREA, _order(rot), other, *arrays.args())
        else:
            area = kernels.score_blocks(kernels.AREA, other, _order(rot), *arrays.args())
        cost = path_cost(w, rot)
        key = (cost, -int(area)) if rule == "path" else (-int(area), cost)
        if best_key is None or key < best_key:
            best_key, best_rot = key, rot
    return best_rot


def demerit_tour(w: np.ndarray, cfg: TspConfig, rule: str = "path") -> list[int]:
    """Tour over the blocks of one axis.

    Under ``path`` a zero-weight dummy vertex is added so the solver minimises
    the open path; the tour is returned starting right after the dummy.
    """
    if rule == "area" or len(w) < 2:
        return solve_tsp(w, cfg)
    t = len(w)
    aug = np.zeros((t + 1, t + 1), dtype=np.int64)
    aug[:t, :t] = w
    tour = solve_tsp(aug, cfg)
    at = tour.index(t)
    return tour[at + 1:] + tour[:at]


def tsp_layout(decomp: BlockDecomposition, bc: Biclustering, cfg: TspConfig = TspConfig(),
               arrays: BlockArrays | None = None, cut: str = "path") -> Layout:
    """Order each axis along a short demerit tour, then pick where to cut it.

    Rows are cut against the identity column order, then columns against the
    chosen row order. See :func:`best_cut` for the cut rules.
    """
    if cut not in CUT_RULES:
        raise ValueError(f"unknown cut rule {cut!r}")
    arrays = arrays or BlockArrays.from_decomp(decomp)
    w_r = axis_weights(decomp, ROW, arrays)
    w_c = axis_weights(decomp, COL, arrays)
    tour_r = demerit_tour(w_r, cfg, cut)
    tour_c = demerit_tour(w_c, cfg, cut)
    sigma_r = best_cut(tour_r, range(decomp.t), True, w_r, arrays, cut)
    sigma_c = best_cut(tour_c, sigma_r, False, w_c, arrays, cut)
    return Layout.from_blocks(sigma_r, sigma_c, decomp, algorithm="tsp", cut=cut,
                              demerit_r=path_cost(w_r, sigma_r), demerit_c=path_cost(w_c, sigma_c))


def random_layout(decomp: BlockDecomposition, seed: int) -> Layout:
    """Uniformly random block orders on both axes from a seeded generator."""
    rng = np.random.default_rng(seed)
    sigma_r = rng.permutation(decomp.s)
    sigma_c = rng.permutation(decomp.t)
    return Layout.from_blocks(sigma_r, sigma_c, decomp, algorithm="random", seed=seed)


def run_algorithm(alg: AlgorithmId, decomp: BlockDecomposition, bc: Biclustering, *, seed: int = 0,
                  tsp_cfg: TspConfig | None = None, demerit_mode: str = "verbatim",
                  tsp_cut: str = "path", arrays: BlockArrays | None = None) -> Layout:
    arrays = arrays or BlockArrays.from_decomp(decomp)
    if alg in GREEDY_KIND:
        return greedy_layout(GREEDY_KIND[alg], decomp, bc, arrays)
    if alg is AlgorithmId.GREEDY_DEMERIT:
        return greedy_demerit_layout(decomp, bc, demerit_mode, arrays)
    if alg is AlgorithmId.TSP_HEURISTIC:
        return tsp_layout(decomp, bc, tsp_cfg or TspConfig(seed=seed), arrays, tsp_cut)
    if alg is AlgorithmId.RANDOM:
        return random_layout(decomp, seed)
    return Layout.identity(decomp)
