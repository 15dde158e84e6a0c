"""Objective functions for biclustering layouts.

Two evaluation paths exist. The element-level functions (``score_prox``,
``f_area``, ``f_unint`` ...) work directly on a :class:`Layout`'s element
permutations and mirror the definitions one-to-one. The block-level path
(:func:`partial_score`, :func:`score_layout`) runs on block orders through the
compiled kernels and is what the search algorithms use.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .model import (
    COL, ROW, Bicluster, Biclustering, Block, BlockDecomposition, Layout, ValidationError, cons,
)


class Direction(enum.Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"


class ObjectiveKind(enum.Enum):
    PROXIMITY = "proximity"
    CONSECUTIVE_CLUSTER_AREA = "consecutiveClusterArea"
    UNINTERRUPTED_AREA = "uninterruptedArea"
    DEMERIT = "demerit"

    @property
    def direction(self) -> Direction:
        if self in (ObjectiveKind.PROXIMITY, ObjectiveKind.DEMERIT):
            return Direction.MINIMIZE
        return Direction.MAXIMIZE

    @property
    def code(self) -> int:
        return _CODES[self]

    def better(self, a, b) -> bool:
        """True if score ``a`` strictly beats ``b``."""
        return a < b if self.direction is Direction.MINIMIZE else a > b


_CODES = {
    ObjectiveKind.PROXIMITY: kernels.PROX,
    ObjectiveKind.CONSECUTIVE_CLUSTER_AREA: kernels.AREA,
    ObjectiveKind.UNINTERRUPTED_AREA: kernels.UNINT,
    ObjectiveKind.DEMERIT: kernels.DEMERIT,
}


# -- element level ---------------------------------------------------------

def _image(xs, pi: Sequence[int]) -> set[int]:
    return {pi[x - 1] for x in xs}


def score_prox(cluster: Bicluster, layout: Layout) -> int:
    """Area of the bounding rectangle of the visualized cluster."""
    if not cluster.rows or not cluster.cols:
        raise ValidationError("proximity is undefined for an empty cluster")
    rows = _image(cluster.rows, layout.pi_r)
    cols = _image(cluster.cols, layout.pi_c)
    return (max(rows) - min(rows) + 1) * (max(cols) - min(cols) + 1)


def f_prox(bc: Biclustering, layout: Layout) -> int:
    return sum(score_prox(cl, layout) for cl in bc)


def score_area(cluster: Bicluster, layout: Layout) -> int:
    """Sum of squared areas of the cluster's consecutive rectangles."""
    row_runs = cons(_image(cluster.rows, layout.pi_r))
    col_runs = cons(_image(cluster.cols, layout.pi_c))
    return sum((len(x) * len(y)) ** 2 for x in row_runs for y in col_runs)


def f_area(bc: Biclustering, layout: Layout) -> int:
    return sum(score_area(cl, layout) for cl in bc)


def nonzero_block(block: Block, decomp: BlockDecomposition, perm: Sequence[int]) -> set[int]:
    """Visual positions on the opposite axis that share a cluster with ``block``.

    ``perm`` is the element permutation of the opposite axis.
    """
    other = decomp.col_blocks if block.axis == ROW else decomp.row_blocks
    out: set[int] = set()
    for ob in other:
        if block.signature & ob.signature:
            out |= _image(ob.members, perm)
    return out


def f_unint(bc: Biclustering, decomp: BlockDecomposition, layout: Layout) -> int:
    """Uninterrupted-area objective; requires a block-contiguous layout."""
    layout.validate(decomp)
    total = 0
    for b in decomp.row_blocks:
        total += sum((len(b) * len(y)) ** 2 for y in cons(nonzero_block(b, decomp, layout.pi_c)))
    for b in decomp.col_blocks:
        total += sum((len(x) * len(b)) ** 2 for x in cons(nonzero_block(b, decomp, layout.pi_r)))
    return total


def demerit_triple(b: Block, x: Block, y: Block) -> int:
    """Penalty, weighted by ``|b|``, for placing ``x`` next to ``y``.

    ``b`` lives on the opposite axis of ``x`` and ``y``. Symmetric in ``x``, ``y``.
    """
    c1 = b.signature & x.signature
    c2 = b.signature & y.signature
    if not c1 or not c2:
        return len(b) * (len(c1 | c2) + 1)
    return len(b) * (len(c1 | c2) - len(c1 & c2))


def pair_weight(x: Block, y: Block, decomp: BlockDecomposition) -> int:
    opposite = decomp.row_blocks if x.axis == COL else decomp.col_blocks
    return sum(demerit_triple(b, x, y) for b in opposite)


def demerit_perm(sigma: Sequence[int], decomp: BlockDecomposition, axis: str = COL) -> int:
    """Total demerit of a block order on ``axis``, summed over all opposite blocks."""
    blocks = decomp.blocks(axis)
    opposite = decomp.blocks(ROW if axis == COL else COL)
    return sum(
        demerit_triple(b, blocks[sigma[i]], blocks[sigma[i + 1]])
        for b in opposite
        for i in range(len(sigma) - 1)
    )


def f_demerit(decomp: BlockDecomposition, layout: Layout) -> int:
    return demerit_perm(layout.sigma_c, decomp, COL) + demerit_perm(layout.sigma_r, decomp, ROW)


def evaluate(kind: ObjectiveKind, bc: Biclustering, decomp: BlockDecomposition, layout: Layout) -> int:
    """Element-level evaluation of ``kind`` on ``layout``."""
    if kind is ObjectiveKind.PROXIMITY:
        return f_prox(bc, layout)
    if kind is ObjectiveKind.CONSECUTIVE_CLUSTER_AREA:
        return f_area(bc, layout)
    if kind is ObjectiveKind.UNINTERRUPTED_AREA:
        return f_unint(bc, decomp, layout)
    return f_demerit(decomp, layout)


# -- block level -----------------------------------------------------------

@dataclass(frozen=True)
class BlockArrays:
    """Dense arrays describing a decomposition, as consumed by the kernels."""

    mr: np.ndarray
    mc: np.ndarray
    co: np.ndarray
    sz_r: np.ndarray
    sz_c: np.ndarray

    @classmethod
    def from_decomp(cls, decomp: BlockDecomposition) -> "BlockArrays":
        mr = decomp.membership(ROW)
        mc = decomp.membership(COL)
        co = (mr.astype(np.int64) @ mc.T.astype(np.int64)) > 0
        return cls(mr, mc, np.ascontiguousarray(co), decomp.sizes(ROW), decomp.sizes(COL))

    def args(self):
        return self.mr, self.mc, self.co, self.sz_r, self.sz_c


def _as_order(seq) -> np.ndarray:
    return np.asarray(list(seq), dtype=np.int64)


def partial_score(kind: ObjectiveKind, placed_r, placed_c, decomp: BlockDecomposition,
                  arrays: BlockArrays | None = None) -> int:
    """Objective restricted to the blocks placed so far.

    Clusters are intersected with the placed rows and columns, which are
    renumbered ``1..#placed`` in the given order. A cluster with no placed row
    or no placed column contributes nothing.
    """
    arrays = arrays or BlockArrays.from_decomp(decomp)
    return int(kernels.score_blocks(kind.code, _as_order(placed_r), _as_order(placed_c), *arrays.args()))


def score_layout(kind: ObjectiveKind, decomp: BlockDecomposition, layout: Layout,
                 arrays: BlockArrays | None = None) -> int:
    """Block-level evaluation of a full layout (fast path)."""
    return partial_score(kind, layout.sigma_r, layout.sigma_c, decomp, arrays)
