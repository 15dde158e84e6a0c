"""Suggest unclustered rows/columns that resemble existing clusters."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .model import (
    COL, ROW, Bicluster, Biclustering, BinaryMatrix, BlockDecomposition, Layout, ValidationError, order_to_perm,
)


@dataclass(frozen=True)
class Suggestions:
    """Per-cluster sets of suggested unclustered rows and columns.

    Keys are 0-based cluster indices; only clusters with at least one match appear.
    """

    rows: dict[int, frozenset[int]] = field(default_factory=dict)
    cols: dict[int, frozenset[int]] = field(default_factory=dict)
    leftover_rows: frozenset[int] = frozenset()
    leftover_cols: frozenset[int] = frozenset()

    @property
    def suggested_rows(self) -> frozenset[int]:
        return frozenset().union(*self.rows.values())

    @property
    def suggested_cols(self) -> frozenset[int]:
        return frozenset().union(*self.cols.values())

    def to_json(self) -> dict:
        return {
            "rows": {str(i + 1): sorted(v) for i, v in sorted(self.rows.items())},
            "cols": {str(i + 1): sorted(v) for i, v in sorted(self.cols.items())},
            "leftoverRows": sorted(self.leftover_rows),
            "leftoverCols": sorted(self.leftover_cols),
        }


def similarity(r: int, ci, a: BinaryMatrix) -> Fraction:
    """Fraction of the columns in ``ci`` where row ``r`` holds a 1."""
    if not ci:
        raise ValidationError("similarity against an empty column set")
    return Fraction(sum((r, c) in a.ones for c in ci), len(ci))


def col_similarity(c: int, ri, a: BinaryMatrix) -> Fraction:
    if not ri:
        raise ValidationError("similarity against an empty row set")
    return Fraction(sum((r, c) in a.ones for r in ri), len(ri))


def density(cluster: Bicluster, a: BinaryMatrix) -> Fraction:
    ones = sum((r, c) in a.ones for r in cluster.rows for c in cluster.cols)
    return Fraction(ones, cluster.area)


def suggest(a: BinaryMatrix, bc: Biclustering, factor: Fraction = Fraction(1, 2)) -> Suggestions:
    """Assign each unclustered row to every cluster it is at least half as dense as.

    Row ``r`` joins cluster ``i`` when ``similarity(r, C_i) >= factor * density_i``;
    columns are matched against row clusters the same way.
    """
    clustered_r = set().union(*(cl.rows for cl in bc))
    clustered_c = set().union(*(cl.cols for cl in bc))
    free_r = [r for r in range(1, a.m + 1) if r not in clustered_r]
    free_c = [c for c in range(1, a.n + 1) if c not in clustered_c]
    rows: dict[int, frozenset[int]] = {}
    cols: dict[int, frozenset[int]] = {}
    for i, cl in enumerate(bc):
        thresh = factor * density(cl, a)
        hit_r = frozenset(r for r in free_r if similarity(r, cl.cols, a) >= thresh)
        hit_c = frozenset(c for c in free_c if col_similarity(c, cl.rows, a) >= thresh)
        if hit_r:
            rows[i] = hit_r
        if hit_c:
            cols[i] = hit_c
    picked_r = frozenset().union(*rows.values())
    picked_c = frozenset().union(*cols.values())
    return Suggestions(rows, cols, frozenset(free_r) - picked_r, frozenset(free_c) - picked_c)


def _zone_order(base_order: list[int], clusters, matches: dict[int, frozenset[int]],
                leftover: frozenset[int]) -> list[int]:
    clustered = set().union(*clusters) if clusters else set()
    center = [x for x in base_order if x in clustered]
    pos = {x: p for p, x in enumerate(center)}
    # clusters sorted by where they first appear in the central band
    by_position = sorted(matches, key=lambda i: (min(pos[x] for x in clusters[i]), i))
    band: list[int] = []
    placed: set[int] = set()
    for i in by_position:
        group = sorted(x for x in matches[i] if x not in placed)
        band.extend(group)
        placed.update(group)
    return sorted(leftover) + band + center


def zone_layout(base: Layout, sugg: Suggestions, decomp: BlockDecomposition, bc: Biclustering) -> Layout:
    """Rearrange a layout into outer leftover band, suggestion band and clustered center.

    Rows go leftover-first from the top and columns from the left. A row
    suggested for several clusters is drawn once, next to the first of them.
    """
    if not sugg.rows and not sugg.cols and not sugg.leftover_rows and not sugg.leftover_cols:
        return base
    row_order = _zone_order(base.row_order, [cl.rows for cl in bc], sugg.rows, sugg.leftover_rows)
    col_order = _zone_order(base.col_order, [cl.cols for cl in bc], sugg.cols, sugg.leftover_cols)

    def sigma(axis, old):
        free = decomp.unclustered_block(axis)
        return old if free is None else (free,) + tuple(b for b in old if b != free)

    return Layout(sigma(ROW, base.sigma_r), sigma(COL, base.sigma_c),
                  order_to_perm(row_order), order_to_perm(col_order), dict(base.meta, zoned=True))
