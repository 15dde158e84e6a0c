"""Core data types: binary matrix, biclusters, blocks and layouts.

Row and column indices are 1-based everywhere (``1..m`` and ``1..n``).
Cluster indices and block indices are 0-based positions into
``Biclustering.clusters`` and ``BlockDecomposition.row_blocks`` /
``col_blocks``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

ROW = "row"
COL = "col"


class ValidationError(ValueError):
    """Raised when an input violates a structural invariant."""


def cons(xs: Iterable[int]) -> list[list[int]]:
    """Split a set of integers into maximal runs of consecutive values.

    >>> cons({1, 2, 5})
    [[1, 2], [5]]
    """
    runs: list[list[int]] = []
    for x in sorted(set(xs)):
        if runs and runs[-1][-1] == x - 1:
            runs[-1].append(x)
        else:
            runs.append([x])
    return runs


@dataclass(frozen=True)
class BinaryMatrix:
    m: int
    n: int
    ones: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValidationError(f"matrix dimensions must be positive, got {self.m}x{self.n}")
        object.__setattr__(self, "ones", frozenset(self.ones))
        for r, c in self.ones:
            if not (1 <= r <= self.m and 1 <= c <= self.n):
                raise ValidationError(f"entry ({r}, {c}) outside {self.m}x{self.n} matrix")

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "BinaryMatrix":
        arr = np.asarray(rows)
        if arr.ndim != 2:
            raise ValidationError("dense matrix must be two-dimensional")
        rr, cc = np.nonzero(arr)
        return cls(arr.shape[0], arr.shape[1], frozenset(zip((rr + 1).tolist(), (cc + 1).tolist())))

    def to_array(self) -> np.ndarray:
        """Dense ``uint8`` array; ``a[r-1, c-1]`` holds entry ``(r, c)``."""
        a = np.zeros((self.m, self.n), dtype=np.uint8)
        if self.ones:
            idx = np.array(sorted(self.ones), dtype=np.int64) - 1
            a[idx[:, 0], idx[:, 1]] = 1
        return a

    def __contains__(self, cell) -> bool:
        return cell in self.ones


@dataclass(frozen=True)
class Bicluster:
    rows: frozenset[int]
    cols: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "rows", frozenset(self.rows))
        object.__setattr__(self, "cols", frozenset(self.cols))
        if not self.rows or not self.cols:
            raise ValidationError("biclusters must have at least one row and one column")

    @property
    def area(self) -> int:
        return len(self.rows) * len(self.cols)


@dataclass(frozen=True)
class Biclustering:
    clusters: tuple[Bicluster, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "clusters", tuple(self.clusters))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Iterable[int], Iterable[int]]]) -> "Biclustering":
        return cls(tuple(Bicluster(frozenset(r), frozenset(c)) for r, c in pairs))

    @property
    def k(self) -> int:
        return len(self.clusters)

    def __len__(self) -> int:
        return len(self.clusters)

    def __iter__(self):
        return iter(self.clusters)

    def __getitem__(self, i: int) -> Bicluster:
        return self.clusters[i]

    def check_bounds(self, m: int, n: int) -> None:
        for i, cl in enumerate(self.clusters):
            bad_r = [r for r in cl.rows if not 1 <= r <= m]
            bad_c = [c for c in cl.cols if not 1 <= c <= n]
            if bad_r:
                raise ValidationError(f"cluster {i}: row index {min(bad_r)} outside [1, {m}]")
            if bad_c:
                raise ValidationError(f"cluster {i}: column index {min(bad_c)} outside [1, {n}]")


@dataclass(frozen=True)
class Block:
    axis: str
    members: tuple[int, ...]
    signature: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class BlockDecomposition:
    row_blocks: tuple[Block, ...]
    col_blocks: tuple[Block, ...]
    m: int
    n: int
    k: int

    @property
    def s(self) -> int:
        return len(self.row_blocks)

    @property
    def t(self) -> int:
        return len(self.col_blocks)

    def blocks(self, axis: str) -> tuple[Block, ...]:
        return self.row_blocks if axis == ROW else self.col_blocks

    def membership(self, axis: str) -> np.ndarray:
        """Boolean ``(#blocks, k)`` matrix: block ``b`` lies in cluster ``i``."""
        blocks = self.blocks(axis)
        out = np.zeros((len(blocks), self.k), dtype=np.bool_)
        for b, blk in enumerate(blocks):
            for i in blk.signature:
                out[b, i] = True
        return out

    def sizes(self, axis: str) -> np.ndarray:
        return np.array([len(b) for b in self.blocks(axis)], dtype=np.int64)

    def block_of(self, axis: str) -> dict[int, int]:
        return {x: b for b, blk in enumerate(self.blocks(axis)) for x in blk.members}

    def unclustered_block(self, axis: str) -> int | None:
        for b, blk in enumerate(self.blocks(axis)):
            if not blk.signature:
                return b
        return None


def _axis_blocks(axis: str, size: int, sets: list[frozenset[int]]) -> tuple[Block, ...]:
    groups: dict[frozenset[int], list[int]] = {}
    for x in range(1, size + 1):
        sig = frozenset(i for i, s in enumerate(sets) if x in s)
        groups.setdefault(sig, []).append(x)
    # dicts keep insertion order and x ascends, so blocks come out sorted by smallest member
    return tuple(Block(axis, tuple(mem), sig) for sig, mem in groups.items())


def compute_blocks(bc: Biclustering, m: int, n: int) -> BlockDecomposition:
    """Group rows (columns) with identical cluster membership into blocks."""
    bc.check_bounds(m, n)
    rows = _axis_blocks(ROW, m, [c.rows for c in bc])
    cols = _axis_blocks(COL, n, [c.cols for c in bc])
    return BlockDecomposition(rows, cols, m, n, bc.k)


def importance(block: Block, bc: Biclustering) -> int:
    return sum(bc[i].area for i in block.signature)


def importance_order(blocks: Sequence[Block], bc: Biclustering) -> list[int]:
    """Block indices by descending importance; ties by smallest member."""
    return sorted(range(len(blocks)), key=lambda b: (-importance(blocks[b], bc), blocks[b].members[0]))


def expand(sigma: Sequence[int], blocks: Sequence[Block]) -> tuple[int, ...]:
    """Turn a block order into an element permutation.

    Returns ``pi`` with ``pi[x - 1]`` the 1-based visual position of element ``x``.
    Members of a block keep ascending index order.
    """
    if sorted(sigma) != list(range(len(blocks))):
        raise ValidationError(f"block order {list(sigma)} is not a permutation of {len(blocks)} blocks")
    order = [x for b in sigma for x in sorted(blocks[b].members)]
    return order_to_perm(order)


def order_to_perm(order: Sequence[int]) -> tuple[int, ...]:
    pi = [0] * len(order)
    for pos, x in enumerate(order, start=1):
        pi[x - 1] = pos
    return tuple(pi)


def perm_to_order(pi: Sequence[int]) -> list[int]:
    order = [0] * len(pi)
    for x, pos in enumerate(pi, start=1):
        order[pos - 1] = x
    return order


def _check_perm(pi: Sequence[int], size: int, what: str) -> None:
    if len(pi) != size or sorted(pi) != list(range(1, size + 1)):
        raise ValidationError(f"{what} is not a bijection on [1, {size}]")


@dataclass(frozen=True)
class Layout:
    """Block orders plus the element permutations they induce.

    ``pi_r[r - 1]`` is the visual row (1-based) of original row ``r``.
    """

    sigma_r: tuple[int, ...]
    sigma_c: tuple[int, ...]
    pi_r: tuple[int, ...]
    pi_c: tuple[int, ...]
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def from_blocks(cls, sigma_r, sigma_c, decomp: BlockDecomposition, **meta) -> "Layout":
        sigma_r, sigma_c = tuple(int(b) for b in sigma_r), tuple(int(b) for b in sigma_c)
        return cls(sigma_r, sigma_c, expand(sigma_r, decomp.row_blocks), expand(sigma_c, decomp.col_blocks), meta)

    @classmethod
    def identity(cls, decomp: BlockDecomposition) -> "Layout":
        return cls.from_blocks(range(decomp.s), range(decomp.t), decomp)

    def validate(self, decomp: BlockDecomposition) -> None:
        _check_perm(self.pi_r, decomp.m, "row permutation")
        _check_perm(self.pi_c, decomp.n, "column permutation")
        for axis, pi in ((ROW, self.pi_r), (COL, self.pi_c)):
            for blk in decomp.blocks(axis):
                if len(cons(pi[x - 1] for x in blk.members)) != 1:
                    raise ValidationError(f"{axis} block starting at {blk.members[0]} is not contiguous")

    def is_block_contiguous(self, decomp: BlockDecomposition) -> bool:
        try:
            self.validate(decomp)
        except ValidationError:
            return False
        return True

    @property
    def row_order(self) -> list[int]:
        return perm_to_order(self.pi_r)

    @property
    def col_order(self) -> list[int]:
        return perm_to_order(self.pi_c)
