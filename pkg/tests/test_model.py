import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicvis import Biclustering, BinaryMatrix, Block, Layout, ValidationError, compute_blocks, cons, expand, importance
from bicvis.model import ROW, Bicluster, importance_order, perm_to_order


@pytest.mark.parametrize("xs, expected", [
    ({1, 2, 5}, [[1, 2], [5]]),
    (set(), []),
    ({3}, [[3]]),
    ({4, 3, 9, 10, 11, 1}, [[1], [3, 4], [9, 10, 11]]),
])
def test_cons_examples(xs, expected):
    assert cons(xs) == expected


@given(st.sets(st.integers(1, 60), max_size=30))
def test_cons_partitions_input(xs):
    runs = cons(xs)
    flat = [x for r in runs for x in r]
    assert sorted(flat) == sorted(xs) and len(flat) == len(set(flat))
    for r in runs:
        assert r == list(range(r[0], r[-1] + 1))
    for left, right in zip(runs, runs[1:]):
        assert right[0] > left[-1] + 1
    is_interval = bool(xs) and max(xs) - min(xs) + 1 == len(xs)
    assert (len(runs) == 1) == is_interval


def test_blocks_overlapping_rows():
    bc = Biclustering.from_pairs([({1, 2}, {1}), ({2, 3}, {1})])
    d = compute_blocks(bc, 3, 1)
    assert [(b.members, set(b.signature)) for b in d.row_blocks] == [((1,), {0}), ((2,), {0, 1}), ((3,), {1})]


def test_blocks_no_clusters():
    d = compute_blocks(Biclustering(), 4, 2)
    assert [b.members for b in d.row_blocks] == [(1, 2, 3, 4)]
    assert d.row_blocks[0].signature == frozenset()


def test_blocks_disjoint_with_unclustered():
    d = compute_blocks(Biclustering.from_pairs([({1}, {1}), ({2}, {1})]), 3, 1)
    assert [b.members for b in d.row_blocks] == [(1,), (2,), (3,)]
    assert d.unclustered_block(ROW) == 2


def test_blocks_reject_out_of_bounds():
    with pytest.raises(ValidationError):
        compute_blocks(Biclustering.from_pairs([({5}, {1})]), 3, 3)


def test_empty_cluster_rejected():
    with pytest.raises(ValidationError):
        Bicluster(frozenset(), frozenset({1}))


def test_matrix_bounds():
    with pytest.raises(ValidationError):
        BinaryMatrix(2, 2, frozenset({(3, 1)}))
    a = BinaryMatrix.from_dense([[1, 0], [0, 1]])
    assert a.ones == {(1, 1), (2, 2)}
    assert a.to_array().tolist() == [[1, 0], [0, 1]]


def test_importance():
    bc = Biclustering.from_pairs([({1, 2}, {1, 2}), ({2, 3, 4}, {3, 4})])
    assert importance(Block(ROW, (1, 2), frozenset({0})), bc) == 4
    assert importance(Block(ROW, (5,), frozenset()), bc) == 0
    assert importance(Block(ROW, (2,), frozenset({0, 1})), bc) == 10


def test_importance_order_ties_by_smallest_member():
    bc = Biclustering.from_pairs([({1}, {1, 2}), ({3}, {1, 2})])
    d = compute_blocks(bc, 3, 2)
    assert importance_order(d.row_blocks, bc) == [0, 2, 1]


def test_expand_examples():
    blocks = [Block(ROW, (3, 4), frozenset()), Block(ROW, (1, 2), frozenset({0}))]
    assert expand([1, 0], blocks) == (1, 2, 3, 4)
    assert expand([0], [Block(ROW, (1, 2, 3), frozenset())]) == (1, 2, 3)
    swap = expand([1, 0], [Block(ROW, (1,), frozenset()), Block(ROW, (2,), frozenset({0}))])
    assert swap[1] == 1 and swap[0] == 2
    with pytest.raises(ValidationError):
        expand([0, 0], blocks)


@st.composite
def clusterings(draw):
    m = draw(st.integers(1, 8))
    n = draw(st.integers(1, 8))
    k = draw(st.integers(0, 4))
    pairs = [(draw(st.sets(st.integers(1, m), min_size=1)), draw(st.sets(st.integers(1, n), min_size=1)))
             for _ in range(k)]
    return m, n, Biclustering.from_pairs(pairs)


@given(clusterings(), st.randoms(use_true_random=False))
def test_blocks_and_expand_invariants(case, rnd):
    m, n, bc = case
    d = compute_blocks(bc, m, n)
    assert sum(len(b) for b in d.row_blocks) == m and sum(len(b) for b in d.col_blocks) == n
    assert len({b.signature for b in d.row_blocks}) == d.s
    assert len({b.signature for b in d.col_blocks}) == d.t
    for b in d.row_blocks:
        for r in b.members:
            assert frozenset(i for i, cl in enumerate(bc) if r in cl.rows) == b.signature
    sr, sc = list(range(d.s)), list(range(d.t))
    rnd.shuffle(sr)
    rnd.shuffle(sc)
    lay = Layout.from_blocks(sr, sc, d)
    lay.validate(d)
    for b in d.row_blocks:
        assert len(cons(lay.pi_r[x - 1] for x in b.members)) == 1
    # every cluster is a union of whole blocks
    for cl in bc:
        covered = set().union(*(set(b.members) for b in d.row_blocks if b.members[0] in cl.rows))
        assert covered == set(cl.rows)
    assert sorted(perm_to_order(lay.pi_r)) == list(range(1, m + 1))


def test_layout_validate_rejects_split_block():
    bc = Biclustering.from_pairs([({1, 2}, {1})])
    d = compute_blocks(bc, 3, 1)
    lay = Layout((0, 1), (0,), (1, 3, 2), (1,))
    with pytest.raises(ValidationError):
        lay.validate(d)
    assert not lay.is_block_contiguous(d)
