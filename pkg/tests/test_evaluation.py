from fractions import Fraction

import numpy as np
import pytest

import oracle
from conftest import make, perms, random_case
from bicvis import AlgorithmId, Layout, average_random_score, build_report, random_layout, ratio, score_layout
from bicvis.evaluation import aggregate_ratios, default_seeds, rational_json, report_json
from bicvis.objectives import ObjectiveKind

K = ObjectiveKind
A = AlgorithmId


def test_ratio_examples():
    assert ratio(10, K.CONSECUTIVE_CLUSTER_AREA, [10, 20], 5) == Fraction(1, 3)
    assert ratio(20, K.CONSECUTIVE_CLUSTER_AREA, [10, 20], 5) == 1
    assert ratio(5, K.CONSECUTIVE_CLUSTER_AREA, [10, 20], 5) == 0
    assert ratio(7, K.CONSECUTIVE_CLUSTER_AREA, [7, 7], 7) is None


def test_ratio_for_minimised_objectives():
    # best is the smallest value; the winner still scores exactly 1
    assert ratio(4, K.PROXIMITY, [4, 8], 12) == 1
    assert ratio(8, K.PROXIMITY, [4, 8], 12) == Fraction(1, 2)
    assert ratio(16, K.DEMERIT, [4, 16], 12) == Fraction(-1, 2)


def test_average_random_single_block():
    a, bc, d = make(3, 3, [({1, 2, 3}, {1, 2, 3})])
    for kind in K:
        assert average_random_score(kind, d, default_seeds(9)) == score_layout(kind, d, Layout.identity(d))


def test_average_random_requires_five_seeds(d1):
    a, bc, d = d1
    with pytest.raises(ValueError):
        average_random_score(K.PROXIMITY, d, [1, 2, 3])


def test_average_random_d1_matches_reevaluation(d1):
    a, bc, d = d1
    seeds = [1, 2, 3, 4, 5]
    clusters = [(set(cl.rows), set(cl.cols)) for cl in bc]
    # replay the seeded draws outside the library and score them with the oracle
    total = 0
    for s in seeds:
        g = np.random.default_rng(s)
        sr, sc = g.permutation(d.s), g.permutation(d.t)
        rows = [x for b in sr for x in d.row_blocks[b].members]
        cols = [x for b in sc for x in d.col_blocks[b].members]
        total += oracle.area(clusters, oracle.perm_from_order(rows), oracle.perm_from_order(cols))
    got = average_random_score(K.CONSECUTIVE_CLUSTER_AREA, d, seeds)
    assert got == Fraction(total, 5)
    assert got == average_random_score(K.CONSECUTIVE_CLUSTER_AREA, d, seeds)


def test_identity_alone_has_unit_ratios(rng):
    a, bc, d, _ = random_case(rng, k_range=(1, 4))
    rep = build_report(a, bc, [A.IDENTITY], seed=2)
    for kind in K:
        assert rep.ratios[(A.IDENTITY, kind)] in (1, None)


def test_adding_algorithms_keeps_raw_scores(d1):
    a, bc, d = d1
    one = build_report(a, bc, [A.GREEDY_PROXIMITY], seed=0)
    many = build_report(a, bc, [A.GREEDY_PROXIMITY, A.TSP_HEURISTIC, A.RANDOM], seed=0)
    assert one.scores[A.GREEDY_PROXIMITY] == many.scores[A.GREEDY_PROXIMITY]
    assert one.average_random == many.average_random


def test_report_scores_match_oracle(rng):
    for _ in range(10):
        a, bc, d, clusters = random_case(rng, k_range=(1, 4))
        rep = build_report(a, bc, list(A), seed=3)
        for alg in A:
            pr, pc = perms(rep.layouts[alg])
            s = rep.scores[alg]
            assert s[K.PROXIMITY] == oracle.prox(clusters, pr, pc)
            assert s[K.CONSECUTIVE_CLUSTER_AREA] == oracle.area(clusters, pr, pc)
            assert s[K.UNINTERRUPTED_AREA] == oracle.unint(clusters, a.m, a.n, pr, pc)
            assert s[K.DEMERIT] == oracle.demerit(clusters, a.m, a.n, pr, pc)
        for kind in K:
            best = [alg for alg in A if rep.scores[alg][kind] == (min if kind.direction.value == "min" else max)(
                rep.scores[x][kind] for x in A)]
            for alg in best:
                assert rep.ratios[(alg, kind)] in (1, None)
            if kind.better(rep.scores[best[0]][kind], rep.average_random[kind]):
                assert all(rep.ratios[(alg, kind)] <= 1 for alg in A)


def test_report_is_deterministic(d1):
    a, bc, d = d1
    r1 = report_json(build_report(a, bc, list(A), seed=5), {"name": "d1"})
    r2 = report_json(build_report(a, bc, list(A), seed=5), {"name": "d1"})
    assert r1 == r2
    assert list(r1)[:6] == ["instance", "algorithms", "scores", "averageRandomScore", "ratios", "suggestions"]


def test_random_seed_changes_layout(d1):
    a, bc, d = d1
    draws = {(random_layout(d, s).sigma_r, random_layout(d, s).sigma_c) for s in range(20)}
    assert len(draws) > 1


def test_rational_json():
    assert rational_json(Fraction(1, 3)) == {"exact": "1/3", "value": 1 / 3}
    assert rational_json(None) is None


def test_aggregate(d1):
    a, bc, d = d1
    reps = [build_report(a, bc, [A.IDENTITY, A.RANDOM], seed=s) for s in (0, 1)]
    agg = aggregate_ratios(reps)
    for key, v in agg.items():
        vals = [r.ratios[key] for r in reps if r.ratios[key] is not None]
        assert v["count"] == len(vals)
        if vals:
            assert v["mean"] == sum(vals) / len(vals)
            assert v["variance"] >= 0


def test_build_report_needs_algorithms(d1):
    a, bc, d = d1
    with pytest.raises(ValueError):
        build_report(a, bc, [])


def test_ratio_above_one_when_every_algorithm_trails_random():
    # the bound r <= 1 needs the best algorithm to beat the random average
    assert ratio(2, K.CONSECUTIVE_CLUSTER_AREA, [2, 4], 5) == 3
