"""Scoring algorithms against each other, normalised by random layouts."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .layout import AlgorithmId, random_layout, run_algorithm
from .model import Biclustering, BinaryMatrix, BlockDecomposition, Layout, compute_blocks
from .objectives import BlockArrays, Direction, ObjectiveKind, score_layout
from .tsp import TspConfig

N_RANDOM = 5
ALL_KINDS = tuple(ObjectiveKind)


def default_seeds(seed: int = 0) -> list[int]:
    return [seed + i for i in range(N_RANDOM)]


def average_random_score(kind: ObjectiveKind, decomp: BlockDecomposition, seeds: Sequence[int],
                         arrays: BlockArrays | None = None) -> Fraction:
    if len(seeds) != N_RANDOM:
        raise ValueError(f"expected {N_RANDOM} seeds, got {len(seeds)}")
    arrays = arrays or BlockArrays.from_decomp(decomp)
    total = sum(score_layout(kind, decomp, random_layout(decomp, s), arrays) for s in seeds)
    return Fraction(total, N_RANDOM)


def best_score(kind: ObjectiveKind, values):
    return min(values) if kind.direction is Direction.MINIMIZE else max(values)


def ratio(f_a, kind: ObjectiveKind, all_scores, avg_random) -> Fraction | None:
    """``(f(A) - avg) / (best - avg)``; ``None`` when the denominator vanishes.

    ``best`` is the minimum over algorithms for minimised objectives and the
    maximum otherwise, so the best algorithm always gets exactly 1.
    """
    den = Fraction(best_score(kind, all_scores)) - Fraction(avg_random)
    if den == 0:
        return None
    return (Fraction(f_a) - Fraction(avg_random)) / den


@dataclass
class ScoreReport:
    algorithms: list[AlgorithmId]
    layouts: dict[AlgorithmId, Layout]
    scores: dict[AlgorithmId, dict[ObjectiveKind, int]]
    average_random: dict[ObjectiveKind, Fraction]
    ratios: dict[tuple[AlgorithmId, ObjectiveKind], Fraction | None]
    seeds: list[int]
    kinds: tuple[ObjectiveKind, ...] = ALL_KINDS
    extra: dict = field(default_factory=dict)


def build_report(a: BinaryMatrix, bc: Biclustering, algorithms: Sequence[AlgorithmId],
                 seeds: Sequence[int] | None = None, *, seed: int = 0, tsp_cfg: TspConfig | None = None,
                 demerit_mode: str = "verbatim", kinds: Sequence[ObjectiveKind] = ALL_KINDS,
                 decomp: BlockDecomposition | None = None) -> ScoreReport:
    if not algorithms:
        raise ValueError("at least one algorithm is required")
    seeds = list(default_seeds(seed) if seeds is None else seeds)
    decomp = decomp or compute_blocks(bc, a.m, a.n)
    arrays = BlockArrays.from_decomp(decomp)
    layouts, scores = {}, {}
    for alg in algorithms:
        lay = run_algorithm(alg, decomp, bc, seed=seed, tsp_cfg=tsp_cfg, demerit_mode=demerit_mode, arrays=arrays)
        layouts[alg] = lay
        scores[alg] = {kind: score_layout(kind, decomp, lay, arrays) for kind in kinds}
    avg = {kind: average_random_score(kind, decomp, seeds, arrays) for kind in kinds}
    ratios = {}
    for kind in kinds:
        column = [scores[alg][kind] for alg in algorithms]
        for alg in algorithms:
            ratios[(alg, kind)] = ratio(scores[alg][kind], kind, column, avg[kind])
    return ScoreReport(list(algorithms), layouts, scores, avg, ratios, seeds, tuple(kinds))


def rational_json(x: Fraction | None):
    if x is None:
        return None
    x = Fraction(x)
    return {"exact": f"{x.numerator}/{x.denominator}", "value": float(x)}


def layout_json(lay: Layout) -> dict:
    return {
        "sigmaR": list(lay.sigma_r),
        "sigmaC": list(lay.sigma_c),
        "piR": list(lay.pi_r),
        "piC": list(lay.pi_c),
    }


def report_json(report: ScoreReport, instance: dict, suggestions: dict | None = None) -> dict:
    """Report as an ordered JSON-ready dict with the documented key order."""
    return {
        "instance": instance,
        "algorithms": [{"id": alg.value, "layout": layout_json(report.layouts[alg])} for alg in report.algorithms],
        "scores": {alg.value: {k.value: report.scores[alg][k] for k in report.kinds} for alg in report.algorithms},
        "averageRandomScore": {k.value: rational_json(report.average_random[k]) for k in report.kinds},
        "ratios": {alg.value: {k.value: rational_json(report.ratios[(alg, k)]) for k in report.kinds}
                   for alg in report.algorithms},
        "suggestions": suggestions,
        "seeds": list(report.seeds),
    }


def aggregate_ratios(reports: Sequence[ScoreReport]) -> dict[tuple[AlgorithmId, ObjectiveKind], dict]:
    """Mean and population variance of each ratio across instances (undefined ratios skipped)."""
    out: dict[tuple[AlgorithmId, ObjectiveKind], dict] = {}
    keys = []
    for rep in reports:
        for key in rep.ratios:
            if key not in keys:
                keys.append(key)
    for key in keys:
        vals = [rep.ratios[key] for rep in reports if rep.ratios.get(key) is not None]
        if not vals:
            out[key] = {"mean": None, "variance": None, "count": 0}
            continue
        mean = sum(vals, Fraction(0)) / len(vals)
        var = sum(((v - mean) ** 2 for v in vals), Fraction(0)) / len(vals)
        out[key] = {"mean": mean, "variance": var, "count": len(vals)}
    return out
