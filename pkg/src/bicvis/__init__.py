"""Layouts, objective scores and renderings for overlapping biclusterings."""
from .evaluation import ScoreReport, average_random_score, build_report, ratio
from .layout import (
    AlgorithmId, greedy_add, greedy_demerit_axis, greedy_layout, random_layout, run_algorithm, tsp_layout,
)
from .model import (
    Bicluster, Biclustering, BinaryMatrix, Block, BlockDecomposition, Layout, ValidationError, compute_blocks,
    cons, expand, importance,
)
from .objectives import (
    ObjectiveKind, demerit_perm, demerit_triple, evaluate, f_area, f_demerit, f_prox, f_unint, nonzero_block,
    pair_weight, partial_score, score_area, score_layout, score_prox,
)
from .postprocess import Suggestions, density, similarity, suggest, zone_layout
from .render import Palette, categorize, render_image
from .tsp import TspConfig, solve_tsp

__version__ = "0.1.0"
