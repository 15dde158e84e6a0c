"""Small symmetric TSP solver: nearest-neighbour start plus 2-opt."""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import kernels
from .model import ValidationError


@dataclass(frozen=True)
class TspConfig:
    max_passes: int = 50
    time_limit_ms: int = 10_000
    seed: int = 0
    # extra 2-opt runs from seeded random tours; the best tour overall wins
    restarts: int = 4


def tour_cost(w: np.ndarray, tour) -> int:
    tour = np.asarray(tour)
    if len(tour) < 2:
        return 0
    return int(w[tour, np.roll(tour, -1)].sum())


def _validate(w) -> np.ndarray:
    w = np.asarray(w)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValidationError(f"weight matrix must be square, got shape {w.shape}")
    if not np.issubdtype(w.dtype, np.integer):
        if not np.all(np.equal(np.mod(w, 1), 0)):
            raise ValidationError("weights must be integers")
    w = w.astype(np.int64)
    if not np.array_equal(w, w.T):
        raise ValidationError("weight matrix must be symmetric")
    if np.any(np.diag(w) != 0):
        raise ValidationError("weight matrix must have a zero diagonal")
    if np.any(w < 0):
        raise ValidationError("weights must be non-negative")
    return np.ascontiguousarray(w)


def nearest_neighbor_tour(w: np.ndarray) -> np.ndarray:
    n = w.shape[0]
    start = int(np.argmin(w.sum(axis=1)))
    seen = np.zeros(n, dtype=bool)
    tour = [start]
    seen[start] = True
    for _ in range(n - 1):
        row = np.where(seen, np.iinfo(np.int64).max, w[tour[-1]])
        nxt = int(np.argmin(row))
        tour.append(nxt)
        seen[nxt] = True
    return np.array(tour, dtype=np.int64)


def two_opt(w: np.ndarray, tour: np.ndarray, max_passes: int, deadline: float) -> np.ndarray:
    tour = tour.copy()
    for _ in range(max_passes):
        if kernels.two_opt_pass(w, tour) == 0 or time.monotonic() > deadline:
            break
    return tour


def solve_tsp(weights, cfg: TspConfig = TspConfig()) -> list[int]:
    """Return a low-cost Hamiltonian cycle as a vertex list (0-based).

    Deterministic for a fixed ``cfg.seed``. When the time limit is hit the best
    tour found so far is returned.
    """
    w = _validate(weights)
    n = w.shape[0]
    if n <= 3:
        return list(range(n))
    deadline = time.monotonic() + cfg.time_limit_ms / 1000.0
    best = two_opt(w, nearest_neighbor_tour(w), cfg.max_passes, deadline)
    best_cost = tour_cost(w, best)
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.restarts):
        if time.monotonic() > deadline:
            break
        cand = two_opt(w, rng.permutation(n).astype(np.int64), cfg.max_passes, deadline)
        cost = tour_cost(w, cand)
        if cost < best_cost:
            best, best_cost = cand, cost
    return [int(v) for v in best]
