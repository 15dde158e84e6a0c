import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracle  # noqa: E402
from bicvis import Biclustering, BinaryMatrix, compute_blocks  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


def make(m, n, clusters, ones=()):
    a = BinaryMatrix(m, n, frozenset(ones))
    bc = Biclustering.from_pairs(clusters)
    return a, bc, compute_blocks(bc, m, n)


def perms(layout):
    """Layout -> (row dict, col dict) in the oracle's convention."""
    pr = {r: p for r, p in enumerate(layout.pi_r, start=1)}
    pc = {c: p for c, p in enumerate(layout.pi_c, start=1)}
    return pr, pc


D1_CLUSTERS = [({1, 2}, {1, 2}), ({3, 4}, {2, 3})]
D1_ONES = {(1, 1), (1, 2), (2, 1), (2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (1, 4), (4, 4), (2, 3)}


@pytest.fixture
def d1():
    return make(4, 4, D1_CLUSTERS, D1_ONES)


@pytest.fixture
def rng():
    return random.Random(12345)


def random_case(rng, **kw):
    m, n, clusters, ones = oracle.random_instance(rng, **kw)
    return make(m, n, clusters, ones) + (clusters,)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
