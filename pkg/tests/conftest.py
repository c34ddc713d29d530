import os
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from socialsphere import Graph  # noqa: E402

import oracles  # noqa: E402

GRQC_ENV = "SSM_GRQC_PATH"


def graph_of(n, edges):
    return Graph.from_edges([(u, v, w) for (u, v), w in edges.items()], n=n)


@pytest.fixture
def random_graphs():
    """``(n, edges, Graph)`` triples from a fixed RNG."""
    def make(count, n_range=(5, 20), p_range=(0.1, 0.35), weights=(0.25, 0.5, 1.0), seed=0):
        rng = random.Random(seed)
        out = []
        for _ in range(count):
            n = rng.randint(*n_range)
            edges = oracles.random_edges(rng, n, rng.uniform(*p_range), weights)
            out.append((n, edges, graph_of(n, edges)))
        return out
    return make


@pytest.fixture
def grqc_path():
    p = os.environ.get(GRQC_ENV)
    if not p or not Path(p).exists():
        pytest.skip(f"GR-QC edge list not available (set {GRQC_ENV})")
    return p


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL/SKIP line; they are echoed in the terminal summary."""
    def emit(status, number, text):
        line = f"{status} [{number}] {text}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
