import os
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from bfscensus.atlas import enumerate_atlas  # noqa: E402
from bfscensus.graph import Graph, parse_edgelist  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def load_fixture(name: str) -> Graph:
    return parse_edgelist((FIXTURES / name).read_text())


@pytest.fixture(scope="session")
def atlas7():
    """Connected corpora for orders 3..7, keyed by order."""
    return {c.order: c for c in enumerate_atlas(7)}


@pytest.fixture(scope="session")
def atlas8():
    return {c.order: c for c in enumerate_atlas(8)}


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    rows, cols = np.triu_indices(n, 1)
    keep = rng.random(rows.size) < p
    return Graph.from_edges(n, zip(rows[keep].tolist(), cols[keep].tolist()))


def random_connected_graph(rng: np.random.Generator, n: int, extra: int) -> Graph:
    """Random spanning tree plus up to ``extra`` random chords."""
    edges = {(int(rng.integers(i)), i) for i in range(1, n)}
    for _ in range(extra):
        u, v = (int(x) for x in rng.integers(n, size=2))
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, edges)


@st.composite
def graphs(draw, min_nodes=0, max_nodes=8):
    n = draw(st.integers(min_nodes, max_nodes))
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, b in zip(pairs, bits) if b])


@st.composite
def graphs_with_permutation(draw, min_nodes=1, max_nodes=8):
    g = draw(graphs(min_nodes, max_nodes))
    perm = draw(st.permutations(list(range(g.node_count))))
    return g, perm
