"""Shared fixtures: named small graphs and hypothesis strategies."""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ordfree import BipartiteGraph, BiPattern, Graph, PatternSet
from ordfree.patterns import SUPPORTED_BI_SHAPES

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# Lines recorded by the acceptance tests, echoed in the terminal summary.
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)


def claw() -> Graph:
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


def net() -> Graph:
    """Triangle 0-1-2 with a pendant vertex on each corner."""
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])


def overlapping_neighbourhoods() -> BipartiteGraph:
    """U = {a,b,c}; the three V-vertices see {a,b}, {b,c} and {a,c}."""
    return BipartiteGraph.from_edges(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (0, 2), (2, 2)])


def bipartite_path(vertices: int) -> BipartiteGraph:
    """Path with ``vertices`` vertices, alternating U, V, U, ..."""
    p, q = (vertices + 1) // 2, vertices // 2
    edges = [(i // 2, i // 2) if i % 2 == 0 else ((i + 1) // 2, i // 2) for i in range(vertices - 1)]
    return BipartiteGraph.from_edges(p, q, edges)


def all_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for k, e in enumerate(pairs) if bits >> k & 1])


def all_bigraphs(p: int, q: int):
    cells = [(i, j) for i in range(p) for j in range(q)]
    for bits in range(1 << len(cells)):
        yield BipartiteGraph.from_edges(p, q, [c for k, c in enumerate(cells) if bits >> k & 1])


def all_bi_patterns() -> list[BiPattern]:
    out = []
    for l, r in SUPPORTED_BI_SHAPES:
        cells = [(i, j) for i in range(1, l + 1) for j in range(1, r + 1)]
        for bits in range(1 << len(cells)):
            out.append(BiPattern(l, r, frozenset(c for k, c in enumerate(cells) if bits >> k & 1)))
    return out


def random_graph(rng: np.random.Generator, n: int, density: float) -> Graph:
    upper = np.triu(rng.random((n, n)) < density, 1)
    return Graph(upper | upper.T)


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 7) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, b in zip(pairs, bits) if b])


@st.composite
def bigraphs(draw, max_side: int = 4) -> BipartiteGraph:
    p = draw(st.integers(1, max_side))
    q = draw(st.integers(1, max_side))
    bits = draw(st.lists(st.booleans(), min_size=p * q, max_size=p * q))
    return BipartiteGraph(np.array(bits, dtype=bool).reshape(p, q))


def tri_sets(nonempty: bool = False):
    return st.integers(1 if nonempty else 0, 255).map(PatternSet.from_tri_mask)


def bi_sets(max_size: int = 3):
    return st.lists(st.sampled_from(all_bi_patterns()), min_size=1, max_size=max_size).map(
        lambda ps: PatternSet("bi", tuple(ps))
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20241019)
