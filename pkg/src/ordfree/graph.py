"""Graph and bipartite-graph values, the edge-list text format, and the
fixed-size induced-subgraph scans used during preprocessing."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

from .patterns import BiPattern, TriPattern, is_order_invariant


class ParseError(ValueError):
    """Malformed graph or pattern text. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _frozen(adj: np.ndarray) -> np.ndarray:
    adj = np.array(adj, dtype=bool)
    adj.setflags(write=False)
    return adj


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj`` is a read-only symmetric boolean matrix with an empty diagonal.
    """

    adj: np.ndarray

    def __post_init__(self):
        adj = _frozen(self.adj)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if adj.diagonal().any():
            raise ValueError("self-loops are not allowed")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        object.__setattr__(self, "adj", adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u, v] = adj[v, u] = True
        return cls(adj)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(~np.eye(n, dtype=bool))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @property
    def edge_count(self) -> int:
        return int(self.adj.sum()) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def neighbors(self, v: int) -> set[int]:
        return set(np.flatnonzero(self.adj[v]).tolist())

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adj, 1))
        return list(zip(us.tolist(), vs.tolist()))

    def __eq__(self, other):
        return isinstance(other, Graph) and np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash((self.n, np.packbits(self.adj).tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count})"


@dataclass(frozen=True, eq=False)
class BipartiteGraph:
    """Bipartite graph with sides ``U = 0..p-1`` and ``V = 0..q-1``.

    The two sides use independent id spaces; ``adj[u, v]`` is the edge
    relation, a ``p x q`` boolean matrix.
    """

    adj: np.ndarray

    def __post_init__(self):
        adj = _frozen(self.adj)
        if adj.ndim != 2:
            raise ValueError("bipartite adjacency must be a p x q matrix")
        object.__setattr__(self, "adj", adj)

    @classmethod
    def from_edges(cls, p: int, q: int, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        adj = np.zeros((p, q), dtype=bool)
        for u, v in edges:
            adj[u, v] = True
        return cls(adj)

    @classmethod
    def even_cycle(cls, k: int) -> "BipartiteGraph":
        """Cycle u0 v0 u1 v1 ... on ``2k`` vertices (``k >= 2``)."""
        return cls.from_edges(k, k, [(i, i) for i in range(k)] + [((i + 1) % k, i) for i in range(k)])

    @property
    def u_count(self) -> int:
        return self.adj.shape[0]

    @property
    def v_count(self) -> int:
        return self.adj.shape[1]

    @property
    def edge_count(self) -> int:
        return int(self.adj.sum())

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(self.adj)
        return list(zip(us.tolist(), vs.tolist()))

    def transpose(self) -> "BipartiteGraph":
        """Swap the roles of the two sides."""
        return BipartiteGraph(self.adj.T)

    def __eq__(self, other):
        return isinstance(other, BipartiteGraph) and np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash((self.adj.shape, np.packbits(self.adj).tobytes()))

    def __repr__(self):
        return f"BipartiteGraph(p={self.u_count}, q={self.v_count}, m={self.edge_count})"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _ints(line: str, count: int, lineno: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise ParseError(f"expected {count} integers, got {line!r}", lineno)
    try:
        return [int(tok) for tok in parts]
    except ValueError:
        raise ParseError(f"non-integer token in {line!r}", lineno) from None


def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` edge-line format.

    Duplicate edge lines collapse to one edge. The declared edge count is
    read but not enforced.
    """
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("missing 'n m' header") from None
    n, m = _ints(header, 2, lineno)
    if n < 0 or m < 0:
        raise ParseError("negative size in header", lineno)
    adj = np.zeros((n, n), dtype=bool)
    for lineno, line in lines:
        u, v = _ints(line, 2, lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range 0..{n - 1}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        adj[u, v] = adj[v, u] = True
    return Graph(adj)


def parse_bigraph(text: str) -> BipartiteGraph:
    """Parse the ``p q m`` header + ``u v`` (U id, V id) edge-line format."""
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("missing 'p q m' header") from None
    p, q, m = _ints(header, 3, lineno)
    if min(p, q, m) < 0:
        raise ParseError("negative size in header", lineno)
    adj = np.zeros((p, q), dtype=bool)
    for lineno, line in lines:
        u, v = _ints(line, 2, lineno)
        if not 0 <= u < p:
            raise ParseError(f"U id {u} out of range 0..{p - 1}", lineno)
        if not 0 <= v < q:
            raise ParseError(f"V id {v} out of range 0..{q - 1}", lineno)
        adj[u, v] = True
    return BipartiteGraph(adj)


def format_graph(g: Graph) -> str:
    edges = g.edges()
    return "\n".join([f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


def format_bigraph(h: BipartiteGraph) -> str:
    edges = h.edges()
    head = f"{h.u_count} {h.v_count} {len(edges)}"
    return "\n".join([head] + [f"{u} {v}" for u, v in edges]) + "\n"


def complement(g: Graph) -> Graph:
    return Graph(~g.adj & ~np.eye(g.n, dtype=bool))


def find_triangle(g: Graph) -> Optional[tuple[int, int, int]]:
    """Lexicographically first triangle ``(a, b, c)`` with ``a < b < c``."""
    a = g.adj
    for x, y in zip(*np.nonzero(np.triu(a, 1))):
        common = np.flatnonzero(a[x] & a[y])
        common = common[common > y]
        if common.size:
            return int(x), int(y), int(common[0])
    return None


def find_independent_triple(g: Graph) -> Optional[tuple[int, int, int]]:
    return find_triangle(complement(g))


def find_order_invariant_occurrence(h, pat):
    """Search for an induced copy of an order-invariant pattern.

    Since every slot assignment of an order-invariant pattern induces the
    same edge set, any vertex set of the right size either is an occurrence
    or is not. Returns a vertex triple for a ``TriPattern`` and a pair
    ``(u_vertices, v_vertices)`` for a ``BiPattern``; ``None`` when absent.
    """
    if not is_order_invariant(pat):
        raise ValueError(f"pattern {pat} is not order-invariant")
    if isinstance(pat, TriPattern):
        if not isinstance(h, Graph):
            raise TypeError("TriPattern needs a Graph host")
        if pat.code == 0:
            return find_independent_triple(h)
        return find_triangle(h)
    if not isinstance(pat, BiPattern) or not isinstance(h, BipartiteGraph):
        raise TypeError("BiPattern needs a BipartiteGraph host")
    want = pat.matrix()
    for us in combinations(range(h.u_count), pat.u_arity):
        rows = h.adj[list(us)]
        for vs in combinations(range(h.v_count), pat.v_arity):
            if np.array_equal(rows[:, list(vs)], want):
                return us, vs
    return None
