"""The constraint digraph on ordered vertex pairs.

A node ``(x, y)`` stands for the statement "x precedes y". An arc
``(x, y) -> (x', y')`` records that, because of some pattern occurrence,
choosing ``x < y`` forces ``x' < y'``. The arc set is closed under the dual
map ``(x, y) <-> (y, x)`` with reversed direction, the same skew symmetry
as a 2-SAT implication graph.

Node ids: for a graph on ``n`` vertices, pair ``(x, y)`` has id ``x*n + y``
(diagonal ids exist in the id space but are never valid nodes). For a
bipartite graph with sides of size ``p`` and ``q``, U-pairs use ``x*p + y``
and V-pairs use ``p*p + x*q + y``; bipartite vertex labels are
``(side, id)`` tuples with side 0 for U and 1 for V.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .graph import BipartiteGraph, Graph
from .patterns import PatternSet, is_order_invariant

# Elements per chunk in the vectorised triple scan; bounds peak memory.
_CHUNK_CELLS = 4_000_000


@dataclass(frozen=True, eq=False)
class ConstraintDigraph:
    """Immutable constraint digraph with CSR adjacency over pair ids.

    ``sizes`` is ``(n,)`` for a graph and ``(p, q)`` for a bipartite graph.
    """

    sizes: tuple
    arcs: csr_matrix = field(repr=False)

    @property
    def bipartite(self) -> bool:
        return len(self.sizes) == 2

    @cached_property
    def offsets(self) -> tuple:
        out, acc = [], 0
        for s in self.sizes:
            out.append(acc)
            acc += s * s
        return tuple(out)

    @property
    def num_slots(self) -> int:
        return sum(s * s for s in self.sizes)

    @cached_property
    def _decoded(self):
        side = np.zeros(self.num_slots, dtype=np.int64)
        first = np.zeros(self.num_slots, dtype=np.int64)
        second = np.zeros(self.num_slots, dtype=np.int64)
        for k, (off, s) in enumerate(zip(self.offsets, self.sizes)):
            local = np.arange(s * s)
            side[off : off + s * s] = k
            first[off : off + s * s] = local // s
            second[off : off + s * s] = local % s
        return side, first, second

    @property
    def side(self) -> np.ndarray:
        return self._decoded[0]

    @property
    def first(self) -> np.ndarray:
        return self._decoded[1]

    @property
    def second(self) -> np.ndarray:
        return self._decoded[2]

    @cached_property
    def valid(self) -> np.ndarray:
        """Mask of ids that are real nodes (``first != second``)."""
        return self.first != self.second

    @cached_property
    def dual(self) -> np.ndarray:
        """``dual[node]`` is the id of the reversed pair."""
        side, first, second = self._decoded
        offs = np.asarray(self.offsets)[side]
        sz = np.asarray(self.sizes)[side]
        return offs + second * sz + first

    @property
    def node_count(self) -> int:
        return int(self.valid.sum())

    @property
    def arc_count(self) -> int:
        return int(self.arcs.nnz)

    def node(self, a, b) -> int:
        """Id of the pair ``(a, b)``; bipartite vertices are ``(side, id)``."""
        if self.bipartite:
            (sa, a), (sb, b) = a, b
            if sa != sb:
                raise ValueError("pair vertices must lie on the same side")
            side = sa
        else:
            side = 0
        s = self.sizes[side]
        if a == b or not (0 <= a < s and 0 <= b < s):
            raise ValueError(f"({a},{b}) is not a pair node")
        return self.offsets[side] + a * s + b

    def pair(self, node: int) -> tuple:
        """Vertex labels ``(a, b)`` of a node id."""
        side, a, b = int(self.side[node]), int(self.first[node]), int(self.second[node])
        if self.bipartite:
            return (side, a), (side, b)
        return a, b

    def successors(self, node: int) -> np.ndarray:
        a = self.arcs
        return a.indices[a.indptr[node] : a.indptr[node + 1]]

    @cached_property
    def reversed_arcs(self) -> csr_matrix:
        return self.arcs.T.tocsr()

    def predecessors(self, node: int) -> np.ndarray:
        r = self.reversed_arcs
        return r.indices[r.indptr[node] : r.indptr[node + 1]]

    def has_arc(self, src: int, dst: int) -> bool:
        return bool(np.any(self.successors(src) == dst))

    def arc_list(self) -> list[tuple[int, int]]:
        coo = self.arcs.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return list(zip(coo.row[order].tolist(), coo.col[order].tolist()))

    def format_vertex(self, v) -> str:
        if self.bipartite:
            return f"{'UV'[v[0]]}{v[1]}"
        return str(v)

    def format_pair(self, node: int) -> str:
        a, b = self.pair(node)
        return f"{self.format_vertex(a)},{self.format_vertex(b)}"

    def dump(self) -> str:
        """One arc per line, ``x,y -> z,y``."""
        return "".join(f"{self.format_pair(s)} -> {self.format_pair(d)}\n" for s, d in self.arc_list())


def _from_arrays(sizes: tuple, src: list, dst: list) -> ConstraintDigraph:
    n_slots = sum(s * s for s in sizes)
    if src:
        src_a = np.concatenate(src).astype(np.int64)
        dst_a = np.concatenate(dst).astype(np.int64)
    else:
        src_a = dst_a = np.zeros(0, dtype=np.int64)
    key = np.unique(src_a * max(n_slots, 1) + dst_a)
    rows, cols = np.divmod(key, max(n_slots, 1))
    indptr = np.zeros(n_slots + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=n_slots), out=indptr[1:])
    arcs = csr_matrix(
        (np.ones(key.size, dtype=np.int8), cols.astype(np.int32), indptr), shape=(n_slots, n_slots)
    )
    return ConstraintDigraph(tuple(sizes), arcs)


def _require_constraint_patterns(f: PatternSet, kind: str):
    if f.kind != kind:
        raise ValueError(f"expected a {kind} pattern set, got {f.kind}")
    for p in f:
        if is_order_invariant(p):
            raise ValueError(f"order-invariant pattern {p} must be removed before construction")


def build_tri(h: Graph, f: PatternSet) -> ConstraintDigraph:
    """Constraint digraph of ``h`` for a set of 3-patterns.

    For every ordered triple ``x, y, z`` of distinct vertices that, read as
    ``x < y < z``, induces a member of ``f``, add ``(x,y) -> (z,y)`` and
    ``(y,z) -> (y,x)``.
    """
    _require_constraint_patterns(f, "tri")
    n = h.n
    lut = np.zeros(8, dtype=bool)
    for p in f:
        lut[p.code] = True
    src, dst = [], []
    if not lut.any() or n < 3:
        return _from_arrays((n,), src, dst)
    a = h.adj.astype(np.uint8)
    idx = np.arange(n)
    step = max(1, _CHUNK_CELLS // (n * n))
    for y0 in range(0, n, step):
        ys = idx[y0 : y0 + step]
        k = ys.size
        # code[x, i, z] for y = ys[i]: bit0 xy, bit1 xz, bit2 yz
        code = a[:, ys][:, :, None] + 2 * a[:, None, :] + 4 * a[ys][None, :, :]
        hit = lut[code]
        hit[ys, np.arange(k), :] = False
        hit[:, np.arange(k), ys] = False
        hit[idx, :, idx] = False
        x, i, z = np.nonzero(hit)
        y = ys[i]
        src += [x * n + y, y * n + z]
        dst += [z * n + y, y * n + x]
    return _from_arrays((n,), src, dst)


def _triple_side_arcs(m: np.ndarray, pat_col: np.ndarray, offset: int, src, dst):
    """Arcs from (3,1)-style occurrences: a triple on the row side of ``m``
    plus one witness column. ``pat_col`` is the pattern's 3-vector of
    required adjacencies for slots 1, 2, 3."""
    s = m.shape[0]
    if s < 3 or m.shape[1] == 0:
        return
    ind = [(m == b).astype(np.float64) for b in (False, True)]
    x_req, y_req, z_req = (ind[int(b)] for b in pat_col)
    for y in range(s):
        cnt = (x_req * y_req[y]) @ z_req.T
        hit = cnt > 0
        hit[y, :] = False
        hit[:, y] = False
        np.fill_diagonal(hit, False)
        x, z = np.nonzero(hit)
        src += [offset + x * s + y, offset + y * s + z]
        dst += [offset + z * s + y, offset + y * s + x]


def build_bi(h: BipartiteGraph, f: PatternSet) -> ConstraintDigraph:
    """Constraint digraph of a bipartite graph for shapes (3,1), (1,3), (2,2).

    Same-side triple ``x < y < z`` with a witness on the other side inducing
    a member gives ``(x,y) -> (z,y)`` and ``(y,z) -> (y,x)``. A U-pair
    ``x < y`` with a V-pair ``a < b`` (slots 1', 2') inducing a member gives
    ``(x,y) -> (b,a)`` and ``(a,b) -> (y,x)``.
    """
    _require_constraint_patterns(f, "bi")
    p, q = h.u_count, h.v_count
    a = h.adj
    v_off = p * p
    src, dst = [], []
    for pat in f:
        mat = pat.matrix()
        if pat.shape == (3, 1):
            _triple_side_arcs(a, mat[:, 0], 0, src, dst)
        elif pat.shape == (1, 3):
            _triple_side_arcs(a.T, mat[0, :], v_off, src, dst)
        elif pat.shape == (2, 2):
            if p < 2 or q < 2:
                continue
            (e11, e12), (e21, e22) = mat
            second = (a == e21)[:, :, None] & (a == e22)[:, None, :]
            off_diag = ~np.eye(q, dtype=bool)
            for x in range(p):
                first = (a[x] == e11)[:, None] & (a[x] == e12)[None, :] & off_diag
                hit = second & first[None, :, :]
                hit[x] = False
                y, ia, ib = np.nonzero(hit)
                src += [np.full(y.size, x * p) + y, v_off + ia * q + ib]
                dst += [v_off + ib * q + ia, y * p + x]
        else:  # pragma: no cover - rejected by BiPattern
            raise ValueError(f"unsupported shape {pat.shape}")
    return _from_arrays((p, q), src, dst)


@dataclass(eq=False)
class ComponentDecomposition:
    """Strong components of a constraint digraph.

    Components are numbered canonically by their smallest node id, so the
    numbering is reproducible from the digraph alone. ``labels`` maps node
    ids to component numbers (``-1`` for diagonal ids).
    """

    labels: np.ndarray
    members: list
    dual: np.ndarray
    succ_ptr: np.ndarray
    succ: np.ndarray
    pred_ptr: np.ndarray
    pred: np.ndarray

    @property
    def count(self) -> int:
        return len(self.members)

    def successors(self, c: int) -> np.ndarray:
        return self.succ[self.succ_ptr[c] : self.succ_ptr[c + 1]]

    def predecessors(self, c: int) -> np.ndarray:
        return self.pred[self.pred_ptr[c] : self.pred_ptr[c + 1]]

    @cached_property
    def is_sink(self) -> np.ndarray:
        """Components with no arc leaving them in the whole digraph."""
        return np.diff(self.succ_ptr) == 0

    @cached_property
    def sizes(self) -> np.ndarray:
        return np.array([m.size for m in self.members], dtype=np.int64)

    def component_of(self, node: int) -> int:
        return int(self.labels[node])

    @cached_property
    def topological_order(self) -> list[int]:
        """Condensation order with every arc going forward (Kahn)."""
        indeg = np.diff(self.pred_ptr).tolist()
        ready = [c for c in range(self.count) if indeg[c] == 0]
        order = []
        while ready:
            c = ready.pop()
            order.append(c)
            for d in self.successors(c).tolist():
                indeg[d] -= 1
                if indeg[d] == 0:
                    ready.append(d)
        return order


def _csr_from_pairs(rows: np.ndarray, cols: np.ndarray, count: int):
    order = np.lexsort((cols, rows))
    ptr = np.zeros(count + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=count), out=ptr[1:])
    return ptr, cols[order]


def strong_components(g: ConstraintDigraph) -> ComponentDecomposition:
    n_slots = g.num_slots
    if n_slots == 0:
        empty = np.zeros(1, dtype=np.int64)
        return ComponentDecomposition(
            np.zeros(0, dtype=np.int64), [], np.zeros(0, dtype=np.int64),
            empty, empty[:0], empty.copy(), empty[:0],
        )
    _, raw = connected_components(g.arcs, directed=True, connection="strong")
    valid = g.valid
    nodes = np.flatnonzero(valid)
    uniq, first_pos = np.unique(raw[nodes], return_index=True)
    rank = np.empty(raw.max() + 1, dtype=np.int64)
    rank[uniq[np.argsort(first_pos)]] = np.arange(uniq.size)
    labels = np.full(n_slots, -1, dtype=np.int64)
    labels[nodes] = rank[raw[nodes]]
    count = uniq.size

    order = nodes[np.argsort(labels[nodes], kind="stable")]
    bounds = np.cumsum(np.bincount(labels[nodes], minlength=count))[:-1]
    members = np.split(order, bounds) if count else []
    dual = labels[g.dual[np.array([m[0] for m in members], dtype=np.int64)]] if count else labels[:0]

    coo = g.arcs.tocoo()
    cs, cd = labels[coo.row], labels[coo.col]
    keep = cs != cd
    key = np.unique(cs[keep] * count + cd[keep])
    rows, cols = np.divmod(key, max(count, 1))
    succ_ptr, succ = _csr_from_pairs(rows, cols, count)
    pred_ptr, pred = _csr_from_pairs(cols, rows, count)
    return ComponentDecomposition(labels, members, dual, succ_ptr, succ, pred_ptr, pred)


@dataclass(frozen=True)
class Circuit:
    """Cyclic chain ``(x0,x1), (x1,x2), ..., (xk,x0)`` of pairs.

    ``component`` is the strong component holding every pair, when the
    circuit certifies a single component.
    """

    pairs: tuple
    component: Optional[int] = None

    def __post_init__(self):
        pairs = tuple(tuple(p) for p in self.pairs)
        object.__setattr__(self, "pairs", pairs)

    def is_closed_chain(self) -> bool:
        ps = self.pairs
        if len(ps) < 2:
            return False
        return all(ps[i][1] == ps[(i + 1) % len(ps)][0] for i in range(len(ps)))

    def __len__(self):
        return len(self.pairs)


def find_circuit(pairs: Iterable[tuple[Hashable, Hashable]]) -> Optional[Circuit]:
    """Find a directed cycle among pairs read as edges ``a -> b``.

    Returns the cycle as a ``Circuit`` or ``None`` if the pairs are acyclic.
    Exploration order follows the input order, so results are reproducible.
    """
    adj: dict = {}
    for a, b in pairs:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, [])
    state = dict.fromkeys(adj, 0)  # 0 unseen, 1 on stack, 2 done
    for root in adj:
        if state[root]:
            continue
        path = [root]
        iters = [iter(adj[root])]
        state[root] = 1
        while iters:
            nxt = next(iters[-1], None)
            if nxt is None:
                state[path.pop()] = 2
                iters.pop()
                continue
            if state[nxt] == 1:
                cyc = path[path.index(nxt):]
                return Circuit(tuple(zip(cyc, cyc[1:] + [nxt])))
            if state[nxt] == 0:
                state[nxt] = 1
                path.append(nxt)
                iters.append(iter(adj[nxt]))
    return None


def _reach(arcs: csr_matrix, seed: Iterable[int], allowed: Optional[np.ndarray] = None) -> np.ndarray:
    seen = np.zeros(arcs.shape[0], dtype=bool)
    frontier = np.unique(np.fromiter(seed, dtype=np.int64))
    seen[frontier] = True
    while frontier.size:
        nb = arcs[frontier].indices
        nb = nb[~seen[nb]]
        if allowed is not None:
            nb = nb[allowed[nb]]
        nb = np.unique(nb)
        seen[nb] = True
        frontier = nb
    return seen


def outsection(g: ConstraintDigraph, seed: Iterable[int]) -> set[int]:
    """Node ids reachable from ``seed`` (seed included)."""
    return set(np.flatnonzero(_reach(g.arcs, seed)).tolist())


def insection(g: ConstraintDigraph, seed: Iterable[int]) -> set[int]:
    """Node ids that can reach ``seed`` (seed included)."""
    return set(np.flatnonzero(_reach(g.reversed_arcs, seed)).tolist())


def green_components(
    g: ConstraintDigraph, decided: Iterable[int], dec: Optional[ComponentDecomposition] = None
) -> list[frozenset]:
    """Sink components of the digraph left after removing ``decided`` nodes.

    ``decided`` must be a union of whole strong components (D together with
    its dual). Components are returned in canonical order.
    """
    dec = dec or strong_components(g)
    done = np.zeros(dec.count, dtype=bool)
    decided = list(decided)
    if decided:
        done[np.unique(dec.labels[np.asarray(decided, dtype=np.int64)])] = True
    out = []
    for c in range(dec.count):
        if done[c]:
            continue
        if not (~done[dec.successors(c)]).any():
            out.append(frozenset(dec.members[c].tolist()))
    return out


def invertible_pairs(g: ConstraintDigraph, dec: Optional[ComponentDecomposition] = None):
    """All ``(x, y)`` labels with ``(x,y)`` and ``(y,x)`` in one component."""
    dec = dec or strong_components(g)
    nodes = np.flatnonzero(g.valid)
    same = dec.labels[nodes] == dec.labels[g.dual[nodes]]
    return [g.pair(int(v)) for v in nodes[same]]


def component_circuit(g: ConstraintDigraph, dec: ComponentDecomposition, c: int) -> Optional[Circuit]:
    """A circuit made of pairs from component ``c``, if any."""
    circ = find_circuit(g.pair(int(v)) for v in dec.members[c])
    if circ is None:
        return None
    return Circuit(circ.pairs, c)


def circuit_nodes(g: ConstraintDigraph, circuit: Circuit) -> list[int]:
    return [g.node(a, b) for a, b in circuit.pairs]


def format_pairs(g: ConstraintDigraph, nodes: Sequence[int]) -> str:
    return " ".join(f"({g.format_pair(v)})" for v in nodes)
