"""Independent checkers: pattern-freeness of a given ordering, exhaustive
oracles for small instances, and certificate validation.

Nothing here reuses the decision engines; the certificate check recomputes
reachability in the constraint digraph by its own breadth-first search.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Optional, Sequence

import numpy as np

from .constraint import ConstraintDigraph, _reach, build_bi, build_tri, strong_components
from .graph import BipartiteGraph, Graph
from .patterns import BiPattern, Pattern, PatternSet, TriPattern, is_order_invariant

MAX_ORACLE_N = 8
MAX_ORACLE_SIDE = 5


@dataclass(frozen=True)
class Violation:
    """A pattern occurrence: ``vertices`` in ascending position order.

    For bipartite patterns ``vertices`` is ``(u_vertices, v_vertices)``.
    """

    pattern: Pattern
    vertices: tuple


def _check_perm(order: Sequence[int], n: int, what: str = "order"):
    if sorted(order) != list(range(n)):
        raise ValueError(f"{what} is not a permutation of 0..{n - 1}")


def check_ordering_free(h: Graph, f: PatternSet, order: Sequence[int]) -> Optional[Violation]:
    """First occurrence of a member of ``f`` under ``order``, or ``None``.

    Scans position triples ``i < j < k`` in lexicographic order.
    """
    order = list(order)
    _check_perm(order, h.n)
    by_code = {p.code: p for p in f}
    if not by_code:
        return None
    adj = h.adj
    for a, b, c in combinations(order, 3):
        code = int(adj[a, b]) | int(adj[a, c]) << 1 | int(adj[b, c]) << 2
        if code in by_code:
            return Violation(by_code[code], (a, b, c))
    return None


def check_bi_ordering_free(
    h: BipartiteGraph, f: PatternSet, order_u: Sequence[int], order_v: Sequence[int]
) -> Optional[Violation]:
    """First occurrence of a member of ``f`` under the two side orders."""
    order_u, order_v = list(order_u), list(order_v)
    _check_perm(order_u, h.u_count, "U order")
    _check_perm(order_v, h.v_count, "V order")
    for pat in f:
        want = pat.matrix()
        for us in combinations(order_u, pat.u_arity):
            rows = h.adj[list(us)]
            for vs in combinations(order_v, pat.v_arity):
                if np.array_equal(rows[:, list(vs)], want):
                    return Violation(pat, (us, vs))
    return None


@lru_cache(maxsize=None)
def _perms(n: int) -> np.ndarray:
    perms = list(permutations(range(n)))
    return np.array(perms, dtype=np.int64).reshape(len(perms), n)


@lru_cache(maxsize=None)
def _triple_cells(n: int) -> tuple:
    """Flat adjacency indices of the slot pairs (1,2), (1,3), (2,3) of every
    position triple under every permutation."""
    tri = np.array(list(combinations(range(n), 3)), dtype=np.int64).reshape(-1, 3)
    a, b, c = (_perms(n)[:, tri[:, k]] for k in range(3))
    return tuple((x * n + y).astype(np.int32) for x, y in ((a, b), (a, c), (b, c)))


def occurrence_masks(h: Graph) -> np.ndarray:
    """For each permutation (lexicographic), a bitmask over the eight
    3-pattern codes that occur under it."""
    n = h.n
    perms = _perms(n)
    if n < 3:
        return np.zeros(len(perms), dtype=np.int64)
    ab, ac, bc = _triple_cells(n)
    adj = h.adj.astype(np.uint8).ravel()
    codes = adj.take(ab) | adj.take(ac) << 1 | adj.take(bc) << 2
    return np.bitwise_or.reduce(np.left_shift(np.uint8(1), codes), axis=1).astype(np.int64)


def brute_force_ord(h: Graph, f: PatternSet, masks: Optional[np.ndarray] = None):
    """Exhaustive decision over all ``n!`` orderings.

    Returns ``(True, witness)`` with the lexicographically first free
    ordering, or ``(False, None)``. ``masks`` may carry precomputed
    ``occurrence_masks(h)`` when many pattern sets are tried on one graph.
    """
    if h.n > MAX_ORACLE_N:
        raise ValueError(f"oracle limited to n <= {MAX_ORACLE_N}, got {h.n}")
    if masks is None:
        masks = occurrence_masks(h)
    ok = np.flatnonzero((masks & f.tri_mask) == 0)
    if not ok.size:
        return False, None
    return True, tuple(_perms(h.n)[ok[0]].tolist())


def _ascending_incidence(perms: np.ndarray, size: int, arity: int):
    """Incidence of (permutation, ordered vertex tuple) for tuples that
    appear in ascending position order under the permutation."""
    tuples = list(permutations(range(size), arity))
    index = {t: i for i, t in enumerate(tuples)}
    inc = np.zeros((len(perms), len(tuples)), dtype=np.float64)
    for r, perm in enumerate(perms.tolist()):
        for t in combinations(perm, arity):
            inc[r, index[t]] = 1.0
    return tuples, inc


def bi_occurrence(h: BipartiteGraph, pat: BiPattern) -> np.ndarray:
    """Boolean matrix over (U permutation, V permutation), both in
    lexicographic order: does ``pat`` occur under that pair of orders?"""
    pu, pv = _perms(h.u_count), _perms(h.v_count)
    tu, inc_u = _ascending_incidence(pu, h.u_count, pat.u_arity)
    tv, inc_v = _ascending_incidence(pv, h.v_count, pat.v_arity)
    want = pat.matrix()
    match = np.zeros((len(tu), len(tv)))
    for i, us in enumerate(tu):
        rows = h.adj[list(us)]
        for j, vs in enumerate(tv):
            match[i, j] = np.array_equal(rows[:, list(vs)], want)
    return (inc_u @ match @ inc_v.T) > 0


def brute_force_bord(h: BipartiteGraph, f: PatternSet, cache: Optional[dict] = None):
    """Exhaustive decision over all pairs of side orderings.

    Returns ``(True, (order_u, order_v))`` for the first free pair in
    lexicographic order (U order major), else ``(False, None)``. ``cache``
    may map patterns to ``bi_occurrence(h, pattern)`` results; missing
    entries are filled in, so one dict can serve many sets on one graph.
    """
    p, q = h.u_count, h.v_count
    if p > MAX_ORACLE_SIDE or q > MAX_ORACLE_SIDE:
        raise ValueError(f"oracle limited to sides <= {MAX_ORACLE_SIDE}, got ({p},{q})")
    cache = {} if cache is None else cache
    occ = np.zeros((len(_perms(p)), len(_perms(q))), dtype=bool)
    for pat in f:
        if pat not in cache:
            cache[pat] = bi_occurrence(h, pat)
        occ |= cache[pat]
    free = np.argwhere(~occ)
    if not free.size:
        return False, None
    i, j = free[0]
    return True, (tuple(_perms(p)[i].tolist()), tuple(_perms(q)[j].tolist()))


def verify_certificate(g: ConstraintDigraph, circuit, component: Optional[int] = None) -> bool:
    """Check a circuit certificate against a constraint digraph.

    The pairs must chain and close, be nodes of ``g``, and be mutually
    reachable (recomputed here by BFS). If ``component`` is given it must be
    the canonical number of the strong component holding them.
    """
    if not circuit.is_closed_chain():
        return False
    try:
        nodes = [g.node(a, b) for a, b in circuit.pairs]
    except (ValueError, TypeError, IndexError):
        return False
    fwd = _reach(g.arcs, nodes[:1])
    back = _reach(g.reversed_arcs, nodes[:1])
    if not all(fwd[v] and back[v] for v in nodes):
        return False
    if component is None:
        component = circuit.component
    if component is not None:
        return strong_components(g).component_of(nodes[0]) == component
    return True


def verify_invariant_certificate(h, pattern: Pattern, vertices) -> bool:
    """Check that ``vertices`` induce ``pattern`` (order does not matter for
    order-invariant patterns, so any slot assignment is tried)."""
    if isinstance(pattern, TriPattern):
        if not isinstance(h, Graph) or len(set(vertices)) != 3:
            return False
        for a, b, c in permutations(vertices):
            code = int(h.adj[a, b]) | int(h.adj[a, c]) << 1 | int(h.adj[b, c]) << 2
            if code == pattern.code:
                return True
        return False
    if not isinstance(pattern, BiPattern) or not isinstance(h, BipartiteGraph):
        return False
    us, vs = vertices
    if len(set(us)) != pattern.u_arity or len(set(vs)) != pattern.v_arity:
        return False
    if any(not 0 <= u < h.u_count for u in us) or any(not 0 <= v < h.v_count for v in vs):
        return False
    want = pattern.matrix()
    for pu in permutations(us):
        rows = h.adj[list(pu)]
        for pv in permutations(vs):
            if np.array_equal(rows[:, list(pv)], want):
                return True
    return False


def verify_refutation(g: ConstraintDigraph, refutation, assumed: Sequence[int] = ()) -> bool:
    """Check that ``refutation`` shows no ordering contains the pairs
    ``assumed`` (node ids of ``g``; empty means "no ordering at all").

    Each step ``refute P { R }`` needs R to refute ``assumed`` plus P, and
    then adds the reverse of P. The final circuit must close and lie in the
    set of pairs reachable from what has been assumed.
    """
    known = list(assumed)
    for step in refutation.steps:
        try:
            node = g.node(*step.pair)
        except (ValueError, TypeError, IndexError):
            return False
        if not verify_refutation(g, step.proof, known + [node]):
            return False
        known.append(int(g.dual[node]))
    circuit = refutation.circuit
    if not known or not circuit.is_closed_chain():
        return False
    try:
        nodes = [g.node(a, b) for a, b in circuit.pairs]
    except (ValueError, TypeError, IndexError):
        return False
    reach = _reach(g.arcs, known)
    return all(reach[v] for v in nodes)


def verify_rejection(h, f: PatternSet, cert) -> bool:
    """Check any rejection certificate for ``(h, f)``.

    The constraint digraph is rebuilt from ``h`` and the non-invariant
    members of ``f``. Accepts circuit certificates (``.circuit`` and
    ``.component``), invariant-pattern certificates (``.pattern`` and
    ``.vertices``) and refutations (``.steps`` and ``.circuit``).
    """
    if hasattr(cert, "pattern"):
        return cert.pattern in f and verify_invariant_certificate(h, cert.pattern, cert.vertices)
    core = f.without(p for p in f if is_order_invariant(p))
    if not len(core):
        return False
    g = build_bi(h, core) if f.kind == "bi" else build_tri(h, core)
    if hasattr(cert, "steps"):
        return verify_refutation(g, cert)
    return verify_certificate(g, cert.circuit, cert.component)
