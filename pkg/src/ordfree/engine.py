"""Decision procedure for orderings that avoid a set of 3-vertex patterns.

The procedure either returns an ordering of the host graph with no pattern
occurrence, or a certificate: an induced copy of an order-invariant pattern,
a circuit whose pairs all lie in one strong component of the constraint
digraph, or (from the fallback search) a refutation.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .constraint import (
    Circuit,
    ComponentDecomposition,
    ConstraintDigraph,
    build_tri,
    component_circuit,
    strong_components,
)
from .graph import Graph, find_order_invariant_occurrence
from .patterns import Pattern, PatternSet, TriPattern, is_order_invariant


class InternalError(RuntimeError):
    """An invariant the correctness proof guarantees was violated.

    Never a property of the input: seeing one means the implementation is
    wrong. ``dump`` carries diagnostic text.
    """

    def __init__(self, message: str, dump: str = ""):
        super().__init__(message)
        self.dump = dump


class FlipFailed(InternalError):
    """The greedy loop flipped a component and still closed a circuit.

    The instance may still be orderable: an earlier tie-break can already
    have ruled out every ordering, and bipartite sets outside the priority
    rules' families need not be orderable at all. The solvers catch it and
    fall back to the exact search.
    """


@dataclass(frozen=True)
class CircuitCertificate:
    circuit: Circuit
    component: int


@dataclass(frozen=True)
class InvariantCertificate:
    """An induced copy of a pattern that occurs under every ordering."""

    pattern: Pattern
    vertices: tuple


Certificate = Union[CircuitCertificate, InvariantCertificate]


@dataclass(frozen=True)
class Verdict:
    ordering: Optional[tuple] = None
    certificate: Optional[Certificate] = None
    digraph: Optional[ConstraintDigraph] = None

    @property
    def accepted(self) -> bool:
        return self.ordering is not None


# Rule (a): two-edge patterns, prefer pairs spanning an edge.
RULE_A_CODES = frozenset(TriPattern.of(*p).code for p in (("13", "23"), ("12", "13"), ("12", "23")))
# Rule (b): one-edge patterns, prefer pairs spanning a non-edge.
RULE_B_CODES = frozenset(TriPattern.of(p).code for p in ("12", "23", "13"))


def priority_rule(f: PatternSet) -> Optional[str]:
    """``"a"``, ``"b"`` or ``None``; rule (a) wins when both apply."""
    codes = {p.code for p in f}
    if codes & RULE_A_CODES:
        return "a"
    if codes & RULE_B_CODES:
        return "b"
    return None


def preferred_nodes(g: ConstraintDigraph, h: Graph, rule: Optional[str]) -> np.ndarray:
    adj = h.adj[g.first, g.second] & g.valid
    if rule == "a":
        return adj
    if rule == "b":
        return ~adj & g.valid
    return np.zeros(g.num_slots, dtype=bool)


def component_keys(dec: ComponentDecomposition, prefer: np.ndarray) -> np.ndarray:
    """Static priority of each component; smaller is chosen first.

    Ordered by: holds a preferred pair, is trivial, is a sink of the whole
    digraph. Ties go to the lower component number, i.e. the lower
    smallest pair id.
    """
    has = np.zeros(dec.count, dtype=bool)
    nodes = np.flatnonzero(dec.labels >= 0)
    np.logical_or.at(has, dec.labels[nodes], prefer[nodes])
    return (~has).astype(np.int64) * 4 + (dec.sizes > 1) * 2 + (~dec.is_sink).astype(np.int64)


def select_component(
    candidates: Sequence[Iterable[int]],
    h: Graph,
    f: PatternSet,
    g: Optional[ConstraintDigraph] = None,
    dec: Optional[ComponentDecomposition] = None,
) -> frozenset:
    """Pick one green component (given as node-id sets) by the priority rules.

    ``g``/``dec`` default to the constraint digraph of ``h`` for the
    non-invariant members of ``f`` and its decomposition.
    """
    if not candidates:
        raise ValueError("no candidate components")
    f = f.without(p for p in f if is_order_invariant(p))
    g = g or build_tri(h, f)
    dec = dec or strong_components(g)
    keys = component_keys(dec, preferred_nodes(g, h, priority_rule(f)))
    comps = [dec.component_of(min(c)) for c in candidates]
    best = min(range(len(comps)), key=lambda i: (keys[comps[i]], comps[i]))
    return frozenset(candidates[best])


class DecisionState:
    """The growing set D of decided pairs together with its dual.

    Components carry status 0 (undecided), 1 (in D) or 2 (in the dual of
    D). ``reach[s]`` is the transitive closure of the D-pairs on side ``s``,
    which makes "would this close a circuit" a constant-time lookup per
    pair.
    """

    def __init__(self, g: ConstraintDigraph, dec: ComponentDecomposition):
        self.g = g
        self.dec = dec
        self.status = np.zeros(dec.count, dtype=np.int8)
        self.reach = [np.zeros((s, s), dtype=bool) for s in g.sizes]

    def copy(self) -> "DecisionState":
        """Independent state; closure matrices are shared until modified."""
        other = DecisionState.__new__(DecisionState)
        other.g, other.dec = self.g, self.dec
        other.status = self.status.copy()
        other.reach = list(self.reach)
        return other

    def _edges(self, nodes: np.ndarray):
        g = self.g
        return zip(g.side[nodes].tolist(), g.first[nodes].tolist(), g.second[nodes].tolist())

    def try_extend(self, nodes: np.ndarray) -> Optional[list]:
        """Closure matrices after adding ``nodes`` to D, or ``None`` if that
        closes a circuit. The state itself is not modified."""
        reach = [r.copy() for r in self.reach] if nodes.size > 1 else list(self.reach)
        copied = nodes.size > 1
        for s, a, b in self._edges(nodes):
            r = reach[s]
            if r[a, b]:
                continue
            if r[b, a]:
                return None
            if not copied:
                reach = [x.copy() for x in reach]
                r = reach[s]
                copied = True
            rows = r[:, a].copy()
            rows[a] = True
            cols = r[b].copy()
            cols[b] = True
            r[np.ix_(rows, cols)] = True
        return reach

    def commit(self, comps: Iterable[int], reach: list) -> list[int]:
        """Put ``comps`` into D and their duals into the dual of D.

        Returns every component whose status changed.
        """
        changed = []
        for c in comps:
            d = int(self.dec.dual[c])
            if self.status[c] or self.status[d]:
                raise InternalError(f"component {c} or its dual {d} already decided")
            if c == d:
                raise InternalError(f"component {c} is self-dual")
            self.status[c] = 1
            self.status[d] = 2
            changed += [c, d]
        self.reach = reach
        return changed

    def forward_nodes(self) -> np.ndarray:
        comps = np.flatnonzero(self.status == 1)
        if not comps.size:
            return np.zeros(0, dtype=np.int64)
        return np.sort(np.concatenate([self.dec.members[c] for c in comps]))

    def forward_pairs(self) -> list[tuple]:
        return [self.g.pair(int(v)) for v in self.forward_nodes()]


def _undecided_outsection(state: DecisionState, start: int) -> list[int]:
    dec, status = state.dec, state.status
    seen = {start}
    stack = [start]
    while stack:
        c = stack.pop()
        for d in dec.successors(c).tolist():
            if d in seen or status[d] == 1:
                continue
            if status[d] == 2:
                raise InternalError(f"outsection of component {start} enters the dual of D at {d}")
            seen.add(d)
            stack.append(d)
    return sorted(seen)


def _absorb_dual(state: DecisionState, c: int) -> list[int]:
    """Put the dual of component ``c`` and its undecided outsection into D."""
    dec = state.dec
    absorb = _undecided_outsection(state, int(dec.dual[c]))
    reach = state.try_extend(np.concatenate([dec.members[d] for d in absorb]))
    if reach is None:
        raise FlipFailed(
            f"absorbing the outsection of the dual of component {c} closed a circuit",
            dump=state.g.dump(),
        )
    return state.commit(absorb, reach)


def decide(
    g: ConstraintDigraph,
    dec: ComponentDecomposition,
    prefer: np.ndarray,
    trace: Optional[list] = None,
) -> DecisionState:
    """Main loop: absorb green components into D until every pair is decided.

    Assumes no strong component holds a circuit. ``trace``, when given,
    receives ``(component, "add" | "flip")`` per decision.
    """
    keys = component_keys(dec, prefer).tolist()
    state = DecisionState(g, dec)
    status = state.status
    outcnt = np.diff(dec.succ_ptr).tolist()
    heap = [(keys[c], c) for c in range(dec.count) if outcnt[c] == 0]
    heapq.heapify(heap)

    def settle(changed):
        for d in changed:
            for p in dec.predecessors(d).tolist():
                outcnt[p] -= 1
                if outcnt[p] == 0 and not status[p]:
                    heapq.heappush(heap, (keys[p], p))

    while heap:
        _, c = heapq.heappop(heap)
        if status[c]:
            continue
        reach = state.try_extend(dec.members[c])
        if reach is not None:
            settle(state.commit([c], reach))
            if trace is not None:
                trace.append((c, "add"))
        else:
            settle(_absorb_dual(state, c))
            if trace is not None:
                trace.append((c, "flip"))
    if (status == 0).any():
        raise InternalError(f"{int((status == 0).sum())} components left undecided")
    return state


def _order_from_matrix(m: np.ndarray) -> list[int]:
    n = m.shape[0]
    if n == 0:
        return []
    off = ~np.eye(n, dtype=bool)
    if np.any(m & m.T) or np.any((m | m.T) != off):
        raise InternalError("decided pairs do not contain exactly one of every pair")
    out = m.sum(axis=1)
    order = np.argsort(-out, kind="stable")
    if not np.array_equal(np.sort(out), np.arange(n)) or not np.array_equal(
        m[np.ix_(order, order)], np.triu(off)
    ):
        raise InternalError("decided pairs are not transitive")
    return order.tolist()


def extract_ordering(decided: Iterable[tuple[int, int]], n: int) -> list[int]:
    """Linear order of ``0..n-1`` from a transitive tournament of pairs.

    ``(x, y)`` in ``decided`` puts ``x`` before ``y``. Raises
    ``InternalError`` if the pairs are not total and transitive.
    """
    m = np.zeros((n, n), dtype=bool)
    for x, y in decided:
        m[x, y] = True
    return _order_from_matrix(m)


def state_orderings(state: DecisionState) -> list[list[int]]:
    """One vertex ordering per side from a finished decision state."""
    g = state.g
    nodes = state.forward_nodes()
    out = []
    for s, size in enumerate(g.sizes):
        on_side = nodes[g.side[nodes] == s]
        m = np.zeros((size, size), dtype=bool)
        m[g.first[on_side], g.second[on_side]] = True
        out.append(_order_from_matrix(m))
    return out


def screen_components(g: ConstraintDigraph, dec: ComponentDecomposition) -> Optional[CircuitCertificate]:
    """First component (canonical order) whose pairs contain a circuit."""
    for c in np.flatnonzero(dec.sizes > 1).tolist():
        circ = component_circuit(g, dec, c)
        if circ is not None:
            return CircuitCertificate(circ, c)
    return None


def find_invertible_pair(g: ConstraintDigraph, dec: Optional[ComponentDecomposition] = None):
    """Smallest-id pair ``(x, y)`` with ``(x,y)`` and ``(y,x)`` in one
    strong component, or ``None``."""
    dec = dec or strong_components(g)
    nodes = np.flatnonzero(g.valid)
    hit = nodes[dec.labels[nodes] == dec.labels[g.dual[nodes]]]
    return g.pair(int(hit[0])) if hit.size else None


def preprocess(h, f: PatternSet):
    """Drop order-invariant members; an occurring one yields a certificate.

    Returns ``(remaining_patterns, certificate_or_None)``.
    """
    for p in f:
        if is_order_invariant(p):
            occ = find_order_invariant_occurrence(h, p)
            if occ is not None:
                return f, InvariantCertificate(p, occ)
    return f.without(p for p in f if is_order_invariant(p)), None


def solve_ord3(h: Graph, f: PatternSet, trace: Optional[list] = None, exact: bool = False) -> Verdict:
    """Find an ``f``-free ordering of ``h`` or certify that none exists.

    The greedy loop runs first. Its tie-breaks can lead it to a component
    whose addition and whose flip both close a circuit although an ordering
    exists; the instance is then decided by ``exact_search``. ``exact=True``
    skips the greedy loop.
    """
    from .search import exact_search  # search builds on this module

    if f.kind != "tri":
        raise ValueError("solve_ord3 needs a unipartite pattern set")
    f, cert = preprocess(h, f)
    if cert is not None:
        return Verdict(certificate=cert)
    if not len(f):
        return Verdict(ordering=tuple(range(h.n)))
    g = build_tri(h, f)
    dec = strong_components(g)
    cert = screen_components(g, dec)
    if cert is not None:
        return Verdict(certificate=cert, digraph=g)
    prefer = preferred_nodes(g, h, priority_rule(f))
    state = None
    if not exact:
        try:
            state = decide(g, dec, prefer, trace)
        except FlipFailed:
            if trace is not None:
                trace.clear()
    if state is None:
        state, refutation = exact_search(g, dec, prefer, trace)
        if state is None:
            return Verdict(certificate=refutation, digraph=g)
    (order,) = state_orderings(state)
    return Verdict(ordering=tuple(order), digraph=g)
