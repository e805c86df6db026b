"""Decision procedure for side orderings of a bipartite graph that avoid a
set of bipartite patterns on at most four vertices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .constraint import ComponentDecomposition, ConstraintDigraph, build_bi, strong_components
from .engine import Certificate, FlipFailed, decide, find_invertible_pair, preprocess, screen_components, state_orderings
from .graph import BipartiteGraph
from .patterns import BiPattern, PatternSet
from .search import exact_search


def _p22(*edges: str) -> BiPattern:
    return BiPattern(2, 2, frozenset((int(e[0]), int(e[1])) for e in edges))


RULE_A_PATTERNS = frozenset(
    _p22(*e) for e in (("11", "12", "21"), ("12", "21", "22"), ("11", "12", "22"), ("11", "21", "22"))
)
RULE_B_PATTERNS = frozenset(_p22(e) for e in ("11", "22", "12", "21"))


@dataclass(frozen=True)
class BiVerdict:
    order_u: Optional[tuple] = None
    order_v: Optional[tuple] = None
    certificate: Optional[Certificate] = None
    digraph: Optional[ConstraintDigraph] = None

    @property
    def accepted(self) -> bool:
        return self.order_u is not None


def bi_priority_rule(f: PatternSet) -> Optional[str]:
    members = set(f)
    if members & RULE_A_PATTERNS:
        return "a"
    if members & RULE_B_PATTERNS:
        return "b"
    return None


def bi_preferred_nodes(g: ConstraintDigraph, h: BipartiteGraph, rule: Optional[str]) -> np.ndarray:
    """Per-node mask: same-side pairs with a common neighbour (rule a) or a
    common non-neighbour (rule b) on the other side."""
    if rule is None:
        return np.zeros(g.num_slots, dtype=bool)
    a = h.adj.astype(np.int64)
    if rule == "b":
        a = 1 - a
    shared = [(a @ a.T) > 0, (a.T @ a) > 0]
    out = np.zeros(g.num_slots, dtype=bool)
    for s, off in enumerate(g.offsets):
        size = g.sizes[s]
        out[off : off + size * size] = shared[s].ravel()
    return out & g.valid


def solve_bord4(
    h: BipartiteGraph, f: PatternSet, trace: Optional[list] = None, exact: bool = False
) -> BiVerdict:
    """Find ``f``-free orderings of both sides of ``h`` or certify that none
    exist.

    The greedy loop runs first. Its priority rules do not cover every
    pattern set, and for some sets a flip can close a circuit; the
    instance is then decided by ``exact_search``, whose negative answers
    carry a ``Refutation``. ``exact=True`` skips the greedy loop.
    """
    if f.kind != "bi":
        raise ValueError("solve_bord4 needs a bipartite pattern set")
    f, cert = preprocess(h, f)
    if cert is not None:
        return BiVerdict(certificate=cert)
    if not len(f):
        return BiVerdict(tuple(range(h.u_count)), tuple(range(h.v_count)))
    g = build_bi(h, f)
    dec = strong_components(g)
    cert = screen_components(g, dec)
    if cert is not None:
        return BiVerdict(certificate=cert, digraph=g)
    prefer = bi_preferred_nodes(g, h, bi_priority_rule(f))
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
            return BiVerdict(certificate=refutation, digraph=g)
    order_u, order_v = state_orderings(state)
    return BiVerdict(tuple(order_u), tuple(order_v), digraph=g)


def find_bi_invertible_pair(g: ConstraintDigraph, dec: Optional[ComponentDecomposition] = None):
    """Same-side pair ``(x, y)`` whose two orientations share a component."""
    return find_invertible_pair(g, dec)
