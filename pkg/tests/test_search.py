from dataclasses import replace

import numpy as np
from hypothesis import given

from ordfree import (
    BipartiteGraph,
    Circuit,
    Refutation,
    RefuteStep,
    build_bi,
    build_tri,
    check_bi_ordering_free,
    exact_search,
    is_order_invariant,
    parse_pattern_set,
    solve_bord4,
    solve_ord3,
    strong_components,
    verify_refutation,
)
from ordfree.bipartite import bi_preferred_nodes, bi_priority_rule
from ordfree.engine import preferred_nodes, priority_rule, state_orderings

from conftest import graphs, tri_sets
from test_bipartite import NO_COMPONENT_CIRCUIT

# Needs a backtrack: the first branch the greedy order picks is a dead end.
BACKTRACK = (BipartiteGraph.from_edges(2, 4, [(0, 0), (0, 3), (1, 0), (1, 1)]), "U=2,V=2:2-1;U=2,V=2:1-1,2-1,2-2")


def bi_instance(h, spec):
    f = parse_pattern_set(spec)
    g = build_bi(h, f)
    return h, f, g, strong_components(g), bi_preferred_nodes(g, h, bi_priority_rule(f))


def test_refutes_without_branching():
    h, f, g, dec, prefer = bi_instance(*NO_COMPONENT_CIRCUIT)
    trace = []
    state, ref = exact_search(g, dec, prefer, trace)
    assert state is None and trace == []
    assert ref.size() == len(ref.steps) == 4
    assert all(not s.proof.steps for s in ref.steps)
    assert verify_refutation(g, ref)


def test_backtracks_to_an_ordering():
    h, f, g, dec, prefer = bi_instance(*BACKTRACK)
    trace = []
    state, ref = exact_search(g, dec, prefer, trace)
    assert ref is None and ("backtrack" in {kind for _, kind in trace})
    order_u, order_v = state_orderings(state)
    assert check_bi_ordering_free(h, f, order_u, order_v) is None
    assert solve_bord4(h, f).order_v == tuple(order_v)


def test_tampered_refutations_fail():
    h, f, g, dec, prefer = bi_instance(*NO_COMPONENT_CIRCUIT)
    _, ref = exact_search(g, dec, prefer)
    assert not verify_refutation(g, replace(ref, steps=ref.steps[:-1]))
    assert not verify_refutation(g, replace(ref, steps=()))
    backwards = Circuit(tuple((b, a) for a, b in reversed(ref.circuit.pairs)))
    assert not verify_refutation(g, replace(ref, circuit=backwards))
    open_chain = Circuit(ref.circuit.pairs[:-1])
    assert not verify_refutation(g, replace(ref, circuit=open_chain))
    first = ref.steps[0]
    flipped = RefuteStep((first.pair[1], first.pair[0]), first.proof)
    assert not verify_refutation(g, replace(ref, steps=(flipped,) + ref.steps[1:]))
    cross = RefuteStep(((0, 0), (1, 0)), first.proof)
    assert not verify_refutation(g, replace(ref, steps=(cross,) + ref.steps[1:]))


def chain(*vertices):
    vs = [(0, v) for v in vertices]
    return Circuit(tuple(zip(vs, vs[1:] + vs[:1])))


def test_hand_written_refutations():
    """(V0,V1) forces U0 < U3 < U2 < U0 and (V1,V0) forces U1 < U3 < U2 < U1."""
    h, f, g, dec, prefer = bi_instance(*NO_COMPONENT_CIRCUIT)
    v01 = ((1, 0), (1, 1))
    first, second = chain(0, 3, 2), chain(1, 3, 2)
    assert verify_refutation(g, Refutation((RefuteStep(v01, Refutation((), first)),), second))
    assert not verify_refutation(g, Refutation((RefuteStep(v01, Refutation((), second)),), second))
    assert not verify_refutation(g, Refutation((RefuteStep(v01, Refutation((), first)),), first))
    u01 = ((0, 0), (0, 1))
    deeper = Refutation((RefuteStep(u01, Refutation((), first)),), first)
    assert verify_refutation(g, Refutation((RefuteStep(v01, deeper),), second))
    assert not verify_refutation(g, deeper)


@given(graphs(max_n=6), tri_sets(nonempty=True))
def test_search_agrees_with_unipartite_engine(h, f):
    f = f.without(p for p in f if is_order_invariant(p))
    if not len(f) or solve_ord3(h, f).certificate is not None:
        return
    g = build_tri(h, f)
    state, ref = exact_search(g, strong_components(g), preferred_nodes(g, h, priority_rule(f)))
    assert ref is None
    (order,) = state_orderings(state)
    assert len(order) == h.n


def test_search_on_decided_free_digraph():
    h = BipartiteGraph(np.zeros((2, 2), dtype=bool))
    _, f, g, dec, prefer = bi_instance(h, "U=2,V=2:1-1")
    state, ref = exact_search(g, dec, prefer)
    assert ref is None and (state.status != 0).all()
