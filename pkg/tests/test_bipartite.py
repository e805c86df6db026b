import numpy as np
import pytest
from hypothesis import given

from ordfree import (
    BipartiteGraph,
    CircuitCertificate,
    InvariantCertificate,
    Refutation,
    brute_force_bord,
    build_bi,
    check_bi_ordering_free,
    find_bi_invertible_pair,
    is_order_invariant,
    parse_pattern_set,
    preset,
    solve_bord4,
    strong_components,
    verify_rejection,
)
from ordfree.bipartite import bi_preferred_nodes, bi_priority_rule
from ordfree.engine import FlipFailed, decide

from conftest import bi_sets, bigraphs, bipartite_path, overlapping_neighbourhoods

# The greedy loop flips into a dead end here although orderings exist.
GREEDY_TRAP = (BipartiteGraph.from_edges(3, 2, [(0, 0), (0, 1), (1, 0)]), "U=2,V=2:1-1,1-2")
# No strong component holds a circuit, yet no ordering exists.
NO_COMPONENT_CIRCUIT = (
    BipartiteGraph.from_edges(4, 2, [(0, 0), (1, 1), (3, 0), (3, 1)]),
    "U=2,V=2:1-1;U=2,V=2:2-1,2-2;U=2,V=2:1-1,1-2,2-1",
)


def test_six_cycle_is_not_co_circular_arc():
    c6 = BipartiteGraph.even_cycle(3)
    v = solve_bord4(c6, preset("co-circular-arc-bigraph"))
    assert isinstance(v.certificate, CircuitCertificate)
    assert v.certificate.circuit.pairs == (((0, 0), (0, 1)), ((0, 1), (0, 0)))
    assert find_bi_invertible_pair(build_bi(c6, preset("co-circular-arc-bigraph"))) == ((0, 0), (0, 1))
    assert not brute_force_bord(c6, preset("co-circular-arc-bigraph"))[0]


def test_path_is_bipartite_permutation():
    v = solve_bord4(bipartite_path(5), preset("bipartite-permutation"))
    assert (v.order_u, v.order_v) == ((0, 1, 2), (0, 1))


def test_overlapping_neighbourhoods_not_convex():
    h = overlapping_neighbourhoods()
    v = solve_bord4(h, preset("convex-bipartite"))
    assert not v.accepted and isinstance(v.certificate, CircuitCertificate)
    assert not brute_force_bord(h, preset("convex-bipartite"))[0]


def test_small_accepted_instances():
    k22 = BipartiteGraph.even_cycle(2)
    assert solve_bord4(k22, preset("co-circular-arc-bigraph")).accepted
    assert find_bi_invertible_pair(build_bi(k22, preset("co-circular-arc-bigraph"))) is None
    matching = BipartiteGraph.from_edges(2, 2, [(0, 0), (1, 1)])
    assert solve_bord4(matching, preset("bipartite-permutation")).accepted
    assert find_bi_invertible_pair(build_bi(matching, preset("bipartite-permutation"))) is None


def test_invariant_star_certificate():
    h = BipartiteGraph.from_edges(3, 1, [(0, 0), (1, 0), (2, 0)])
    v = solve_bord4(h, parse_pattern_set("U=3,V=1:1-1,2-1,3-1;U=3,V=1:1-1,3-1"))
    assert isinstance(v.certificate, InvariantCertificate)
    assert v.certificate.vertices == ((0, 1, 2), (0,))


def test_rejects_unipartite_set():
    with pytest.raises(ValueError):
        solve_bord4(BipartiteGraph.even_cycle(2), preset("chordal"))


def test_priority_rules():
    assert bi_priority_rule(preset("co-circular-arc-bigraph")) == "a"
    assert bi_priority_rule(parse_pattern_set("U=2,V=2:1-1")) == "b"
    assert bi_priority_rule(parse_pattern_set("U=2,V=2:1-1;U=2,V=2:1-1,1-2,2-1")) == "a"
    assert bi_priority_rule(preset("convex-bipartite")) is None


def test_preferred_pairs():
    h = BipartiteGraph.from_edges(3, 2, [(0, 0), (1, 0), (2, 1)])
    g = build_bi(h, preset("co-circular-arc-bigraph"))
    common = bi_preferred_nodes(g, h, "a")
    assert common[g.node((0, 0), (0, 1))] and not common[g.node((0, 0), (0, 2))]
    assert not common[g.node((1, 0), (1, 1))]
    apart = bi_preferred_nodes(g, h, "b")
    assert apart[g.node((0, 0), (0, 1))] and not apart[g.node((0, 0), (0, 2))]
    assert not apart[g.node((1, 0), (1, 1))]


def test_greedy_trap_is_solved_by_search():
    h, spec = GREEDY_TRAP
    f = parse_pattern_set(spec)
    g = build_bi(h, f)
    dec = strong_components(g)
    with pytest.raises(FlipFailed):
        decide(g, dec, bi_preferred_nodes(g, h, bi_priority_rule(f)))
    v = solve_bord4(h, f)
    assert v.accepted
    assert check_bi_ordering_free(h, f, v.order_u, v.order_v) is None


def test_refutation_when_no_component_has_a_circuit():
    h, spec = NO_COMPONENT_CIRCUIT
    f = parse_pattern_set(spec)
    g = build_bi(h, f)
    dec = strong_components(g)
    assert not any(dec.labels[v] == dec.labels[g.dual[v]] for v in np.flatnonzero(g.valid))
    assert not brute_force_bord(h, f)[0]
    v = solve_bord4(h, f)
    assert isinstance(v.certificate, Refutation)
    assert verify_rejection(h, f, v.certificate)
    assert solve_bord4(h, f, exact=True).certificate == v.certificate


@given(bigraphs(max_side=4), bi_sets())
def test_matches_oracle(h, f):
    v = solve_bord4(h, f)
    assert v.accepted == brute_force_bord(h, f)[0]
    if v.accepted:
        assert check_bi_ordering_free(h, f, v.order_u, v.order_v) is None
    else:
        assert verify_rejection(h, f, v.certificate)


@given(bigraphs(max_side=4), bi_sets())
def test_exact_search_agrees_with_default(h, f):
    assert solve_bord4(h, f, exact=True).accepted == solve_bord4(h, f).accepted


@pytest.mark.parametrize("name", ["co-circular-arc-bigraph", "bipartite-permutation"])
@given(h=bigraphs(max_side=5))
def test_preset_acceptance_iff_no_invertible_pair(name, h):
    f = preset(name)
    assert solve_bord4(h, f).accepted == (find_bi_invertible_pair(build_bi(h, f)) is None)


@given(bigraphs(max_side=4), bi_sets())
def test_circuits_stay_on_one_side(h, f):
    v = solve_bord4(h, f)
    if isinstance(v.certificate, CircuitCertificate):
        assert len({a[0] for a, _ in v.certificate.circuit.pairs}) == 1


@given(bigraphs(max_side=4), bi_sets())
def test_preprocessing_only_removes_invariants(h, f):
    v = solve_bord4(h, f)
    if v.accepted and not any(not is_order_invariant(p) for p in f):
        assert v.order_u == tuple(range(h.u_count))
