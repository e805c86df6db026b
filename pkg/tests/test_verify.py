import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from ordfree import (
    BipartiteGraph,
    Circuit,
    Graph,
    PatternSet,
    TriPattern,
    brute_force_bord,
    brute_force_ord,
    build_tri,
    check_bi_ordering_free,
    check_ordering_free,
    complement,
    complement_set,
    parse_pattern_set,
    preset,
    reverse_set,
    strong_components,
    verify_certificate,
    verify_invariant_certificate,
)

from conftest import bi_sets, bigraphs, claw, graphs, tri_sets

CROSSING = parse_pattern_set("U=2,V=2:1-2,2-1")


def test_check_ordering_free_four_cycle():
    v = check_ordering_free(Graph.cycle(4), preset("chordal"), [0, 1, 2, 3])
    assert v.pattern == TriPattern.of("12", "13") and v.vertices == (0, 1, 3)


def test_check_ordering_free_trivial_cases():
    assert check_ordering_free(Graph.empty(4), preset("chordal"), [3, 1, 0, 2]) is None
    assert check_ordering_free(Graph.cycle(4), PatternSet("tri", ()), [0, 1, 2, 3]) is None
    with pytest.raises(ValueError):
        check_ordering_free(Graph.cycle(4), preset("chordal"), [0, 1, 1, 2])


def test_check_bi_ordering_free_matching():
    matching = BipartiteGraph.from_edges(2, 2, [(0, 0), (1, 1)])
    v = check_bi_ordering_free(matching, CROSSING, (0, 1), (1, 0))
    assert v.vertices == ((0, 1), (1, 0))
    assert check_bi_ordering_free(matching, CROSSING, (0, 1), (0, 1)) is None
    assert check_bi_ordering_free(matching, PatternSet("bi", ()), (0, 1), (1, 0)) is None
    with pytest.raises(ValueError):
        check_bi_ordering_free(matching, CROSSING, (0,), (0, 1))


def test_brute_force_ord_examples():
    assert brute_force_ord(Graph.cycle(4), preset("chordal")) == (False, None)
    assert brute_force_ord(claw(), preset("proper-interval"))[0] is False
    assert brute_force_ord(Graph.path(4), preset("proper-interval")) == (True, (0, 1, 2, 3))
    assert brute_force_ord(Graph.path(3), PatternSet.tri((), ("12", "13", "23")))[0]
    with pytest.raises(ValueError):
        brute_force_ord(Graph.empty(9), preset("chordal"))


def test_brute_force_bord_examples():
    assert brute_force_bord(BipartiteGraph.even_cycle(3), preset("co-circular-arc-bigraph"))[0] is False
    assert brute_force_bord(BipartiteGraph.even_cycle(2), preset("co-circular-arc-bigraph")) == (
        True,
        ((0, 1), (0, 1)),
    )
    with pytest.raises(ValueError):
        brute_force_bord(BipartiteGraph(np.zeros((6, 1), dtype=bool)), CROSSING)


@given(bi_sets())
def test_single_edge_always_orderable(f):
    assert brute_force_bord(BipartiteGraph.from_edges(1, 1, [(0, 0)]), f)[0]


@settings(max_examples=60)
@given(graphs(max_n=5), tri_sets())
def test_ord_oracle_matches_plain_enumeration(h, f):
    plain = next(
        (p for p in itertools.permutations(range(h.n)) if check_ordering_free(h, f, p) is None), None
    )
    ok, witness = brute_force_ord(h, f)
    assert ok == (plain is not None)
    assert witness == plain


@settings(max_examples=60)
@given(bigraphs(max_side=3), bi_sets())
def test_bord_oracle_matches_plain_enumeration(h, f):
    plain = any(
        check_bi_ordering_free(h, f, ou, ov) is None
        for ou in itertools.permutations(range(h.u_count))
        for ov in itertools.permutations(range(h.v_count))
    )
    ok, witness = brute_force_bord(h, f)
    assert ok == plain
    if ok:
        assert check_bi_ordering_free(h, f, *witness) is None


@given(graphs(max_n=6), tri_sets())
def test_oracle_complement_duality(h, f):
    assert brute_force_ord(h, f)[0] == brute_force_ord(complement(h), complement_set(f))[0]


@given(graphs(max_n=7), tri_sets())
def test_check_reversal_duality(h, f):
    order = list(range(h.n))
    assert (check_ordering_free(h, f, order) is None) == (
        check_ordering_free(h, reverse_set(f), order[::-1]) is None
    )


def test_verify_certificate():
    g = build_tri(Graph.cycle(4), preset("chordal"))
    dec = strong_components(g)
    c = dec.component_of(g.node(0, 1))
    assert verify_certificate(g, Circuit(((0, 1), (1, 0))), c)
    assert verify_certificate(g, Circuit(((0, 1), (1, 0)), c))
    assert not verify_certificate(g, Circuit(((0, 1), (1, 0))), c + 1)
    assert not verify_certificate(g, Circuit(((0, 1), (1, 2))))
    assert not verify_certificate(g, Circuit(((0, 0), (0, 0))))


def test_verify_certificate_spanning_components():
    g = build_tri(Graph.path(3), preset("chordal"))
    assert not verify_certificate(g, Circuit(((0, 1), (1, 0))))


def test_verify_invariant_certificate():
    assert verify_invariant_certificate(Graph.empty(3), TriPattern.of(), (2, 0, 1))
    assert not verify_invariant_certificate(Graph.path(3), TriPattern.of(), (0, 1, 2))
    assert not verify_invariant_certificate(Graph.empty(3), TriPattern.of(), (0, 0, 1))
    star = parse_pattern_set("U=1,V=3:1-1,1-2,1-3").members[0]
    h = BipartiteGraph.from_edges(1, 3, [(0, 0), (0, 1), (0, 2)])
    assert verify_invariant_certificate(h, star, ((0,), (2, 1, 0)))
    assert not verify_invariant_certificate(h, star, ((0,), (0, 1)))
