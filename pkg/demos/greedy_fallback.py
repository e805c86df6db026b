"""Watch the greedy loop take a wrong turn and the exact search recover.

On this chordal graph the greedy component selection, with ties broken by
lowest pair id, commits to a pair that no chordal ordering extends. The
next flip closes a circuit; the solver then reruns the decision with
propagation and backtracking and still returns a valid ordering.

    python3 demos/greedy_fallback.py
"""

from ordfree import Graph, brute_force_ord, build_tri, check_ordering_free, preset, solve_ord3, strong_components
from ordfree.engine import FlipFailed, decide, preferred_nodes, priority_rule

EDGES = [(0, 1), (0, 4), (0, 5), (1, 2), (1, 4), (2, 3), (2, 4), (3, 4), (4, 5), (4, 6), (5, 6)]


def main():
    h, f = Graph.from_edges(7, EDGES), preset("chordal")
    print("exhaustive search finds a chordal ordering:", brute_force_ord(h, f)[1])
    g = build_tri(h, f)
    dec = strong_components(g)
    trace = []
    try:
        decide(g, dec, preferred_nodes(g, h, priority_rule(f)), trace)
    except FlipFailed as e:
        steps = ", ".join(f"({g.format_pair(int(dec.members[c][0]))}) {kind}" for c, kind in trace)
        print("greedy decisions:", steps)
        print("greedy loop stopped:", e)
    trace = []
    v = solve_ord3(h, f, trace)
    print("solver ordering:", " ".join(map(str, v.ordering)))
    print("search steps taken:", len(trace))
    print("ordering is free of the chordal patterns:", check_ordering_free(h, f, v.ordering) is None)


if __name__ == "__main__":
    main()
