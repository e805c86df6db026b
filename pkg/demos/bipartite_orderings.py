"""Order both sides of a bipartite graph, and refute when impossible.

Bipartite patterns constrain a U order and a V order together. Three named
classes are available as presets. For pattern sets the priority rules were
not designed for, the solver may need its exact search, and a negative
answer then carries a refutation instead of a single circuit.

    python3 demos/bipartite_orderings.py
"""

from ordfree import BipartiteGraph, format_verdict, parse_pattern_set, preset, solve_bord4, verify_rejection

C6 = BipartiteGraph.even_cycle(3)
K22 = BipartiteGraph.from_edges(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
PATH5 = BipartiteGraph.from_edges(3, 2, [(0, 0), (1, 0), (1, 1), (2, 1)])


def show(label, h, f):
    v = solve_bord4(h, f)
    print(f"{label}:")
    for line in format_verdict(v).splitlines():
        print(f"    {line}")
    if not v.accepted:
        print(f"    certificate checks out: {verify_rejection(h, f, v.certificate)}")


def main():
    for cls in ("co-circular-arc-bigraph", "bipartite-permutation"):
        show(f"6-cycle against {cls}", C6, preset(cls))
    show("K2,2 against co-circular-arc-bigraph", K22, preset("co-circular-arc-bigraph"))
    show("path on 5 vertices against bipartite-permutation", PATH5, preset("bipartite-permutation"))

    print()
    print("No strong component below holds a circuit, yet no ordering exists:")
    print("both orientations of (V0,V1) force a circuit among the U vertices.")
    h = BipartiteGraph.from_edges(4, 2, [(0, 0), (1, 1), (3, 0), (3, 1)])
    f = parse_pattern_set("U=2,V=2:1-1;U=2,V=2:2-1,2-2;U=2,V=2:1-1,1-2,2-1")
    show("four U vertices, two V vertices", h, f)


if __name__ == "__main__":
    main()
