"""Recognize familiar graph classes by forbidden ordered patterns.

Each named class is the set of graphs with a vertex ordering avoiding a few
3-vertex patterns. The solver either returns such an ordering or a
certificate that none exists.

    python3 demos/recognize_classes.py
"""

from ordfree import Graph, format_verdict, preset, solve_ord3

CLAW = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
NET = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])

SHOWCASE = [
    ("chordal", "4-cycle", Graph.cycle(4)),
    ("chordal", "triangle", Graph.complete(3)),
    ("interval", "claw", CLAW),
    ("interval", "net", NET),
    ("proper-interval", "claw", CLAW),
    ("proper-interval", "path on 4 vertices", Graph.path(4)),
    ("comparability", "5-cycle", Graph.cycle(5)),
    ("comparability", "4-cycle", Graph.cycle(4)),
]


def main():
    for cls, label, h in SHOWCASE:
        f = preset(cls)
        v = solve_ord3(h, f)
        print(f"{label} against {cls} (forbidden patterns {f}):")
        for line in format_verdict(v).splitlines():
            print(f"    {line}")
    print()
    print("A circuit certificate lists pairs (x,y), read as 'x before y', that")
    print("lie in one strong component of the constraint digraph and close a")
    print("cycle, so no ordering can respect all of them.")


if __name__ == "__main__":
    main()
