"""Close the certification loop: solve, serialize, parse back, verify.

The checkers share no code with the solver. An ordering is checked by
scanning all triples; a circuit by recomputing reachability in the
constraint digraph. A tampered certificate is caught.

    python3 demos/certificate_loop.py
"""

from ordfree import Graph, format_verdict, parse_certificate, preset, solve_ord3, verify_rejection
from ordfree.constraint import Circuit
from ordfree.engine import CircuitCertificate


def main():
    h, f = Graph.cycle(5), preset("chordal")
    text = format_verdict(solve_ord3(h, f))
    print("Solver output for the 5-cycle against the chordal patterns:")
    print(text)
    parsed = parse_certificate(text)
    cert = CircuitCertificate(parsed.circuit, parsed.circuit.component)
    print("independent check of the parsed circuit:", verify_rejection(h, f, cert))

    forged = CircuitCertificate(Circuit(((0, 2), (2, 0)), parsed.circuit.component), parsed.circuit.component)
    print("the same check on a forged circuit (0,2) (2,0):", verify_rejection(h, f, forged))

    path = Graph.path(5)
    text = format_verdict(solve_ord3(path, f))
    print()
    print("The path on 5 vertices is chordal:", text.strip())


if __name__ == "__main__":
    main()
