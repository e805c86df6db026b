"""Command-line front end.

Exit codes: 0 orderable / certificate valid, 1 not orderable / certificate
invalid, 2 usage or parse error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bipartite import solve_bord4
from .engine import CircuitCertificate, InternalError, InvariantCertificate, solve_ord3
from .graph import ParseError, parse_bigraph, parse_graph
from .patterns import PRESETS, parse_pattern_set, preset
from .serialize import format_verdict, parse_certificate
from .verify import (
    brute_force_bord,
    brute_force_ord,
    check_bi_ordering_free,
    check_ordering_free,
    verify_rejection,
)

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _patterns(args):
    if (args.pattern is None) == (args.preset is None):
        raise UsageError("give exactly one of --pattern or --preset")
    if args.preset is not None:
        return preset(args.preset)
    return parse_pattern_set(args.pattern)


def _host(path: str, kind: str):
    text = _read(path)
    return parse_bigraph(text) if kind == "bi" else parse_graph(text)


def _solve(host, f):
    return solve_bord4(host, f) if f.kind == "bi" else solve_ord3(host, f)


def cmd_order(args, out) -> int:
    f = _patterns(args)
    if f.kind != "tri":
        raise UsageError("'order' takes unipartite patterns; use 'border' for bipartite ones")
    v = solve_ord3(_host(args.graph, "tri"), f)
    out.write(format_verdict(v))
    return EXIT_YES if v.accepted else EXIT_NO


def cmd_border(args, out) -> int:
    f = _patterns(args)
    if f.kind != "bi":
        raise UsageError("'border' takes bipartite patterns; use 'order' for unipartite ones")
    v = solve_bord4(_host(args.graph, "bi"), f)
    out.write(format_verdict(v))
    return EXIT_YES if v.accepted else EXIT_NO


def cmd_recognize(args, out) -> int:
    f = preset(args.cls)
    v = _solve(_host(args.graph, f.kind), f)
    out.write(f"{args.graph} {'is' if v.accepted else 'is not'} {args.cls}\n")
    return EXIT_YES if v.accepted else EXIT_NO


def _check_certificate(host, f, cert) -> bool:
    if cert.ordering is not None:
        return f.kind == "tri" and check_ordering_free(host, f, cert.ordering) is None
    if cert.order_u is not None:
        return f.kind == "bi" and check_bi_ordering_free(host, f, cert.order_u, cert.order_v) is None
    if cert.invariant is not None:
        pattern, vertices = cert.invariant
        return verify_rejection(host, f, InvariantCertificate(pattern, vertices))
    if cert.refutation is not None:
        return verify_rejection(host, f, cert.refutation)
    return verify_rejection(host, f, CircuitCertificate(cert.circuit, cert.circuit.component))


def cmd_certify(args, out) -> int:
    f = _patterns(args)
    host = _host(args.graph, f.kind)
    cert = parse_certificate(_read(args.cert))
    try:
        ok = _check_certificate(host, f, cert)
    except ValueError:
        ok = False
    out.write("VALID\n" if ok else "INVALID\n")
    return EXIT_YES if ok else EXIT_NO


def cmd_oracle(args, out) -> int:
    f = _patterns(args)
    host = _host(args.graph, f.kind)
    if f.kind == "bi":
        ok, witness = brute_force_bord(host, f)
    else:
        ok, witness = brute_force_ord(host, f)
    if not ok:
        out.write("NO (exhaustive)\n")
        return EXIT_NO
    out.write("YES (exhaustive)\n")
    if f.kind == "bi":
        out.write("ORDER-U: " + " ".join(map(str, witness[0])) + "\n")
        out.write("ORDER-V: " + " ".join(map(str, witness[1])) + "\n")
    else:
        out.write("ORDER: " + " ".join(map(str, witness)) + "\n")
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordfree", description="Orderings of graph vertices that avoid forbidden ordered patterns."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def solving(name, help_, graph_help):
        p = sub.add_parser(name, help=help_)
        p.add_argument("graph", help=graph_help)
        p.add_argument("--pattern", help="pattern set, e.g. '13;13,23' or 'U=2,V=2:1-2,2-1'")
        p.add_argument("--preset", choices=sorted(PRESETS), help="named graph class")
        return p

    solving("order", "decide an F-free ordering of a graph", "graph file ('n m' + edges), '-' for stdin")
    solving("border", "decide F-free side orderings of a bipartite graph", "bigraph file ('p q m' + edges)")
    p = sub.add_parser("recognize", help="test membership in a named class")
    p.add_argument("graph")
    p.add_argument("--class", dest="cls", required=True, choices=sorted(PRESETS))
    p = solving("certify", "check a certificate or ordering produced by order/border", "graph or bigraph file")
    p.add_argument("--cert", required=True, help="file holding ORDER/NO+CERT lines")
    solving("oracle", "exhaustive decision for small inputs", "graph or bigraph file")
    return parser


COMMANDS = {
    "order": cmd_order,
    "border": cmd_border,
    "recognize": cmd_recognize,
    "certify": cmd_certify,
    "oracle": cmd_oracle,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_YES
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ParseError, ValueError) as e:
        err.write(f"ordfree {args.command}: {e}\n")
        return EXIT_USAGE
    except InternalError as e:
        err.write(f"ordfree {args.command}: internal error: {e}\n")
        if e.dump:
            err.write(e.dump)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
