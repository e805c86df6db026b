"""Line-oriented text form of verdicts and certificates.

Acceptance::

    ORDER: 2 0 1                (graphs)
    ORDER-U: 0 1 / ORDER-V: 1 0 (bipartite graphs, two lines)

Rejection::

    NO
    CERT circuit: (0,1) (1,0) in component #3
    CERT invariant-pattern: empty on {0,2,4}
    CERT refutation: refute (V0,V1) { circuit (U0,U3) (U3,U2) (U2,U0) } ; circuit (U1,U3) (U3,U2) (U2,U1)

Bipartite vertices are written with their side letter, e.g. ``(U0,U2)`` or
``{U0,U1,V3}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .bipartite import BiVerdict
from .constraint import Circuit
from .engine import CircuitCertificate, InvariantCertificate, Verdict
from .graph import ParseError
from .patterns import BiPattern, Pattern, parse_pattern_set
from .search import Refutation, RefuteStep


def _vertex(v) -> str:
    if isinstance(v, tuple):
        return f"{'UV'[v[0]]}{v[1]}"
    return str(v)


def _pairs(pairs) -> str:
    return " ".join(f"({_vertex(a)},{_vertex(b)})" for a, b in pairs)


def format_refutation(ref: Refutation) -> str:
    parts = [f"refute {_pairs([s.pair])} {{ {format_refutation(s.proof)} }} ;" for s in ref.steps]
    return " ".join(parts + [f"circuit {_pairs(ref.circuit.pairs)}"])


def format_certificate(cert) -> str:
    if isinstance(cert, CircuitCertificate):
        return f"CERT circuit: {_pairs(cert.circuit.pairs)} in component #{cert.component}"
    if isinstance(cert, Refutation):
        return f"CERT refutation: {format_refutation(cert)}"
    if isinstance(cert, InvariantCertificate):
        if isinstance(cert.pattern, BiPattern):
            us, vs = cert.vertices
            names = [f"U{u}" for u in us] + [f"V{v}" for v in vs]
        else:
            names = [str(v) for v in cert.vertices]
        return f"CERT invariant-pattern: {cert.pattern} on {{{','.join(names)}}}"
    raise TypeError(f"unknown certificate {cert!r}")


def format_verdict(v) -> str:
    if isinstance(v, BiVerdict):
        if v.accepted:
            return (
                "ORDER-U: " + " ".join(map(str, v.order_u)) + "\n"
                "ORDER-V: " + " ".join(map(str, v.order_v)) + "\n"
            )
    elif isinstance(v, Verdict):
        if v.accepted:
            return "ORDER: " + " ".join(map(str, v.ordering)) + "\n"
    else:
        raise TypeError(f"unknown verdict {v!r}")
    return "NO\n" + format_certificate(v.certificate) + "\n"


@dataclass(frozen=True)
class ParsedCertificate:
    """What ``parse_certificate`` found: exactly one of the fields is set
    (both orders for a bipartite ordering)."""

    ordering: Optional[tuple] = None
    order_u: Optional[tuple] = None
    order_v: Optional[tuple] = None
    circuit: Optional[Circuit] = None
    invariant: Optional[tuple] = None  # (pattern, vertices)
    refutation: Optional[Refutation] = None


_VERTEX = r"([UV]?)(\d+)"
_PAIR = re.compile(rf"\(\s*{_VERTEX}\s*,\s*{_VERTEX}\s*\)")
_CIRCUIT = re.compile(r"^CERT circuit:\s*(.*?)\s+in component #(\d+)\s*$")
_INVARIANT = re.compile(r"^CERT invariant-pattern:\s*(.*?)\s+on\s*\{(.*)\}\s*$")
_REFUTATION = re.compile(r"^CERT refutation:\s*(.*)$")
_TOKEN = re.compile(rf"\s*(refute|circuit|\{{|\}}|;|\(\s*{_VERTEX}\s*,\s*{_VERTEX}\s*\))")


def _parse_vertex(side: str, num: str):
    return (0 if side == "U" else 1, int(num)) if side else int(num)


def _ints(body: str, lineno: int) -> tuple:
    try:
        return tuple(int(t) for t in body.split())
    except ValueError:
        raise ParseError("non-integer vertex in order line", lineno) from None


def parse_certificate(text: str) -> ParsedCertificate:
    """Read back the output of ``format_verdict``."""
    order = order_u = order_v = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line == "NO":
            continue
        if line.startswith("ORDER-U:"):
            order_u = _ints(line[8:], lineno)
        elif line.startswith("ORDER-V:"):
            order_v = _ints(line[8:], lineno)
        elif line.startswith("ORDER:"):
            order = _ints(line[6:], lineno)
        elif m := _CIRCUIT.match(line):
            pairs = []
            for pm in _PAIR.finditer(m.group(1)):
                pairs.append((_parse_vertex(pm.group(1), pm.group(2)), _parse_vertex(pm.group(3), pm.group(4))))
            if not pairs or _PAIR.sub("", m.group(1)).strip():
                raise ParseError("malformed circuit pair list", lineno)
            return ParsedCertificate(circuit=Circuit(tuple(pairs), int(m.group(2))))
        elif m := _REFUTATION.match(line):
            return ParsedCertificate(refutation=_parse_refutation(m.group(1), lineno))
        elif m := _INVARIANT.match(line):
            try:
                (pattern,) = parse_pattern_set(m.group(1)).members
            except ValueError as e:
                raise ParseError(str(e), lineno) from None
            tokens = [t.strip() for t in m.group(2).split(",") if t.strip()]
            return ParsedCertificate(invariant=(pattern, _invariant_vertices(pattern, tokens, lineno)))
        else:
            raise ParseError(f"unrecognised certificate line {line!r}", lineno)
    if order is not None:
        return ParsedCertificate(ordering=order)
    if order_u is not None and order_v is not None:
        return ParsedCertificate(order_u=order_u, order_v=order_v)
    raise ParseError("no certificate found")


def _invariant_vertices(pattern: Pattern, tokens: list, lineno: int):
    if isinstance(pattern, BiPattern):
        us, vs = [], []
        for t in tokens:
            if not re.fullmatch(r"[UV]\d+", t):
                raise ParseError(f"bad bipartite vertex {t!r}", lineno)
            (us if t[0] == "U" else vs).append(int(t[1:]))
        return tuple(us), tuple(vs)
    try:
        return tuple(int(t) for t in tokens)
    except ValueError:
        raise ParseError("non-integer vertex in certificate", lineno) from None


def _tokens(body: str, lineno: int) -> list:
    out, pos = [], 0
    body = body.rstrip()
    while pos < len(body):
        m = _TOKEN.match(body, pos)
        if not m:
            raise ParseError(f"unexpected text in refutation at {body[pos:pos + 12]!r}", lineno)
        if m.group(2) is not None:
            out.append((_parse_vertex(m.group(2), m.group(3)), _parse_vertex(m.group(4), m.group(5))))
        else:
            out.append(m.group(1))
        pos = m.end()
    return out


def _parse_refutation(body: str, lineno: int) -> Refutation:
    tokens = _tokens(body, lineno)
    pos = 0

    def expect(tok):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != tok:
            raise ParseError(f"refutation: expected {tok!r}", lineno)
        pos += 1

    def refutation() -> Refutation:
        nonlocal pos
        steps = []
        while pos < len(tokens) and tokens[pos] == "refute":
            pos += 1
            if pos >= len(tokens) or not isinstance(tokens[pos], tuple):
                raise ParseError("refutation: 'refute' needs a pair", lineno)
            pair = tokens[pos]
            pos += 1
            expect("{")
            proof = refutation()
            expect("}")
            expect(";")
            steps.append(RefuteStep(pair, proof))
        expect("circuit")
        pairs = []
        while pos < len(tokens) and isinstance(tokens[pos], tuple):
            pairs.append(tokens[pos])
            pos += 1
        if not pairs:
            raise ParseError("refutation: empty circuit", lineno)
        return Refutation(tuple(steps), Circuit(tuple(pairs)))

    ref = refutation()
    if pos != len(tokens):
        raise ParseError("refutation: trailing tokens", lineno)
    return ref
