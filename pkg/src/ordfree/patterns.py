"""Ordered forbidden patterns on three vertices (and bipartite patterns on
up to four), pattern-set algebra and the named graph-class presets.

Slots are 1-based, matching the usual ``12``/``13``/``23`` notation. A
``TriPattern`` edge ``(i, j)`` with ``i < j`` means "the vertices in slots
``i`` and ``j`` are adjacent". A ``BiPattern`` edge ``(i, j)`` joins U-slot
``i`` to V-slot ``j`` (written ``ij'`` elsewhere).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Union

import numpy as np

TRI_SLOT_PAIRS = ((1, 2), (1, 3), (2, 3))
# Shapes (u_arity, v_arity) for which the constraint digraph defines arcs.
SUPPORTED_BI_SHAPES = ((3, 1), (1, 3), (2, 2))


@dataclass(frozen=True)
class TriPattern:
    """A 3-vertex ordered pattern, stored as a subset of {12, 13, 23}."""

    edges: frozenset

    def __post_init__(self):
        edges = frozenset(tuple(sorted(e)) for e in self.edges)
        if not edges <= set(TRI_SLOT_PAIRS):
            raise ValueError(f"invalid 3-pattern edges {sorted(edges)}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def of(cls, *labels: str) -> "TriPattern":
        """``TriPattern.of("12", "13")`` builds {12,13}."""
        return cls(frozenset((int(s[0]), int(s[1])) for s in labels))

    @classmethod
    def from_code(cls, code: int) -> "TriPattern":
        return cls(frozenset(p for bit, p in enumerate(TRI_SLOT_PAIRS) if code >> bit & 1))

    @property
    def code(self) -> int:
        # bit 0: 12, bit 1: 13, bit 2: 23
        return sum(1 << bit for bit, p in enumerate(TRI_SLOT_PAIRS) if p in self.edges)

    def complement(self) -> "TriPattern":
        return TriPattern(frozenset(TRI_SLOT_PAIRS) - self.edges)

    def reverse(self) -> "TriPattern":
        return TriPattern(frozenset((4 - j, 4 - i) for i, j in self.edges))

    def sort_key(self):
        return (len(self.edges), sorted(self.edges))

    def __str__(self):
        if not self.edges:
            return "empty"
        return ",".join(f"{i}{j}" for i, j in sorted(self.edges))


@dataclass(frozen=True)
class BiPattern:
    """A bipartite ordered pattern with ``u_arity`` U-slots and ``v_arity``
    V-slots. Edges are ``(i, j)`` pairs: U-slot ``i`` adjacent to V-slot ``j``.
    """

    u_arity: int
    v_arity: int
    edges: frozenset

    def __post_init__(self):
        l, r = self.u_arity, self.v_arity
        if l < 0 or r < 0 or l + r > 4:
            raise ValueError(f"bipartite pattern shape ({l},{r}) exceeds 4 vertices")
        edges = frozenset((int(i), int(j)) for i, j in self.edges)
        for i, j in edges:
            if not (1 <= i <= l and 1 <= j <= r):
                raise ValueError(f"edge {i}-{j} outside slot range U=1..{l}, V=1..{r}")
        object.__setattr__(self, "edges", edges)
        if (l, r) not in SUPPORTED_BI_SHAPES and not is_order_invariant(self):
            raise ValueError(
                f"unsupported bipartite shape ({l},{r}) for a pattern that depends on the order"
            )

    @property
    def shape(self) -> tuple[int, int]:
        return self.u_arity, self.v_arity

    def matrix(self) -> np.ndarray:
        """``u_arity x v_arity`` boolean adjacency between slots."""
        m = np.zeros(self.shape, dtype=bool)
        for i, j in self.edges:
            m[i - 1, j - 1] = True
        return m

    def complement(self) -> "BiPattern":
        full = {(i, j) for i in range(1, self.u_arity + 1) for j in range(1, self.v_arity + 1)}
        return BiPattern(self.u_arity, self.v_arity, frozenset(full - self.edges))

    def reverse(self) -> "BiPattern":
        l, r = self.shape
        return BiPattern(l, r, frozenset((l + 1 - i, r + 1 - j) for i, j in self.edges))

    def sort_key(self):
        return (self.shape, len(self.edges), sorted(self.edges))

    def __str__(self):
        body = ",".join(f"{i}-{j}" for i, j in sorted(self.edges)) or "empty"
        return f"U={self.u_arity},V={self.v_arity}:{body}"


Pattern = Union[TriPattern, BiPattern]


def is_order_invariant(p: Pattern) -> bool:
    """True when every (side-preserving) relabelling of slots fixes the edges.

    Such a pattern occurs under every ordering of a host or under none.
    """
    if isinstance(p, TriPattern):
        return p.code in (0, 7)
    for su in permutations(range(1, p.u_arity + 1)):
        for sv in permutations(range(1, p.v_arity + 1)):
            moved = {(su[i - 1], sv[j - 1]) for i, j in p.edges}
            if moved != p.edges:
                return False
    return True


@dataclass(frozen=True)
class PatternSet:
    """Canonical (sorted, deduplicated) set of patterns of one kind.

    ``kind`` is ``"tri"`` for unipartite 3-patterns and ``"bi"`` for
    bipartite patterns.
    """

    kind: str
    members: tuple

    def __post_init__(self):
        if self.kind not in ("tri", "bi"):
            raise ValueError(f"unknown pattern-set kind {self.kind!r}")
        cls = TriPattern if self.kind == "tri" else BiPattern
        members = set(self.members)
        for m in members:
            if not isinstance(m, cls):
                raise TypeError(f"{self.kind} pattern set cannot hold {m!r}")
        object.__setattr__(self, "members", tuple(sorted(members, key=lambda m: m.sort_key())))

    @classmethod
    def tri(cls, *patterns: Iterable[str]) -> "PatternSet":
        """``PatternSet.tri(["13"], ["13", "23"])`` is the interval set."""
        return cls("tri", tuple(TriPattern.of(*p) for p in patterns))

    @classmethod
    def from_tri_mask(cls, mask: int) -> "PatternSet":
        """Subset of all eight 3-patterns selected by bit ``code`` of ``mask``."""
        return cls("tri", tuple(TriPattern.from_code(c) for c in range(8) if mask >> c & 1))

    @property
    def tri_mask(self) -> int:
        assert self.kind == "tri"
        return sum(1 << p.code for p in self.members)

    def __iter__(self) -> Iterator[Pattern]:
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, p):
        return p in self.members

    def without(self, patterns: Iterable[Pattern]) -> "PatternSet":
        drop = set(patterns)
        return PatternSet(self.kind, tuple(m for m in self.members if m not in drop))

    def __str__(self):
        return ";".join(str(m) for m in self.members)


def _bi(l, r, *edges):
    return BiPattern(l, r, frozenset((int(e[0]), int(e[1])) for e in edges))


_EDGE_TOKEN = re.compile(r"^(\d)-(\d)$")
_SHAPE = re.compile(r"^U=(\d+),V=(\d+):(.*)$")


def _parse_tri(chunk: str) -> TriPattern:
    if chunk == "empty":
        return TriPattern(frozenset())
    if chunk == "triangle":
        return TriPattern(frozenset(TRI_SLOT_PAIRS))
    edges = set()
    for tok in chunk.split(","):
        tok = tok.strip()
        if tok not in ("12", "13", "23"):
            raise ValueError(f"unknown pattern token {tok!r}")
        edges.add((int(tok[0]), int(tok[1])))
    return TriPattern(frozenset(edges))


def _parse_bi(chunk: str) -> BiPattern:
    m = _SHAPE.match(chunk.replace(" ", ""))
    if not m:
        raise ValueError(f"bipartite pattern must look like 'U=l,V=r:i-j,...', got {chunk!r}")
    l, r, body = int(m.group(1)), int(m.group(2)), m.group(3)
    edges = set()
    if body != "empty":
        for tok in body.split(","):
            em = _EDGE_TOKEN.match(tok)
            if not em:
                raise ValueError(f"malformed edge token {tok!r}; expected 'i-j' such as 1-2")
            edges.add((int(em.group(1)), int(em.group(2))))
    return BiPattern(l, r, frozenset(edges))


def parse_pattern_set(spec: str) -> PatternSet:
    """Parse ``"13;13,23"`` or ``"U=2,V=2:1-2,2-1;U=2,V=2:1-2,2-1,2-2"``.

    Raises ``ValueError`` on unknown tokens, out-of-range slot labels or
    unsupported bipartite shapes.
    """
    chunks = [c.strip() for c in spec.strip().split(";")]
    if not chunks or any(not c for c in chunks):
        raise ValueError(f"empty pattern in {spec!r}")
    bipartite = [c.startswith("U=") for c in chunks]
    if any(bipartite) and not all(bipartite):
        raise ValueError("cannot mix unipartite and bipartite patterns")
    if all(bipartite):
        return PatternSet("bi", tuple(_parse_bi(c) for c in chunks))
    return PatternSet("tri", tuple(_parse_tri(c) for c in chunks))


def complement_set(f: PatternSet) -> PatternSet:
    return PatternSet(f.kind, tuple(p.complement() for p in f))


def reverse_set(f: PatternSet) -> PatternSet:
    return PatternSet(f.kind, tuple(p.reverse() for p in f))


NICE_SETS = (
    PatternSet.tri(["13"]),
    PatternSet.tri(["12", "23"]),
    PatternSet.tri(["13"], ["13", "23"]),
    PatternSet.tri(["13"], ["12", "13"], ["13", "23"]),
)


def is_nice(f: PatternSet) -> bool:
    return f.kind == "tri" and f in NICE_SETS


PRESETS = {
    "chordal": PatternSet.tri(["12", "13"]),
    "interval": PatternSet.tri(["13"], ["13", "23"]),
    "proper-interval": PatternSet.tri(["13"], ["12", "13"], ["13", "23"]),
    "comparability": PatternSet.tri(["12", "23"]),
    "convex-bipartite": PatternSet("bi", (_bi(3, 1, "11", "31"),)),
    "bipartite-permutation": PatternSet(
        "bi", (_bi(2, 2, "11", "12", "21"), _bi(2, 2, "12", "21"), _bi(2, 2, "12", "21", "22"))
    ),
    "co-circular-arc-bigraph": PatternSet("bi", (_bi(2, 2, "12", "21"), _bi(2, 2, "12", "21", "22"))),
}


def preset(name: str) -> PatternSet:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown class {name!r}; choose from {', '.join(PRESETS)}") from None
