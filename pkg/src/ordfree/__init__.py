"""Certifying orderings of graph vertices that avoid small forbidden ordered
patterns, for 3-vertex patterns on graphs and 4-vertex patterns on
bipartite graphs."""

from .constraint import (
    Circuit,
    ComponentDecomposition,
    ConstraintDigraph,
    build_bi,
    build_tri,
    find_circuit,
    green_components,
    insection,
    outsection,
    strong_components,
)
from .bipartite import BiVerdict, find_bi_invertible_pair, solve_bord4
from .engine import (
    CircuitCertificate,
    FlipFailed,
    InternalError,
    InvariantCertificate,
    Verdict,
    extract_ordering,
    find_invertible_pair,
    select_component,
    solve_ord3,
)
from .graph import (
    BipartiteGraph,
    Graph,
    ParseError,
    complement,
    find_independent_triple,
    find_order_invariant_occurrence,
    find_triangle,
    parse_bigraph,
    parse_graph,
)
from .patterns import (
    PRESETS,
    BiPattern,
    PatternSet,
    TriPattern,
    complement_set,
    is_nice,
    is_order_invariant,
    parse_pattern_set,
    preset,
    reverse_set,
)
from .search import Refutation, RefuteStep, exact_search
from .serialize import format_verdict, parse_certificate
from .verify import (
    Violation,
    brute_force_bord,
    brute_force_ord,
    check_bi_ordering_free,
    check_ordering_free,
    verify_certificate,
    verify_invariant_certificate,
    verify_refutation,
    verify_rejection,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "BiPattern",
    "BiVerdict",
    "brute_force_bord",
    "brute_force_ord",
    "build_bi",
    "build_tri",
    "check_bi_ordering_free",
    "check_ordering_free",
    "Circuit",
    "CircuitCertificate",
    "complement",
    "complement_set",
    "ComponentDecomposition",
    "ConstraintDigraph",
    "exact_search",
    "extract_ordering",
    "find_bi_invertible_pair",
    "find_circuit",
    "find_independent_triple",
    "find_invertible_pair",
    "find_order_invariant_occurrence",
    "find_triangle",
    "FlipFailed",
    "format_verdict",
    "Graph",
    "green_components",
    "insection",
    "InternalError",
    "InvariantCertificate",
    "is_nice",
    "is_order_invariant",
    "outsection",
    "parse_bigraph",
    "parse_certificate",
    "parse_graph",
    "parse_pattern_set",
    "ParseError",
    "PatternSet",
    "preset",
    "PRESETS",
    "Refutation",
    "RefuteStep",
    "reverse_set",
    "select_component",
    "solve_bord4",
    "solve_ord3",
    "strong_components",
    "TriPattern",
    "Verdict",
    "verify_certificate",
    "verify_invariant_certificate",
    "verify_refutation",
    "verify_rejection",
    "Violation",
]
