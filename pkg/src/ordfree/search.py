"""Exact fallback search over strong components, with refutations.

The greedy loop can reach a component whose addition and whose flip both
close a circuit. For graphs this happens when earlier tie-breaks have
already ruled out every ordering; for bipartite pattern sets outside the
families covered by the priority rules, "no strong component holds a
circuit" does not even guarantee that an ordering exists. This module
decides such instances exactly. It propagates forced choices (a component whose undecided
outsection closes a circuit with D can only be flipped) and branches only
when propagation stalls. A negative answer comes with a refutation that
``verify.verify_refutation`` checks without running any search.

A refutation of a set F of pairs is a list of steps followed by a final
circuit. The step ``refute P { R }`` says that R refutes F plus P; from
then on F also holds the reverse of P. The final circuit must consist of
pairs reachable in the constraint digraph from F.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .constraint import Circuit, ComponentDecomposition, ConstraintDigraph, find_circuit
from .engine import DecisionState, InternalError, _undecided_outsection, component_keys


@dataclass(frozen=True)
class RefuteStep:
    pair: tuple
    proof: "Refutation"


@dataclass(frozen=True)
class Refutation:
    steps: tuple
    circuit: Circuit

    def size(self) -> int:
        """Number of steps, nested ones included."""
        return sum(1 + s.proof.size() for s in self.steps)


def _nodes(state: DecisionState, comps) -> np.ndarray:
    return np.concatenate([state.dec.members[d] for d in comps])


def _circuit_with(state: DecisionState, extra: np.ndarray) -> Circuit:
    g = state.g
    nodes = np.union1d(state.forward_nodes(), extra)
    circ = find_circuit(g.pair(int(v)) for v in nodes)
    if circ is None:
        raise InternalError("closure matrices report a circuit the pairs do not contain")
    return circ


def _propagate(state: DecisionState, steps: list) -> Optional[Circuit]:
    """Flip every component that cannot join D, to a fixpoint.

    Appends one step per forced flip. Returns the final circuit if some
    component can go neither way, else ``None``.
    """
    dec, status = state.dec, state.status
    progress = True
    while progress:
        progress = False
        for c in np.flatnonzero(status == 0).tolist():
            if status[c]:
                continue
            extra = _nodes(state, _undecided_outsection(state, c))
            if state.try_extend(extra) is not None:
                continue
            pair = state.g.pair(int(dec.members[c][0]))
            steps.append(RefuteStep(pair, Refutation((), _circuit_with(state, extra))))
            flip = _undecided_outsection(state, int(dec.dual[c]))
            extra = _nodes(state, flip)
            reach = state.try_extend(extra)
            if reach is None:
                return _circuit_with(state, extra)
            state.commit(flip, reach)
            progress = True
    return None


@dataclass
class _Frame:
    state: DecisionState
    steps: list
    component: int
    refuted: Optional[RefuteStep] = None


def _absorb(state: DecisionState, c: int) -> DecisionState:
    child = state.copy()
    comps = _undecided_outsection(child, c)
    reach = child.try_extend(_nodes(child, comps))
    if reach is None:
        raise InternalError(f"propagation left component {c} infeasible")
    child.commit(comps, reach)
    return child


def exact_search(
    g: ConstraintDigraph, dec: ComponentDecomposition, prefer: np.ndarray, trace: Optional[list] = None
) -> tuple[Optional[DecisionState], Optional[Refutation]]:
    """Decide all components or refute the empty decision set.

    Returns ``(state, None)`` with every component decided, or
    ``(None, refutation)``. Branching follows the greedy priority order,
    so the first branch at every node is the choice the greedy loop would
    make. ``trace`` receives ``(component, "branch" | "backtrack")``.
    """
    keys = component_keys(dec, prefer)

    def enter(state: DecisionState):
        steps: list = []
        circ = _propagate(state, steps)
        if circ is not None:
            return "unsat", Refutation(tuple(steps), circ)
        open_ = state.status == 0
        if not open_.any():
            return "sat", state
        green = [
            c for c in np.flatnonzero(open_).tolist() if not open_[dec.successors(c)].any()
        ]
        c = min(green, key=lambda d: (keys[d], d))
        return "branch", _Frame(state, steps, c)

    stack: list[_Frame] = []
    kind, val = enter(DecisionState(g, dec))
    while True:
        if kind == "sat":
            return val, None
        if kind == "branch":
            stack.append(val)
            if trace is not None:
                trace.append((val.component, "branch"))
            kind, val = enter(_absorb(val.state, val.component))
            continue
        if not stack:
            return None, val
        frame = stack[-1]
        if frame.refuted is None:
            pair = g.pair(int(dec.members[frame.component][0]))
            frame.refuted = RefuteStep(pair, val)
            if trace is not None:
                trace.append((frame.component, "backtrack"))
            kind, val = enter(_absorb(frame.state, int(dec.dual[frame.component])))
        else:
            stack.pop()
            kind, val = "unsat", Refutation(
                tuple(frame.steps) + (frame.refuted,) + val.steps, val.circuit
            )
