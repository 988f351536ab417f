"""Breadth-first reachability under priority semantics.

States are numbered in discovery order, successors are expanded in
ascending transition id, and each state remembers the edge that first
reached it.  Walking those parent edges back therefore gives the shortest
path, with ties broken by transition id.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from .petri import Marking, PetriNet, SafetyViolation, fireable, successor

DEFAULT_LIMIT = 1_000_000


class StateLimitExceeded(Exception):
    pass


@dataclass(frozen=True)
class Path:
    states: tuple[int, ...]
    transitions: tuple[int, ...]

    def __len__(self):
        return len(self.transitions)


@dataclass(frozen=True)
class UnsafeFiring:
    state: int
    transition: int
    places: tuple[str, ...]


@dataclass
class ReachabilityGraph:
    net: PetriNet
    states: list[Marking] = field(default_factory=list)
    edges: list[tuple[int, int, int]] = field(default_factory=list)
    succ: list[list[tuple[int, int]]] = field(default_factory=list)
    parent: list[Optional[tuple[int, int]]] = field(default_factory=list)
    deadlock: list[bool] = field(default_factory=list)
    # only populated when exploring with strict_safety=False
    unsafe: list[UnsafeFiring] = field(default_factory=list)

    def __len__(self):
        return len(self.states)

    def marked(self, s: int) -> list[str]:
        return self.net.marked(self.states[s])

    def predecessors(self) -> list[list[int]]:
        pred = [[] for _ in self.states]
        for src, _, dst in self.edges:
            pred[dst].append(src)
        return pred


def explore(net: PetriNet, limit: int = DEFAULT_LIMIT, strict_safety: bool = True) -> ReachabilityGraph:
    """Explore every marking reachable from the initial one.

    With ``strict_safety`` a firing that would double-mark a place raises
    :class:`SafetyViolation`; otherwise it is recorded in ``graph.unsafe``
    and its target is not explored.
    """
    g = ReachabilityGraph(net)
    index: dict[Marking, int] = {}

    def add(m, parent):
        if len(g.states) >= limit:
            raise StateLimitExceeded(f"more than {limit} reachable states")
        index[m] = len(g.states)
        g.states.append(m)
        g.succ.append([])
        g.parent.append(parent)
        g.deadlock.append(False)
        return index[m]

    add(net.initial_marking, None)
    queue = deque([0])
    while queue:
        s = queue.popleft()
        m = g.states[s]
        ts = sorted(fireable(net, m))
        g.deadlock[s] = not ts
        for t in ts:
            try:
                m2 = successor(net, m, t)
            except SafetyViolation as e:
                if strict_safety:
                    raise
                g.unsafe.append(UnsafeFiring(s, t, tuple(e.places)))
                continue
            s2 = index.get(m2)
            if s2 is None:
                s2 = add(m2, (s, t))
                queue.append(s2)
            g.edges.append((s, t, s2))
            g.succ[s].append((t, s2))
    return g


def backward_reachable(graph: ReachabilityGraph, goal: Callable[[Marking], bool]) -> set[int]:
    """States from which some path reaches a ``goal`` marking (EF goal)."""
    pred = graph.predecessors()
    found = {s for s, m in enumerate(graph.states) if goal(m)}
    stack = list(found)
    while stack:
        s = stack.pop()
        for p in pred[s]:
            if p not in found:
                found.add(p)
                stack.append(p)
    return found


def path_to_state(graph: ReachabilityGraph, s: int) -> Path:
    states, trans = [s], []
    while graph.parent[s] is not None:
        s, t = graph.parent[s]
        states.append(s)
        trans.append(t)
    return Path(tuple(reversed(states)), tuple(reversed(trans)))


def path_to(graph: ReachabilityGraph, target: Callable[[Marking], bool]) -> Optional[Path]:
    for s, m in enumerate(graph.states):
        if target(m):
            return path_to_state(graph, s)
    return None


def to_dot(graph: ReachabilityGraph) -> str:
    net = graph.net
    lines = [f'digraph "{net.name}" {{', "  node [shape=box];"]
    for s in range(len(graph.states)):
        label = "\\n".join(graph.marked(s))
        extra = ", peripheries=2" if graph.deadlock[s] else ""
        lines.append(f'  s{s} [label="{s}\\n{label}"{extra}];')
    for src, t, dst in graph.edges:
        lines.append(f'  s{src} -> s{dst} [label="{net.transitions[t].name}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
