"""1-safe Petri nets with a two-level transition priority.

Markings are plain ints used as bit vectors: bit ``p`` is set iff place
``p`` holds a token.  Ints hash and compare canonically, which is all the
state-space dedup needs.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Any, Iterable, Optional

Marking = int


class Priority(str, Enum):
    NORMAL = "normal"
    INVARIANT_FAILURE = "invariant_failure"


class NotFireable(Exception):
    pass


class SafetyViolation(Exception):
    """A firing would put a second token on a place."""

    def __init__(self, transition: str, places: list[str]):
        self.transition, self.places = transition, places
        super().__init__(f"firing {transition} overfills {', '.join(places)}")


@dataclass(frozen=True)
class Place:
    name: str
    role: Any = None


@dataclass(frozen=True)
class Transition:
    name: str
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    priority: Priority = Priority.NORMAL
    # skillset-level step this transition was generated from, plus the
    # (name, origin) pairs of structurally identical transitions merged into it
    origin: Any = None
    aliases: tuple = ()

    @property
    def labels(self) -> tuple:
        return (self.origin,) + tuple(lab for _, lab in self.aliases)


def mask(places: Iterable[int]) -> int:
    m = 0
    for p in places:
        m |= 1 << p
    return m


@dataclass(frozen=True)
class PetriNet:
    name: str
    places: tuple[Place, ...]
    transitions: tuple[Transition, ...]
    initial_marking: Marking = 0
    options: Any = field(default=None, compare=False)
    report: Any = field(default=None, compare=False)

    def __post_init__(self):
        for kind, items in (("place", self.places), ("transition", self.transitions)):
            seen = set()
            for it in items:
                if it.name in seen:
                    raise ValueError(f"duplicate {kind} name {it.name!r}")
                seen.add(it.name)
        n = len(self.places)
        for t in self.transitions:
            if any(not 0 <= p < n for p in t.inputs + t.outputs):
                raise ValueError(f"transition {t.name!r} references an unknown place")

    @cached_property
    def in_masks(self) -> list[int]:
        return [mask(t.inputs) for t in self.transitions]

    @cached_property
    def out_masks(self) -> list[int]:
        return [mask(t.outputs) for t in self.transitions]

    @cached_property
    def urgent(self) -> list[int]:
        return [i for i, t in enumerate(self.transitions) if t.priority is Priority.INVARIANT_FAILURE]

    @cached_property
    def place_index(self) -> dict[str, int]:
        return {p.name: i for i, p in enumerate(self.places)}

    @cached_property
    def transition_index(self) -> dict[str, int]:
        return {t.name: i for i, t in enumerate(self.transitions)}

    def marking(self, names: Iterable[str]) -> Marking:
        return mask(self.place_index[n] for n in names)

    def marked(self, m: Marking) -> list[str]:
        return [p.name for i, p in enumerate(self.places) if m >> i & 1]

    def with_transitions(self, transitions) -> "PetriNet":
        return replace(self, transitions=tuple(transitions))


def enabled(net: PetriNet, m: Marking) -> set[int]:
    return {i for i, im in enumerate(net.in_masks) if m & im == im}


def fireable(net: PetriNet, m: Marking) -> set[int]:
    """Enabled transitions after priority filtering.

    If any invariant-failure transition is enabled, only those may fire.
    """
    ins = net.in_masks
    urgent = {i for i in net.urgent if m & ins[i] == ins[i]}
    return urgent if urgent else enabled(net, m)


def successor(net: PetriNet, m: Marking, t: int) -> Marking:
    """Fire ``t`` without the priority check; enabledness is assumed."""
    im, om = net.in_masks[t], net.out_masks[t]
    rest = m & ~im
    clash = rest & om
    if clash:
        raise SafetyViolation(net.transitions[t].name, net.marked(clash))
    return rest | om


def fire(net: PetriNet, m: Marking, t: int) -> Marking:
    if t not in fireable(net, m):
        raise NotFireable(net.transitions[t].name)
    return successor(net, m, t)


def find_transition(net: PetriNet, name: str) -> Optional[int]:
    return net.transition_index.get(name)
