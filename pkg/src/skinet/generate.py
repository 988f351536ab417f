"""Seed-driven random skillsets for property and equivalence testing.

``random_skillset(seed)`` is a pure function of its arguments, so any
failing seed can be replayed.  Output is normalized through the printer
and parser so state order matches what a hand-written file would give.
"""
from __future__ import annotations

import random

from .model import TRUE, And, Atom, Condition, Event, Not, Or, Resource, Skill, Skillset, Terminal
from .parser import format_skillset, parse_skillset


def _resource(rng: random.Random, name: str, max_states: int) -> Resource:
    k = rng.randint(1, max_states)
    states = [f"s{i}" for i in range(k)]
    pairs = [(a, b) for a in states for b in states if a != b]
    transitions = [p for p in pairs if rng.random() < 0.5]
    # every non-initial state needs an incoming move to be expressible
    for s in states[1:]:
        if not any(b == s for _, b in transitions):
            transitions.append((rng.choice([x for x in states if x != s]), s))
    rng.shuffle(transitions)
    return Resource(name, tuple(states), states[0], tuple(transitions))


def _atom(rng, resources):
    r = rng.choice(resources)
    return Atom(r.name, rng.choice(r.states))


def _guard(rng, resources, max_atoms=3):
    parts = [_atom(rng, resources) for _ in range(rng.randint(1, max_atoms))]
    parts = [Not(p) if rng.random() < 0.2 else p for p in parts]
    if len(parts) == 1:
        return parts[0]
    return (And if rng.random() < 0.6 else Or)(tuple(parts))


def _effects(rng, resources, lo=0, hi=2):
    chosen = rng.sample(resources, min(len(resources), rng.randint(lo, hi)))
    return tuple((r.name, rng.choice(r.states)) for r in chosen)


def random_skillset(seed: int, max_resources: int = 3, max_states: int = 3,
                    max_skills: int = 3, max_events: int = 3) -> Skillset:
    rng = random.Random(seed)
    resources = [_resource(rng, f"r{i}", max_states) for i in range(rng.randint(1, max_resources))]

    events = []
    for i in range(rng.randint(0, max_events)):
        guard = _guard(rng, resources, 2) if rng.random() < 0.7 else None
        effects = _effects(rng, resources, 0 if guard else 1, 2)
        events.append(Event(f"ev{i}", guard or TRUE, effects))

    skills = []
    for i in range(rng.randint(0, max_skills)):
        pre = tuple(Condition(f"p{j}", _guard(rng, resources),
                              _effects(rng, resources, 0, 1) if rng.random() < 0.3 else ())
                    for j in range(rng.randint(0, 2)))
        inv = tuple(Condition(f"v{j}", _guard(rng, resources, 2),
                              _effects(rng, resources, 0, 1) if rng.random() < 0.5 else ())
                    for j in range(rng.randint(0, 2)))
        succ = tuple(Terminal(f"ok{j}", _effects(rng, resources, 0, 2))
                     for j in range(rng.randint(1, 2)))
        fail = tuple(Terminal(f"ko{j}", _effects(rng, resources, 0, 1))
                     for j in range(rng.randint(0, 1)))
        interrupts = (_effects(rng, resources, 0, 1),) if rng.random() < 0.4 else ()
        skills.append(Skill(f"k{i}", pre, _effects(rng, resources, 0, 2), inv, succ, fail,
                            interrupts))

    ss = Skillset(f"rand{seed}", tuple(resources), tuple(events), tuple(skills))
    return parse_skillset(format_skillset(ss))
