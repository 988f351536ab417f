"""Skillset domain types and the structural validator.

A skillset bundles resources (small state machines), events (external
actions on resources) and skills (guarded, stateful robot actions).  All
types here are frozen dataclasses; collections are tuples so values can be
hashed, compared and shared freely.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

# ---------------------------------------------------------------------------
# guards


@dataclass(frozen=True)
class Atom:
    """Leaf ``resource == state``."""

    resource: str
    state: str


@dataclass(frozen=True)
class Not:
    arg: "Guard"


@dataclass(frozen=True)
class And:
    args: tuple["Guard", ...]


@dataclass(frozen=True)
class Or:
    args: tuple["Guard", ...]


@dataclass(frozen=True)
class Const:
    value: bool


Guard = Union[Atom, Not, And, Or, Const]

TRUE = Const(True)
FALSE = Const(False)


def conjunction(guards) -> Guard:
    """AND of ``guards``; the empty conjunction is TRUE."""
    guards = tuple(guards)
    if not guards:
        return TRUE
    if len(guards) == 1:
        return guards[0]
    return And(guards)


def negate(guard: Guard) -> Guard:
    if isinstance(guard, Const):
        return Const(not guard.value)
    return Not(guard)


def atoms(guard: Guard) -> Iterator[Atom]:
    """Leaves of ``guard`` in left-to-right order."""
    if isinstance(guard, Atom):
        yield guard
    elif isinstance(guard, Not):
        yield from atoms(guard.arg)
    elif isinstance(guard, (And, Or)):
        for a in guard.args:
            yield from atoms(a)


# ---------------------------------------------------------------------------
# skillset elements

# An effect set is an ordered tuple of (resource, destination state) pairs.
# Duplicated resources are representable so the validator can report them.
Effects = tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class Resource:
    name: str
    states: tuple[str, ...]
    initial: str
    transitions: tuple[tuple[str, str], ...] = ()

    def predecessors(self, state: str) -> tuple[str, ...]:
        """States that may move to ``state``: declared sources, then ``state`` itself."""
        preds = [src for src, dst in self.transitions if dst == state]
        preds = list(dict.fromkeys(preds))
        if state not in preds:
            preds.append(state)
        return tuple(preds)

    def allows(self, src: str, dst: str) -> bool:
        return src == dst or (src, dst) in self.transitions


@dataclass(frozen=True)
class Event:
    name: str
    guard: Guard = TRUE
    effects: Effects = ()


@dataclass(frozen=True)
class Condition:
    """A named precondition or invariant with optional failure effects."""

    name: str
    guard: Guard
    effects: Effects = ()


@dataclass(frozen=True)
class Terminal:
    """A named success or failure outcome."""

    name: str
    effects: Effects = ()


@dataclass(frozen=True)
class Skill:
    name: str
    preconditions: tuple[Condition, ...] = ()
    start_effects: Effects = ()
    invariants: tuple[Condition, ...] = ()
    successes: tuple[Terminal, ...] = ()
    failures: tuple[Terminal, ...] = ()
    # kept as a tuple so a second interrupt clause survives parsing and is
    # reported by validate()
    interrupts: tuple[Effects, ...] = ()

    @property
    def interrupt(self) -> Optional[Effects]:
        return self.interrupts[0] if self.interrupts else None

    def exit_modes(self) -> tuple[str, ...]:
        """Termination modes in net order, e.g. ``inv_fail_is_auto``."""
        modes = [f"pre_fail_{c.name}" for c in self.preconditions]
        modes += [f"inv_fail_{c.name}" for c in self.invariants]
        modes += [f"success_{t.name}" for t in self.successes]
        modes += [f"failure_{t.name}" for t in self.failures]
        if self.interrupts:
            modes.append("interrupt")
        return tuple(modes)


@dataclass(frozen=True)
class Skillset:
    name: str
    resources: tuple[Resource, ...] = ()
    events: tuple[Event, ...] = ()
    skills: tuple[Skill, ...] = ()

    def resource(self, name: str) -> Resource:
        for r in self.resources:
            if r.name == name:
                return r
        raise KeyError(name)

    def skill(self, name: str) -> Skill:
        for s in self.skills:
            if s.name == name:
                return s
        raise KeyError(name)


@dataclass(frozen=True)
class TransitionLabel:
    """Identity of one skillset-level step.

    ``kind`` is one of start, pre_fail, inv_fail, success, failure,
    interrupt, event or reset.  ``name`` is the precondition, invariant,
    terminal or (for resets) exit-mode name.
    """

    owner_kind: str
    owner: str
    kind: str
    name: Optional[str] = None

    @property
    def mode(self) -> str:
        return self.kind if self.name is None else f"{self.kind}_{self.name}"

    def __str__(self) -> str:
        if self.owner_kind == "event":
            return f"event {self.owner}"
        return f"skill {self.owner}: {self.mode}"


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


class ValidationError(Exception):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(report.errors))


def _dupes(names) -> list[str]:
    return [n for n, c in Counter(names).items() if c > 1]


def validate(skillset: Skillset) -> ValidationReport:
    report = ValidationReport()
    err, warn = report.errors.append, report.warnings.append

    top = [r.name for r in skillset.resources]
    top += [e.name for e in skillset.events]
    top += [s.name for s in skillset.skills]
    for n in _dupes(top):
        err(f"duplicate name {n!r}")

    resources = {}
    for r in skillset.resources:
        resources.setdefault(r.name, r)
        if not r.states:
            err(f"resource {r.name!r} has no states")
        for n in _dupes(r.states):
            err(f"resource {r.name!r}: duplicate state {n!r}")
        if r.initial not in r.states:
            err(f"resource {r.name!r}: initial state {r.initial!r} is not declared")
        for src, dst in r.transitions:
            for s in (src, dst):
                if s not in r.states:
                    err(f"resource {r.name!r}: transition endpoint {s!r} is not declared")
        for s in r.states:
            incoming = any(dst == s and src != s for src, dst in r.transitions)
            if s != r.initial and not incoming:
                warn(f"resource {r.name!r}: state {s!r} is unreachable")

    def check_guard(guard, where):
        for a in atoms(guard):
            r = resources.get(a.resource)
            if r is None:
                err(f"{where}: unknown resource {a.resource!r}")
            elif a.state not in r.states:
                err(f"{where}: {a.state!r} is not a state of {a.resource!r}")

    def check_effects(effects, where):
        for n in _dupes(res for res, _ in effects):
            err(f"{where}: more than one effect on resource {n!r}")
        for res, dst in effects:
            r = resources.get(res)
            if r is None:
                err(f"{where}: unknown resource {res!r}")
            elif dst not in r.states:
                err(f"{where}: {dst!r} is not a state of {res!r}")

    for e in skillset.events:
        where = f"event {e.name!r}"
        check_guard(e.guard, where)
        check_effects(e.effects, where)
        if not e.effects and e.guard == TRUE:
            err(f"{where} has neither a guard nor effects")

    for s in skillset.skills:
        where = f"skill {s.name!r}"
        if len(s.interrupts) > 1:
            err(f"{where}: multiple interrupts")
        parts = [c.name for c in s.preconditions + s.invariants]
        parts += [t.name for t in s.successes + s.failures]
        for n in _dupes(parts):
            err(f"{where}: duplicate component name {n!r}")
        for c in s.preconditions:
            check_guard(c.guard, f"{where} precondition {c.name!r}")
            check_effects(c.effects, f"{where} precondition {c.name!r}")
        for c in s.invariants:
            check_guard(c.guard, f"{where} invariant {c.name!r}")
            check_effects(c.effects, f"{where} invariant {c.name!r}")
        check_effects(s.start_effects, f"{where} start")
        for t in s.successes:
            check_effects(t.effects, f"{where} success {t.name!r}")
        for t in s.failures:
            check_effects(t.effects, f"{where} failure {t.name!r}")
        for eff in s.interrupts:
            check_effects(eff, f"{where} interrupt")
        if not s.successes and not s.failures:
            warn(f"{where} has no success or failure terminator")

    return report
