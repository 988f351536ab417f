"""Translate a skillset into a 1-safe Petri net with priorities.

Each skillset-level step (event, skill start, precondition/invariant
failure, success, failure, interrupt) is lowered to a guard, an effect set
and an optional skill-state change, then expanded into one net transition
per guard solution.  Resources that are guarded but not affected get their
token handed back; resources that are affected but not guarded get one
transition per admissible origin state.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Union

from .guards import solutions
from .model import (
    Guard, Skillset, TransitionLabel, ValidationError, conjunction, negate, validate,
)
from .petri import PetriNet, Place, Priority, Transition, mask


@dataclass(frozen=True)
class ResourceState:
    resource: str
    state: str


@dataclass(frozen=True)
class SkillState:
    skill: str
    which: str  # "entry", "running" or "exit"
    mode: Optional[str] = None


PlaceRole = Union[ResourceState, SkillState]


@dataclass(frozen=True)
class BuildOptions:
    include_events: bool = True
    keep_exit_places: bool = True
    strict_resource_moves: bool = False


@dataclass(frozen=True)
class SkillsetTransition:
    label: TransitionLabel
    guard: Guard
    effects: tuple[tuple[str, str], ...]
    state_change: Optional[tuple[SkillState, SkillState]] = None
    priority: Priority = Priority.NORMAL


@dataclass(frozen=True)
class NetTransition:
    name: str
    inputs: tuple[PlaceRole, ...]
    outputs: tuple[PlaceRole, ...]
    priority: Priority
    label: TransitionLabel
    aliases: tuple = ()


@dataclass
class BuildReport:
    places: int = 0
    transitions: int = 0
    per_origin: dict[str, int] = field(default_factory=dict)
    aliases: dict[str, list[str]] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "places": self.places,
            "transitions": self.transitions,
            "per_origin": dict(self.per_origin),
            "aliases": {k: list(v) for k, v in self.aliases.items()},
            "warnings": list(self.warnings),
        }


class BuildError(ValueError):
    pass


def place_name(role: PlaceRole) -> str:
    if isinstance(role, ResourceState):
        return f"{role.resource}_{role.state}"
    if role.which == "entry":
        return f"e_{role.skill}"
    if role.which == "running":
        return f"i_{role.skill}"
    return f"x_{role.skill}_{role.mode}"


def transition_name(label: TransitionLabel) -> str:
    if label.owner_kind == "event":
        return f"t_event_{label.owner}"
    if label.kind == "start":
        return f"t_start_{label.owner}"
    if label.kind == "reset":
        return f"t_{label.owner}_reset_{label.name}"
    return f"t_{label.owner}_{label.mode}"


def lower_skillset(skillset: Skillset) -> list[SkillsetTransition]:
    out = []
    for e in skillset.events:
        out.append(SkillsetTransition(TransitionLabel("event", e.name, "event"), e.guard, e.effects))
    for s in skillset.skills:
        entry, running = SkillState(s.name, "entry"), SkillState(s.name, "running")

        def exit_(kind, name=None):
            return SkillState(s.name, "exit", kind if name is None else f"{kind}_{name}")

        def label(kind, name=None):
            return TransitionLabel("skill", s.name, kind, name)

        out.append(SkillsetTransition(
            label("start"), conjunction(c.guard for c in s.preconditions),
            s.start_effects, (entry, running)))
        for c in s.preconditions:
            out.append(SkillsetTransition(
                label("pre_fail", c.name), negate(c.guard), c.effects,
                (entry, exit_("pre_fail", c.name))))
        for c in s.invariants:
            out.append(SkillsetTransition(
                label("inv_fail", c.name), negate(c.guard), c.effects,
                (running, exit_("inv_fail", c.name)), Priority.INVARIANT_FAILURE))
        holds = conjunction(c.guard for c in s.invariants)
        for kind, terms in (("success", s.successes), ("failure", s.failures)):
            for t in terms:
                out.append(SkillsetTransition(
                    label(kind, t.name), holds, t.effects, (running, exit_(kind, t.name))))
        if s.interrupt is not None:
            out.append(SkillsetTransition(
                label("interrupt"), holds, s.interrupt, (running, exit_("interrupt"))))
    return out


def _dedup(transitions, report=None):
    kept, seen = [], {}
    for t in transitions:
        key = (frozenset(t.inputs), frozenset(t.outputs), t.priority)
        if key in seen:
            i = seen[key]
            first = kept[i]
            kept[i] = NetTransition(first.name, first.inputs, first.outputs, first.priority,
                                    first.label, first.aliases + ((t.name, t.label),) + t.aliases)
            if report is not None:
                report.aliases.setdefault(first.name, []).append(t.name)
        else:
            seen[key] = len(kept)
            kept.append(t)
    return kept


def expand_transition(tau: SkillsetTransition, skillset: Skillset,
                      options: BuildOptions = BuildOptions(),
                      report: Optional[BuildReport] = None) -> list[NetTransition]:
    sols = solutions(tau.guard, skillset)
    effects = dict(tau.effects)
    guarded = sols.resources
    unguarded = [r for r in skillset.resources if r.name in effects and r.name not in guarded]
    resources = {r.name: r for r in skillset.resources}

    pre_skill, post_skill = (), ()
    if tau.state_change is not None:
        src, dst = tau.state_change
        if dst.which == "exit" and not options.keep_exit_places:
            dst = SkillState(dst.skill, "entry")
        pre_skill, post_skill = (src,), (dst,)

    arcs = []
    for row in sols.rows:
        ins, outs = [], []
        allowed = True
        for name, state in zip(guarded, row):
            ins.append(ResourceState(name, state))
            dest = effects.get(name, state)  # unaffected: token goes back
            if options.strict_resource_moves and not resources[name].allows(state, dest):
                allowed = False
            outs.append(ResourceState(name, dest))
        if not allowed:
            continue
        origins = [r.predecessors(effects[r.name]) for r in unguarded]
        for combo in product(*origins):
            t_ins = ins + [ResourceState(r.name, o) for r, o in zip(unguarded, combo)]
            t_outs = outs + [ResourceState(r.name, effects[r.name]) for r in unguarded]
            arcs.append((tuple(t_ins) + pre_skill, tuple(t_outs) + post_skill))

    base = transition_name(tau.label)
    if report is not None:
        if not sols.rows:
            report.warnings.append(f"{base}: guard is unsatisfiable, no transition generated")
        elif not arcs:
            report.warnings.append(f"{base}: every solution needs an undeclared resource move")
    generated = []
    for i, (ins, outs) in enumerate(arcs):
        name = f"{base}_{i}" if len(arcs) > 1 else base
        if not ins and not outs and report is not None:
            report.warnings.append(f"{name}: transition has no arcs")
        generated.append(NetTransition(name, ins, outs, tau.priority, tau.label))
    return _dedup(generated, report)


def build_net(skillset: Skillset, options: BuildOptions = BuildOptions()) -> PetriNet:
    check = validate(skillset)
    if not check.ok:
        raise ValidationError(check)
    report = BuildReport()

    roles: list[PlaceRole] = []
    initial: list[PlaceRole] = []
    for r in skillset.resources:
        roles += [ResourceState(r.name, s) for s in r.states]
        initial.append(ResourceState(r.name, r.initial))
    for s in skillset.skills:
        roles += [SkillState(s.name, "entry"), SkillState(s.name, "running")]
        if options.keep_exit_places:
            roles += [SkillState(s.name, "exit", m) for m in s.exit_modes()]
        initial.append(SkillState(s.name, "entry"))

    lowered = lower_skillset(skillset)
    if not options.include_events:
        lowered = [t for t in lowered if t.label.owner_kind != "event"]

    expanded: list[NetTransition] = []
    by_skill: dict[str, list[NetTransition]] = {}
    for tau in lowered:
        ts = expand_transition(tau, skillset, options, report)
        report.per_origin[transition_name(tau.label)] = len(ts)
        if tau.label.owner_kind == "event":
            expanded += ts
        else:
            by_skill.setdefault(tau.label.owner, []).extend(ts)
    for s in skillset.skills:
        expanded += by_skill.get(s.name, [])
        if options.keep_exit_places:
            entry = SkillState(s.name, "entry")
            for m in s.exit_modes():
                label = TransitionLabel("skill", s.name, "reset", m)
                expanded.append(NetTransition(
                    transition_name(label), (SkillState(s.name, "exit", m),), (entry,),
                    Priority.NORMAL, label))
    expanded = _dedup(expanded, report)

    names = [place_name(r) for r in roles]
    dupes = [n for n, c in Counter(names).items() if c > 1]
    if dupes:
        raise BuildError(f"place name collision: {', '.join(dupes)}")
    index = {role: i for i, role in enumerate(roles)}
    transitions = tuple(
        Transition(t.name,
                   tuple(sorted(index[p] for p in t.inputs)),
                   tuple(sorted(index[p] for p in t.outputs)),
                   t.priority, t.label, t.aliases)
        for t in expanded
    )
    report.places, report.transitions = len(roles), len(transitions)
    try:
        return PetriNet(
            skillset.name,
            tuple(Place(n, r) for n, r in zip(names, roles)),
            transitions,
            mask(index[r] for r in initial),
            options=options,
            report=report,
        )
    except ValueError as e:
        raise BuildError(str(e)) from None


def places_of_resource(net: PetriNet, resource: str) -> list[int]:
    return [i for i, p in enumerate(net.places)
            if isinstance(p.role, ResourceState) and p.role.resource == resource]


def places_of_skill(net: PetriNet, skill: str) -> list[int]:
    return [i for i, p in enumerate(net.places)
            if isinstance(p.role, SkillState) and p.role.skill == skill]


def running_place(net: PetriNet, skill: str) -> Optional[int]:
    for i, p in enumerate(net.places):
        if p.role == SkillState(skill, "running"):
            return i
    return None
