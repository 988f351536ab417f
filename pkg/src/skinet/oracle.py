"""Direct interpreter of skillset execution, used to cross-check the net.

The interpreter works on configurations (one state per resource, one
status per skill) and never looks at the Petri net.  ``check_equivalence``
decodes every reachable marking back into a configuration and compares
the two transition systems state by state, labels included.

Resource moves follow the same admissibility rule the net encodes: a
resource that the step's guard constrains may jump to any destination
(unless ``strict_resource_moves``), while an unconstrained resource can
only take a declared transition or stay put.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .builder import BuildOptions, ResourceState, SkillState
from .guards import evaluate, involved_resources
from .model import Skillset, TransitionLabel, conjunction
from .statespace import DEFAULT_LIMIT, ReachabilityGraph, StateLimitExceeded

IDLE, RUNNING = "idle", "running"


def terminated(mode: str) -> str:
    return f"terminated:{mode}"


class OptionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Configuration:
    """Resource states and skill statuses, aligned with declaration order."""

    resources: tuple[str, ...]
    skills: tuple[str, ...]

    @classmethod
    def initial(cls, skillset: Skillset) -> "Configuration":
        return cls(tuple(r.initial for r in skillset.resources),
                   tuple(IDLE for _ in skillset.skills))

    def describe(self, skillset: Skillset) -> str:
        parts = [f"{r.name}={s}" for r, s in zip(skillset.resources, self.resources)]
        parts += [f"{k.name}:{s}" for k, s in zip(skillset.skills, self.skills)]
        return "{" + ", ".join(parts) + "}"


def successors(skillset: Skillset, config: Configuration,
               options: BuildOptions = BuildOptions()) -> list[tuple[TransitionLabel, Configuration]]:
    names = [r.name for r in skillset.resources]
    state = dict(zip(names, config.resources))
    machines = {r.name: r for r in skillset.resources}

    def moved(effects, guard):
        constrained = involved_resources(guard)
        new = dict(state)
        for res, dest in effects:
            cur = state[res]
            free = res in constrained and not options.strict_resource_moves
            if not (free or machines[res].allows(cur, dest)):
                return None
            new[res] = dest
        return tuple(new[n] for n in names)

    def with_skill(resources, i, status):
        skills = list(config.skills)
        skills[i] = status
        return Configuration(resources, tuple(skills))

    def ended(mode):
        return terminated(mode) if options.keep_exit_places else IDLE

    urgent = []
    for i, s in enumerate(skillset.skills):
        if config.skills[i] != RUNNING:
            continue
        for c in s.invariants:
            if not evaluate(c.guard, state):
                res = moved(c.effects, c.guard)
                if res is not None:
                    label = TransitionLabel("skill", s.name, "inv_fail", c.name)
                    urgent.append((label, with_skill(res, i, ended(label.mode))))
    if urgent:
        return urgent

    steps = []
    if options.include_events:
        for e in skillset.events:
            if evaluate(e.guard, state):
                res = moved(e.effects, e.guard)
                if res is not None:
                    steps.append((TransitionLabel("event", e.name, "event"),
                                  Configuration(res, config.skills)))
    for i, s in enumerate(skillset.skills):
        status = config.skills[i]
        if status == IDLE:
            pre = conjunction(c.guard for c in s.preconditions)
            if evaluate(pre, state):
                res = moved(s.start_effects, pre)
                if res is not None:
                    steps.append((TransitionLabel("skill", s.name, "start"),
                                  with_skill(res, i, RUNNING)))
            for c in s.preconditions:
                if not evaluate(c.guard, state):
                    res = moved(c.effects, c.guard)
                    if res is not None:
                        label = TransitionLabel("skill", s.name, "pre_fail", c.name)
                        steps.append((label, with_skill(res, i, ended(label.mode))))
        elif status == RUNNING:
            inv = conjunction(c.guard for c in s.invariants)
            if not evaluate(inv, state):
                continue
            ends = [("success", t.name, t.effects) for t in s.successes]
            ends += [("failure", t.name, t.effects) for t in s.failures]
            if s.interrupt is not None:
                ends.append(("interrupt", None, s.interrupt))
            for kind, name, effects in ends:
                res = moved(effects, inv)
                if res is not None:
                    label = TransitionLabel("skill", s.name, kind, name)
                    steps.append((label, with_skill(res, i, ended(label.mode))))
        else:
            mode = status.split(":", 1)[1]
            steps.append((TransitionLabel("skill", s.name, "reset", mode),
                          with_skill(config.resources, i, IDLE)))
    return steps


@dataclass
class DirectLTS:
    skillset: Skillset
    options: BuildOptions
    states: list[Configuration] = field(default_factory=list)
    edges: list[tuple[int, TransitionLabel, int]] = field(default_factory=list)


def explore_direct(skillset: Skillset, options: BuildOptions = BuildOptions(),
                   limit: int = DEFAULT_LIMIT) -> DirectLTS:
    lts = DirectLTS(skillset, options)
    index = {}

    def add(c):
        if len(lts.states) >= limit:
            raise StateLimitExceeded(f"more than {limit} reachable configurations")
        index[c] = len(lts.states)
        lts.states.append(c)
        return index[c]

    queue = deque([add(Configuration.initial(skillset))])
    while queue:
        s = queue.popleft()
        for label, c in successors(skillset, lts.states[s], options):
            d = index.get(c)
            if d is None:
                d = add(c)
                queue.append(d)
            lts.edges.append((s, label, d))
    return lts


@dataclass
class EquivalenceResult:
    equivalent: bool
    mismatch: Optional[str] = None

    def __bool__(self):
        return self.equivalent


def decode_marking(net, marking: int, skillset: Skillset) -> Optional[Configuration]:
    """Configuration a marking stands for, or None if it is not one."""
    res: dict[str, list[str]] = {r.name: [] for r in skillset.resources}
    sk: dict[str, list[str]] = {s.name: [] for s in skillset.skills}
    for i, p in enumerate(net.places):
        if not marking >> i & 1:
            continue
        role = p.role
        if isinstance(role, ResourceState):
            res[role.resource].append(role.state)
        elif isinstance(role, SkillState):
            sk[role.skill].append(
                IDLE if role.which == "entry" else
                RUNNING if role.which == "running" else terminated(role.mode))
    if any(len(v) != 1 for v in list(res.values()) + list(sk.values())):
        return None
    return Configuration(tuple(v[0] for v in res.values()), tuple(v[0] for v in sk.values()))


def check_equivalence(lts: DirectLTS, graph: ReachabilityGraph, skillset: Skillset) -> EquivalenceResult:
    net = graph.net
    if net.options is not None and net.options != lts.options:
        raise OptionMismatch(f"net built with {net.options}, interpreter ran with {lts.options}")

    configs = []
    for s, m in enumerate(graph.states):
        c = decode_marking(net, m, skillset)
        if c is None:
            return EquivalenceResult(False, f"state {s} ({', '.join(net.marked(m))}) "
                                            "is not a valid configuration")
        configs.append(c)
    if len(set(configs)) != len(configs):
        return EquivalenceResult(False, "two markings decode to the same configuration")

    lts_index = {c: i for i, c in enumerate(lts.states)}
    lts_out: list[set] = [set() for _ in lts.states]
    for src, label, dst in lts.edges:
        lts_out[src].add((label, lts.states[dst]))
    net_out: list[set] = [set() for _ in graph.states]
    for src, t, dst in graph.edges:
        for label in net.transitions[t].labels:
            net_out[src].add((label, configs[dst]))

    if configs[0] != lts.states[0]:
        return EquivalenceResult(False, "initial states differ")
    for s, c in enumerate(configs):
        i = lts_index.get(c)
        where = c.describe(skillset)
        if i is None:
            return EquivalenceResult(False, f"net state {s} {where} is unreachable for the interpreter")
        if net_out[s] != lts_out[i]:
            extra = sorted(f"{lab} -> {d.describe(skillset)}" for lab, d in net_out[s] - lts_out[i])
            missing = sorted(f"{lab} -> {d.describe(skillset)}" for lab, d in lts_out[i] - net_out[s])
            msg = f"steps differ at net state {s} {where}"
            if extra:
                msg += f"; only in net: {'; '.join(extra)}"
            if missing:
                msg += f"; only in interpreter: {'; '.join(missing)}"
            return EquivalenceResult(False, msg)
    if len(configs) != len(lts.states):
        seen = set(configs)
        c = next(c for c in lts.states if c not in seen)
        return EquivalenceResult(False, f"interpreter state {c.describe(skillset)} has no net counterpart")
    return EquivalenceResult(True)
