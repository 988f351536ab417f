"""The dead, live, safe, deadskill and deadset checks.

Each check is a dedicated graph algorithm over an explored
:class:`~skinet.statespace.ReachabilityGraph`; there is no temporal-logic
frontend.  The formula each check decides is carried in the result so
reports can show it.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .builder import SkillState, places_of_resource, places_of_skill, running_place
from .model import Skillset
from .petri import mask
from .statespace import Path, ReachabilityGraph, backward_reachable, path_to_state

PASS, FAIL = "pass", "fail"


class UnknownSkill(KeyError):
    pass


@dataclass
class Finding:
    subject: str
    message: str
    path: Optional[Path] = None
    state: Optional[int] = None


@dataclass
class CheckResult:
    name: str
    formula: str
    verdict: str
    findings: list[Finding] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS


def _result(name, formula, graph, findings, t0) -> CheckResult:
    return CheckResult(
        name, formula, FAIL if findings else PASS, findings,
        {"states": len(graph.states), "edges": len(graph.edges),
         "elapsed_s": round(time.perf_counter() - t0, 6)},
    )


def check_dead(graph: ReachabilityGraph) -> CheckResult:
    t0 = time.perf_counter()
    findings = [
        Finding("deadlock", f"state {s} has no fireable transition",
                path_to_state(graph, s), s)
        for s, dead in enumerate(graph.deadlock) if dead
    ]
    return _result("dead", "A ¬dead", graph, findings, t0)


def describe_origin(label) -> str:
    if label is None:
        return "unknown origin"
    return str(label)


def check_live(net, graph: ReachabilityGraph) -> CheckResult:
    t0 = time.perf_counter()
    fired = {t for _, t, _ in graph.edges}
    fired |= {u.transition for u in graph.unsafe}
    findings = []
    for i, t in enumerate(net.transitions):
        if i not in fired:
            origins = ", ".join(describe_origin(lab) for lab in t.labels)
            findings.append(Finding(t.name, f"never fireable (from {origins})"))
    return _result("live", "∀t ∈ T : A ¬t", graph, findings, t0)


def check_safe(skillset: Skillset, net, graph: ReachabilityGraph) -> CheckResult:
    t0 = time.perf_counter()
    groups = []
    for r in skillset.resources:
        groups.append(("resource sum (Σ p_r = 1)", r.name, mask(places_of_resource(net, r.name))))
    for s in skillset.skills:
        groups.append(("skill sum (p_e + p_i + Σ p_x = 1)", s.name, mask(places_of_skill(net, s.name))))
    findings = []
    reported = set()
    for s, m in enumerate(graph.states):
        for what, subject, gm in groups:
            if (what, subject) in reported:
                continue
            count = bin(m & gm).count("1")
            if count != 1:
                reported.add((what, subject))
                findings.append(Finding(
                    subject, f"{what} violated: {count} tokens in state {s}",
                    path_to_state(graph, s), s))
    for u in graph.unsafe:
        findings.append(Finding(
            ", ".join(u.places),
            f"safeness (p < 2) violated: firing {net.transitions[u.transition].name} "
            f"from state {u.state} puts a second token on {', '.join(u.places)}",
            _extend(path_to_state(graph, u.state), u.transition), u.state))
    formula = ("∀r ∈ R : A (Σ p_i^r = 1); "
               "∀s ∈ S : A (p_e^s + p_i^s + Σ_k p_x,k^s = 1); "
               "∀p ∈ P : A ¬(p ≥ 2)")
    return _result("safe", formula, graph, findings, t0)


def _extend(path: Path, t: int) -> Path:
    # the overfilled target marking is not representable, so the final
    # state slot repeats the source
    return Path(path.states + (path.states[-1],), path.transitions + (t,))


def violating_states(graph: ReachabilityGraph, goal_mask: int) -> list[int]:
    """Reachable states from which no goal state is reachable, in BFS order."""
    if not goal_mask:
        return list(range(len(graph.states)))
    live = backward_reachable(graph, lambda m: bool(m & goal_mask))
    return [s for s in range(len(graph.states)) if s not in live]


def trapped_lasso(graph: ReachabilityGraph, start: int) -> Path:
    """Shortest path to ``start``, then lowest-id successors until a state repeats.

    Every successor of a violating state is violating, so the continuation
    stays in the trapped region; it ends at a repeated state or a deadlock.
    """
    prefix = path_to_state(graph, start)
    states, trans = list(prefix.states), list(prefix.transitions)
    seen = {start}
    cur = start
    while graph.succ[cur]:
        t, nxt = graph.succ[cur][0]
        states.append(nxt)
        trans.append(t)
        if nxt in seen:
            break
        seen.add(nxt)
        cur = nxt
    return Path(tuple(states), tuple(trans))


def _liveness(name, formula, graph, goal_mask, subject, t0) -> CheckResult:
    bad = violating_states(graph, goal_mask)
    findings = []
    if bad:
        first = bad[0]
        path = trapped_lasso(graph, first)
        msg = (f"{len(bad)} reachable state(s) from which {subject} can never run again; "
               f"first is state {first}, reached after {len(path_to_state(graph, first))} step(s)")
        if graph.deadlock[first]:
            msg += " (a deadlock, see check 'dead')"
        elif path.states[-1] in path.states[:-1]:
            msg += f"; the path then loops back to state {path.states[-1]}"
        findings.append(Finding(subject, msg, path, first))
    return _result(name, formula, graph, findings, t0)


def check_deadskill(graph: ReachabilityGraph, skill: str) -> CheckResult:
    t0 = time.perf_counter()
    p = running_place(graph.net, skill)
    if p is None:
        raise UnknownSkill(skill)
    name = f"i_{skill}"
    return _liveness("deadskill", f"AG EF {name}  (counterexamples: ¬AF EF {name})",
                     graph, 1 << p, skill, t0)


def check_deadset(graph: ReachabilityGraph) -> CheckResult:
    t0 = time.perf_counter()
    running = [i for i, pl in enumerate(graph.net.places)
               if isinstance(pl.role, SkillState) and pl.role.which == "running"]
    total = " + ".join(graph.net.places[i].name for i in running) or "0"
    formula = f"AG EF ({total} ≥ 1)  (counterexamples: ¬AF EF ({total}))"
    if not running:
        f = Finding("skillset", "the skillset has no skills, so no skill can ever run",
                    path_to_state(graph, 0), 0)
        return _result("deadset", formula, graph, [f], t0)
    return _liveness("deadset", formula, graph, mask(running), "any skill", t0)

