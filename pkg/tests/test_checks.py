from dataclasses import replace

import pytest

from skinet.builder import BuildOptions, build_net, running_place
from skinet.checks import (
    UnknownSkill, check_dead, check_deadset, check_deadskill, check_live, check_safe,
    violating_states,
)
from skinet.model import Skillset
from skinet.parser import parse_skillset
from skinet.petri import fireable
from skinet.statespace import explore

SKILLS = ("init_power", "safe_poweroff", "go_to")


def _reaches(graph, start, goal_mask):
    """Forward search from one state; stops at the first goal state."""
    seen, stack = {start}, [start]
    while stack:
        s = stack.pop()
        if graph.states[s] & goal_mask:
            return True
        for _, d in graph.succ[s]:
            if d not in seen:
                seen.add(d)
                stack.append(d)
    return False


def test_spot_dead_passes(spot_graph):
    r = check_dead(spot_graph)
    assert r.passed and r.findings == []


def test_spot_live_names_the_arrival_variant(spot_net, spot_graph):
    r = check_live(spot_net, spot_graph)
    dead = {f.subject for f in r.findings}
    assert not r.passed
    assert "t_go_to_success_is_arrived_1" in dead
    assert "t_go_to_success_is_arrived_0" not in dead
    assert len(dead) == 7


def test_spot_safe_passes(spot, spot_net, spot_graph):
    assert check_safe(spot, spot_net, spot_graph).passed


@pytest.mark.parametrize("skill", SKILLS)
def test_spot_deadskill_fails(spot_graph, skill):
    r = check_deadskill(spot_graph, skill)
    assert not r.passed
    (f,) = r.findings
    names = [spot_graph.net.transitions[t].name for t in f.path.transitions]
    assert "t_go_to_inv_fail_is_auto" in names
    # the continuation loops inside the trapped region
    assert f.path.states[-1] in f.path.states[:-1]


def test_spot_deadset_fails(spot_graph):
    assert not check_deadset(spot_graph).passed


def test_fixed_spot_recovers(spot_fixed, spot_fixed_graph):
    for skill in SKILLS:
        assert check_deadskill(spot_fixed_graph, skill).passed
    assert check_deadset(spot_fixed_graph).passed
    assert check_dead(spot_fixed_graph).passed
    assert check_safe(spot_fixed, spot_fixed_graph.net, spot_fixed_graph).passed


def test_unknown_skill(spot_graph):
    with pytest.raises(UnknownSkill):
        check_deadskill(spot_graph, "fly")


def test_corrupted_net_fails_safe(spot, spot_net):
    ts = list(spot_net.transitions)
    i = spot_net.transition_index["t_start_go_to"]
    ts[i] = replace(ts[i], outputs=tuple(sorted(ts[i].outputs + (spot_net.place_index["e_init_power"],))))
    bad = spot_net.with_transitions(ts)
    g = explore(bad, strict_safety=False)
    r = check_safe(spot, bad, g)
    assert not r.passed
    bound = [f for f in r.findings if "p < 2" in f.message]
    assert bound and bound[0].subject == "e_init_power"
    assert bad.transitions[bound[0].path.transitions[-1]].name == "t_start_go_to"


def test_empty_skillset():
    ss = Skillset("empty")
    net = build_net(ss)
    g = explore(net)
    assert len(g.states) == 1 and g.deadlock == [True]
    assert not check_dead(g).passed
    assert check_live(net, g).passed
    assert check_safe(ss, net, g).passed
    r = check_deadset(g)
    assert not r.passed and "no skills" in r.findings[0].message


def test_guard_free_skill_passes():
    ss = parse_skillset("""skillset s {
      resource { r { initial A A -> B B -> A } }
      skill k { success ok { } }
    }""")
    g = explore(build_net(ss))
    assert check_deadskill(g, "k").passed
    assert check_deadset(g).passed
    assert check_dead(g).passed


def test_no_events_baseline(spot):
    net = build_net(spot, BuildOptions(include_events=False))
    g = explore(net)
    assert (len(g.states), len(g.edges)) == (284, 961)
    assert check_dead(g).passed
    assert check_deadset(g).passed
    assert len(check_live(net, g).findings) == 19


@pytest.mark.parametrize("skill", SKILLS)
def test_violating_states_match_forward_search(spot_graph, skill):
    goal = 1 << running_place(spot_graph.net, skill)
    bad = violating_states(spot_graph, goal)
    expected = [s for s in range(len(spot_graph.states)) if not _reaches(spot_graph, s, goal)]
    assert bad == expected
    assert len(bad) == {"init_power": 550, "safe_poweroff": 550, "go_to": 500}[skill]


def test_live_matches_fireable_scan(spot_net, spot_graph):
    ever = set()
    for m in spot_graph.states:
        ever |= fireable(spot_net, m)
    dead = {spot_net.transitions[t].name for t in range(len(spot_net.transitions)) if t not in ever}
    assert dead == {f.subject for f in check_live(spot_net, spot_graph).findings}


def test_result_statistics(spot_graph):
    r = check_dead(spot_graph)
    assert r.stats["states"] == 1415 and r.stats["edges"] == 7449
    assert r.stats["elapsed_s"] >= 0


def test_zero_transition_deadlock_has_empty_witness():
    g = explore(build_net(Skillset("empty")))
    (f,) = check_dead(g).findings
    assert len(f.path) == 0


def test_toggle_is_live(toggle):
    net = build_net(toggle)
    assert check_live(net, explore(net)).passed


def test_resourceless_skill_passes():
    ss = parse_skillset("skillset s { skill k { success ok { } } }")
    g = explore(build_net(ss))
    assert check_deadskill(g, "k").passed and check_deadset(g).passed
