from dataclasses import replace

import pytest

from skinet.builder import BuildOptions, build_net
from skinet.model import Resource, Skillset
from skinet.petri import fireable, SafetyViolation
from skinet.statespace import (
    StateLimitExceeded, backward_reachable, explore, path_to, path_to_state, to_dot,
)


def test_toggle(toggle):
    g = explore(build_net(toggle))
    assert len(g.states) == 2 and len(g.edges) == 2
    assert not any(g.deadlock)


def test_no_transitions_is_one_deadlock():
    net = build_net(Skillset("still", (Resource("r", ("A",), "A"),)))
    g = explore(net)
    assert len(g.states) == 1 and g.deadlock == [True] and g.edges == []


def test_spot_counts(spot_graph):
    assert (len(spot_graph.states), len(spot_graph.edges)) == (1415, 7449)
    assert not any(spot_graph.deadlock)


def test_exploration_is_reproducible(spot, spot_graph):
    again = explore(build_net(spot))
    assert again.states == spot_graph.states
    assert again.edges == spot_graph.edges


def test_edges_respect_priority(spot_graph):
    net = spot_graph.net
    for s, m in enumerate(spot_graph.states):
        assert {t for t, _ in spot_graph.succ[s]} == fireable(net, m)
        urgent = set(net.urgent) & fireable(net, m)
        if urgent:
            assert all(t in urgent for t, _ in spot_graph.succ[s])


def test_limit(spot):
    with pytest.raises(StateLimitExceeded):
        explore(build_net(spot), limit=100)


def test_parents_give_shortest_paths(spot_graph):
    dist = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for s in frontier:
            for _, d in spot_graph.succ[s]:
                if d not in dist:
                    dist[d] = dist[s] + 1
                    nxt.append(d)
        frontier = nxt
    for s in range(0, len(spot_graph.states), 37):
        p = path_to_state(spot_graph, s)
        assert len(p) == dist[s]
        assert p.states[0] == 0 and p.states[-1] == s


def test_path_to_initial_is_empty(spot_graph):
    p = path_to(spot_graph, lambda m: m == spot_graph.net.initial_marking)
    assert len(p) == 0 and p.states == (0,)


def test_path_to_go_to_invariant_failure(spot_graph):
    net = spot_graph.net
    bit = 1 << net.place_index["x_go_to_inv_fail_is_auto"]
    p = path_to(spot_graph, lambda m: bool(m & bit))
    names = [net.transitions[t].name for t in p.transitions]
    order = ["t_start_go_to", "t_event_tomanual_fromauto", "t_go_to_inv_fail_is_auto"]
    idx = [names.index(n) for n in order]
    assert idx == sorted(idx)
    assert names[-1] == "t_go_to_inv_fail_is_auto"
    assert len(names) == 4  # power has to come on first


def test_path_to_unreachable(spot_graph):
    assert path_to(spot_graph, lambda m: False) is None


def test_backward_reachable(toggle):
    g = explore(build_net(toggle))
    on = 1 << g.net.place_index["lamp_On"]
    assert backward_reachable(g, lambda m: bool(m & on)) == {0, 1}
    assert backward_reachable(g, lambda m: False) == set()


def test_backward_from_sink():
    from skinet.parser import parse_skillset

    ss = parse_skillset("skillset s { resource { r { initial A A -> B } } event { go { guard r == A r -> B } } }")
    g = explore(build_net(ss))
    a = 1 << g.net.place_index["r_A"]
    assert backward_reachable(g, lambda m: bool(m & a)) == {0}


def test_strict_safety_raises_and_record_mode_collects(spot_net):
    ts = list(spot_net.transitions)
    i = spot_net.transition_index["t_start_go_to"]
    e = spot_net.place_index["e_init_power"]
    ts[i] = replace(ts[i], outputs=tuple(sorted(ts[i].outputs + (e,))))
    bad = spot_net.with_transitions(ts)
    with pytest.raises(SafetyViolation):
        explore(bad)
    g = explore(bad, strict_safety=False)
    assert g.unsafe[0].transition == i
    assert g.unsafe[0].places == ("e_init_power",)


def test_dot(toggle):
    text = to_dot(explore(build_net(toggle)))
    assert text.startswith('digraph "toggle"')
    assert 's0 -> s1 [label="t_event_switch_on"]' in text
    assert text.count(" -> ") == 2


def test_no_exit_places_counts(spot):
    g = explore(build_net(spot, BuildOptions(keep_exit_places=False)))
    assert (len(g.states), len(g.edges)) == (19, 113)
