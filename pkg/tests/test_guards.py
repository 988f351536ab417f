from itertools import product

import pytest
from hypothesis import given, strategies as st

from skinet.guards import MissingResource, evaluate, involved_resources, solutions
from skinet.model import TRUE, And, Atom, Not, conjunction

from .strategies import guards, small_skillsets

AUTO = Atom("lease_status", "AutoMode")
IDLE = Atom("control_mode", "Idle")
ON = Atom("power_status", "PowerOn")


def test_involved_resources():
    assert involved_resources(And((AUTO, IDLE))) == {"lease_status", "control_mode"}
    assert involved_resources(TRUE) == frozenset()
    assert involved_resources(Not(ON)) == {"power_status"}


def test_evaluate():
    a = {"lease_status": "AutoMode", "control_mode": "Idle", "power_status": "PowerOn"}
    assert evaluate(And((AUTO, IDLE, ON)), a)
    assert not evaluate(And((AUTO, IDLE, ON)), dict(a, lease_status="ManualMode"))
    with pytest.raises(MissingResource):
        evaluate(AUTO, {"control_mode": "Idle"})


def test_go_to_start_guard(spot):
    go_to = spot.skill("go_to")
    sol = solutions(conjunction(c.guard for c in go_to.preconditions), spot)
    # columns follow declaration order
    assert sol.resources == ("power_status", "lease_status", "control_mode")
    assert sol.rows == (("PowerOn", "AutoMode", "Idle"),)


def test_go_to_invariants_guard(spot):
    sol = solutions(conjunction(c.guard for c in spot.skill("go_to").invariants), spot)
    assert set(sol.rows) == {("PowerOn", "AutoMode")}


def test_contradiction_has_no_solutions(spot):
    g = And((ON, Atom("power_status", "PowerOff")))
    assert len(solutions(g, spot)) == 0


def test_negated_conjunction_count(spot):
    # independent count over lease x power: 4 assignments, only one satisfies the conjunction
    g = Not(And((AUTO, ON)))
    expected = sum(1 for lease, power in product(("AutoMode", "ManualMode"), ("PowerOff", "PowerOn"))
                   if not (lease == "AutoMode" and power == "PowerOn"))
    assert expected == 3
    assert len(solutions(g, spot)) == 3


def test_true_has_one_empty_solution(spot):
    sol = solutions(TRUE, spot)
    assert list(sol) == [{}]


def _brute(guard, ss):
    """All full assignments that satisfy the guard, projected to involved resources."""
    names = [r.name for r in ss.resources]
    keep = involved_resources(guard)
    out = set()
    for row in product(*(r.states for r in ss.resources)):
        a = dict(zip(names, row))
        if evaluate(guard, a):
            out.add(tuple(a[n] for n in names if n in keep))
    return out


@given(st.data())
def test_solutions_match_brute_force(data):
    ss = data.draw(small_skillsets())
    g = data.draw(guards(ss.resources))
    sol = solutions(g, ss)
    assert len(set(sol.rows)) == len(sol.rows)
    assert set(sol.rows) == _brute(g, ss)
    for a in sol:
        assert evaluate(g, a)


@given(st.data())
def test_negation_complements(data):
    ss = data.draw(small_skillsets())
    g = data.draw(guards(ss.resources))
    involved = involved_resources(g)
    total = 1
    for r in ss.resources:
        if r.name in involved:
            total *= len(r.states)
    assert len(solutions(g, ss)) + len(solutions(Not(g), ss)) == total
