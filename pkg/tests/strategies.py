from hypothesis import strategies as st

from skinet.model import And, Atom, Const, Not, Or, Resource, Skillset

NAMES = ["a", "b", "c", "d"]
STATES = ["S0", "S1", "S2", "S3"]


def atoms_over(resources):
    return st.sampled_from(resources).flatmap(
        lambda r: st.sampled_from(r.states).map(lambda s: Atom(r.name, s)))


def guards(resources=None, max_leaves=8):
    if resources is None:
        leaf = st.builds(Atom, st.sampled_from(NAMES), st.sampled_from(STATES))
    else:
        leaf = atoms_over(resources)
    leaf = leaf | st.builds(Const, st.booleans())
    return st.recursive(
        leaf,
        lambda sub: st.builds(Not, sub)
        | st.builds(And, st.lists(sub, min_size=2, max_size=3).map(tuple))
        | st.builds(Or, st.lists(sub, min_size=2, max_size=3).map(tuple)),
        max_leaves=max_leaves,
    )


@st.composite
def small_skillsets(draw):
    """Up to four resources of up to four states, no events or skills."""
    n = draw(st.integers(1, 4))
    resources = []
    for i in range(n):
        k = draw(st.integers(1, 4))
        states = tuple(STATES[:k])
        resources.append(Resource(NAMES[i], states, states[0]))
    return Skillset("g", tuple(resources))
