"""Export to the Tina textual ``.net`` format."""
from __future__ import annotations

from collections import Counter

from .builder import ResourceState
from .petri import PetriNet, Priority


class BareNameCollision(ValueError):
    pass


def _place_names(net: PetriNet, bare_state_names: bool) -> list[str]:
    if not bare_state_names:
        return [p.name for p in net.places]
    names = [p.role.state if isinstance(p.role, ResourceState) else p.name for p in net.places]
    clashes = sorted(n for n, c in Counter(names).items() if c > 1)
    if clashes:
        raise BareNameCollision(f"bare state names collide: {', '.join(clashes)}")
    return names


def export_net(net: PetriNet, bare_state_names: bool = False, pr_grouped: bool = False) -> str:
    names = _place_names(net, bare_state_names)
    lines = [f"net {{{net.name}}}"]
    for t in net.transitions:
        ins = " ".join(f"{{{names[p]}}}" for p in t.inputs)
        outs = " ".join(f"{{{names[p]}}}" for p in t.outputs)
        lines.append(" ".join(x for x in (f"tr {{{t.name}}}", ins, "->", outs) if x))
    for i, name in enumerate(names):
        if net.initial_marking >> i & 1:
            lines.append(f"pl {{{name}}} (1)")
    high = [t.name for t in net.transitions if t.priority is Priority.INVARIANT_FAILURE]
    low = [t.name for t in net.transitions if t.priority is not Priority.INVARIANT_FAILURE]
    if high and low:
        if pr_grouped:
            lhs = " ".join(f"{{{n}}}" for n in high)
            rhs = " ".join(f"{{{n}}}" for n in low)
            lines.append(f"pr {lhs} > {rhs}")
        else:
            lines += [f"pr {{{a}}} > {{{b}}}" for a in high for b in low]
    return "\n".join(lines) + "\n"
