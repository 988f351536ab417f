"""Guard evaluation and solution enumeration.

Resource state spaces are tiny, so solutions are found by walking the
Cartesian product of the involved resources' states.  Cost is the product
of their state counts.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping

from .model import And, Atom, Const, Guard, Not, Or, Skillset, atoms


class MissingResource(KeyError):
    pass


def involved_resources(guard: Guard) -> frozenset[str]:
    return frozenset(a.resource for a in atoms(guard))


def evaluate(guard: Guard, assignment: Mapping[str, str]) -> bool:
    if isinstance(guard, Atom):
        try:
            return assignment[guard.resource] == guard.state
        except KeyError:
            raise MissingResource(guard.resource) from None
    if isinstance(guard, Const):
        return guard.value
    if isinstance(guard, Not):
        return not evaluate(guard.arg, assignment)
    if isinstance(guard, And):
        return all(evaluate(g, assignment) for g in guard.args)
    if isinstance(guard, Or):
        return any(evaluate(g, assignment) for g in guard.args)
    raise TypeError(f"not a guard: {guard!r}")


@dataclass(frozen=True)
class SolutionSet:
    """Satisfying assignments over ``resources``.

    Each row holds one state per resource, aligned with ``resources``.
    The TRUE guard has no resources and a single empty row.
    """

    resources: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def __len__(self):
        return len(self.rows)

    def __iter__(self) -> Iterator[dict[str, str]]:
        for row in self.rows:
            yield dict(zip(self.resources, row))


def solutions(guard: Guard, skillset: Skillset) -> SolutionSet:
    involved = involved_resources(guard)
    resources = tuple(r for r in skillset.resources if r.name in involved)
    names = tuple(r.name for r in resources)
    rows = tuple(
        row for row in product(*(r.states for r in resources))
        if evaluate(guard, dict(zip(names, row)))
    )
    return SolutionSet(names, rows)
