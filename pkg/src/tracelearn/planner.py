"""Shortest-plan search over the learned action model."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

from .actions import ActionSchema, SchemaKey
from .model import Atom, GroundAction, constants_of

DEFAULT_MAX_DEPTH = 20


class InapplicableActionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class GroundOperator:
    action: GroundAction
    pre: frozenset[Atom] = field(compare=False)
    add: frozenset[Atom] = field(compare=False)
    delete: frozenset[Atom] = field(compare=False)


@dataclass(frozen=True)
class PlanningProblem:
    initial: frozenset[Atom]
    goal: frozenset[Atom]
    schemas: tuple[ActionSchema, ...]
    statics: frozenset[Atom]
    objects: frozenset[str]

    @classmethod
    def from_model(
        cls,
        initial: Iterable[Atom],
        goal: Iterable[Atom],
        schemas: Mapping[SchemaKey, ActionSchema] | Sequence[ActionSchema],
        statics: Iterable[Atom],
        objects: Iterable[str] | None = None,
    ) -> "PlanningProblem":
        """Build a problem; objects default to every constant of statics and initial."""
        initial, statics = frozenset(initial), frozenset(statics)
        if isinstance(schemas, Mapping):
            schemas = [schemas[k] for k in sorted(schemas)]
        if objects is None:
            objects = constants_of(statics) | constants_of(initial)
        return cls(initial - statics, frozenset(goal), tuple(schemas), statics, frozenset(objects))


@dataclass(frozen=True)
class Plan:
    steps: tuple[GroundAction, ...]

    def __len__(self) -> int:
        return len(self.steps)


def ground_actions(
    schemas: Iterable[ActionSchema], objects: Iterable[str], statics: frozenset[Atom]
) -> list[GroundOperator]:
    objects = sorted(set(objects))
    ops = []
    for schema in schemas:
        for args in product(objects, repeat=len(schema.params)):
            if not schema.admits(args, statics):
                continue
            action = GroundAction(schema.name, args)
            ops.append(
                GroundOperator(
                    action,
                    schema.ground_precond(action),
                    schema.ground_pos(action),
                    schema.ground_neg(action),
                )
            )
    return sorted(ops)


def apply(state: frozenset[Atom], op: GroundOperator) -> frozenset[Atom]:
    if not op.pre <= state:
        missing = ", ".join(str(a) for a in sorted(op.pre - state))
        raise InapplicableActionError(f"{op.action} not applicable: missing {missing}")
    return (state - op.delete) | op.add


def plan(problem: PlanningProblem, max_depth: int = DEFAULT_MAX_DEPTH) -> Plan | None:
    """Breadth-first search; returns a shortest plan or None.

    Successors are expanded in lexicographic action order, so among shortest
    plans the lexicographically smallest action sequence is returned.  Search
    stops at ``max_depth`` steps.
    """
    goal = problem.goal - problem.statics
    if goal <= problem.initial:
        return Plan(())
    ops = ground_actions(problem.schemas, problem.objects, problem.statics)
    start = problem.initial
    parent: dict[frozenset[Atom], tuple[frozenset[Atom], GroundAction] | None] = {start: None}
    frontier = deque([(start, 0)])
    while frontier:
        state, depth = frontier.popleft()
        if depth >= max_depth:
            continue
        for op in ops:
            if not op.pre <= state:
                continue
            succ = (state - op.delete) | op.add
            if succ in parent:
                continue
            parent[succ] = (state, op.action)
            if goal <= succ:
                return Plan(_unwind(parent, succ))
            frontier.append((succ, depth + 1))
    return None


def format_plan(result: Plan | None) -> str:
    if result is None:
        return "no plan\n"
    lines = [f"action {a}" for a in result.steps]
    lines.append(f"length {len(result)}")
    return "\n".join(lines) + "\n"


def _unwind(parent, state) -> tuple[GroundAction, ...]:
    steps = []
    while parent[state] is not None:
        state, action = parent[state]
        steps.append(action)
    return tuple(reversed(steps))


def execute(initial: frozenset[Atom], steps: Sequence[GroundAction], ops: Sequence[GroundOperator]) -> frozenset[Atom]:
    """Apply ``steps`` in order, raising if any step is inapplicable."""
    by_action = {op.action: op for op in ops}
    state = initial
    for action in steps:
        if action not in by_action:
            raise InapplicableActionError(f"{action} is not a valid grounding")
        state = apply(state, by_action[action])
    return state
