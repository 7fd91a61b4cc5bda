"""Goal-relative explanations of one observed behavior.

``contributed(S, P, A)``: P held in state S and was a precondition of the
action A executed there.  ``achieved(S, A, Ps)``: Ps are the relevant
positive effects of A at S, i.e. effects that are goals, or that stayed true
from the next state until some later action consumed them as a precondition.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping

from .actions import ActionSchema, SchemaKey, schema_for
from .goals import GoalModel
from .model import Atom, BehavioralInstance, GroundAction

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class ContributedFact:
    state_id: int
    prop: Atom
    action: GroundAction

    def __str__(self) -> str:
        return f"contributed({self.state_id}, {self.prop}, {self.action})"


@dataclass(frozen=True)
class AchievedFact:
    state_id: int
    action: GroundAction
    relevant: frozenset[Atom]

    def __str__(self) -> str:
        props = ", ".join(str(p) for p in sorted(self.relevant))
        return f"achieved({self.state_id}, {self.action}, {{{props}}})"


@dataclass(frozen=True)
class Explanation:
    instance_id: str
    contributed: tuple[ContributedFact, ...]
    achieved: tuple[AchievedFact, ...]
    # (state_id, relevant prop) -> contributed facts consuming it; empty for goal atoms
    justifications: Mapping[tuple[int, Atom], tuple[ContributedFact, ...]] = field(default_factory=dict)

    @property
    def unexplained(self) -> tuple[AchievedFact, ...]:
        return tuple(f for f in self.achieved if not f.relevant)


def contributed(
    instance: BehavioralInstance, schemas: Mapping[SchemaKey, ActionSchema]
) -> frozenset[ContributedFact]:
    facts = set()
    for sid, action, pre, _ in instance.transitions():
        for p in pre & schema_for(schemas, action).ground_precond(action):
            facts.add(ContributedFact(sid, p, action))
    return frozenset(facts)


def path_true(instance: BehavioralInstance, s_i: int, s_j: int, p: Atom) -> bool:
    """True iff ``p`` holds in every state from ``s_i`` to ``s_j`` inclusive."""
    last = len(instance.states) - 1
    if not 0 <= s_i <= s_j <= last:
        raise IndexError(f"state interval [{s_i}, {s_j}] outside 0..{last}")
    return all(p in instance.states[r].props for r in range(s_i, s_j + 1))


def _consumers(instance, state_id, p, by_state) -> list[ContributedFact]:
    """Contributed facts for ``p`` while it stays true from ``state_id + 1``."""
    out = []
    for t in range(state_id + 1, len(instance.states)):
        if p not in instance.states[t].props:
            break
        out.extend(f for f in by_state.get(t, ()) if f.prop == p)
    return out


def _index(facts) -> dict[int, list[ContributedFact]]:
    by_state: dict[int, list[ContributedFact]] = {}
    for f in sorted(facts):
        by_state.setdefault(f.state_id, []).append(f)
    return by_state


def relevant_effects(
    instance: BehavioralInstance,
    state_id: int,
    schemas: Mapping[SchemaKey, ActionSchema],
    goal_model: GoalModel,
    contributed_facts,
) -> frozenset[Atom]:
    action = instance.actions[state_id]
    by_state = _index(contributed_facts)
    return frozenset(
        p
        for p in schema_for(schemas, action).ground_pos(action)
        if p in goal_model.goal or _consumers(instance, state_id, p, by_state)
    )


def explain_trace(
    instance: BehavioralInstance, schemas: Mapping[SchemaKey, ActionSchema], goal_model: GoalModel
) -> Explanation:
    facts = contributed(instance, schemas)
    by_state = _index(facts)
    achieved = []
    why: dict[tuple[int, Atom], tuple[ContributedFact, ...]] = {}
    for sid, action in enumerate(instance.actions):
        relevant = set()
        for p in sorted(schema_for(schemas, action).ground_pos(action)):
            consumers = _consumers(instance, sid, p, by_state)
            if p in goal_model.goal or consumers:
                relevant.add(p)
                why[(sid, p)] = tuple(consumers)
        fact = AchievedFact(sid, action, frozenset(relevant))
        if not relevant:
            log.warning("unexplained action: %s at %s/state %d has no relevant effect", action, instance.id, sid)
        achieved.append(fact)
    return Explanation(instance.id, tuple(sorted(facts)), tuple(achieved), why)


def render_explanation(explanation: Explanation, goal_model: GoalModel | None = None) -> str:
    """Text report: one line per fact, ordered by state id then lexicographically.

    Each achieved fact is followed by indented ``because`` lines naming the
    goal or the contributed facts that make each relevant effect relevant.
    """
    lines = [f"explanation {explanation.instance_id}"]
    by_state: dict[int, list[tuple[str, list[str]]]] = {}
    for f in explanation.achieved:
        reasons = []
        for p in sorted(f.relevant):
            if goal_model is not None and p in goal_model.goal:
                reasons.append(f"  because {p}: goal")
            for c in explanation.justifications.get((f.state_id, p), ()):
                reasons.append(f"  because {p}: {c}")
        by_state.setdefault(f.state_id, []).append((str(f), reasons))
    for c in explanation.contributed:
        by_state.setdefault(c.state_id, []).append((str(c), []))
    for sid in sorted(by_state):
        for text, reasons in sorted(by_state[sid]):
            lines.append(text)
            lines.extend(reasons)
    return "\n".join(lines) + "\n"
