"""Class-wide precedence constraints between fluent propositions.

``p1`` precedes ``p2`` in one instance when both hold initially, or when some
state holding ``p1`` (but not ``p2``) is followed by a state where ``p2`` has
become true, and ``p1`` is not consumed as a precondition by any action in
between.  ``p1`` must precede ``p2`` across a class when that holds in every
instance where both occur, and at least one instance shows a real ordering
rather than a shared initial state.  The relation is deliberately not
transitively closed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Mapping

from .actions import ActionSchema, SchemaKey, schema_for
from .goals import GoalModel
from .model import Atom, BehavioralInstance, Corpus

log = logging.getLogger(__name__)

Pair = tuple[Atom, Atom]


@dataclass(frozen=True)
class PrecedenceModel:
    must_precede: frozenset[Pair]
    mandatory: frozenset[Atom]


class _InstanceView:
    """Per-instance lookups reused across all proposition pairs."""

    def __init__(self, instance: BehavioralInstance, schemas: Mapping[SchemaKey, ActionSchema]):
        self.props = [s.props for s in instance.states]
        self.pre = [schema_for(schemas, a).ground_precond(a) for a in instance.actions]
        self.occurring = frozenset().union(*self.props)

    def initially(self, p1: Atom, p2: Atom) -> bool:
        return p1 in self.props[0] and p2 in self.props[0]

    def actually_precedes(self, p1: Atom, p2: Atom) -> bool:
        props, pre = self.props, self.pre
        n = len(props)
        for s1 in range(n):
            if p1 not in props[s1] or p2 in props[s1]:
                continue
            for s2 in range(s1 + 1, n):
                # the action executed at s2-1 is part of the sequence s1..s2
                if p1 in pre[s2 - 1]:
                    break
                if p2 in props[s2]:
                    return True
        return False

    def precedes(self, p1: Atom, p2: Atom) -> bool:
        return self.initially(p1, p2) or self.actually_precedes(p1, p2)


def precedes_in_instance(
    instance: BehavioralInstance, p1: Atom, p2: Atom, schemas: Mapping[SchemaKey, ActionSchema]
) -> bool:
    return _InstanceView(instance, schemas).precedes(p1, p2)


def must_precede(
    corpus: Corpus, schemas: Mapping[SchemaKey, ActionSchema], fluents: Iterable[Atom]
) -> frozenset[Pair]:
    views = [_InstanceView(inst, schemas) for inst in corpus]
    fluents = sorted(set(fluents))
    result = set()
    for p1 in fluents:
        with_p1 = [v for v in views if p1 in v.occurring]
        for p2 in fluents:
            if p1 == p2:
                continue
            witnessed = False
            for v in with_p1:
                if p2 not in v.occurring:
                    continue
                if v.actually_precedes(p1, p2):
                    witnessed = True
                elif not v.initially(p1, p2):
                    break
            else:
                if witnessed:
                    result.add((p1, p2))
    for p1, p2 in symmetric_pairs(result):
        log.warning("precedence anomaly: both %s < %s and %s < %s hold", p1, p2, p2, p1)
    return frozenset(result)


def symmetric_pairs(pairs: Iterable[Pair]) -> list[Pair]:
    pairs = set(pairs)
    return sorted((a, b) for a, b in pairs if (b, a) in pairs and a < b)


def mandatory(pairs: Iterable[Pair], goal_model: GoalModel) -> frozenset[Atom]:
    """Propositions that must precede something without being desired themselves."""
    return frozenset(p for p, _ in pairs if p not in goal_model.goal)


def learn_precedence(
    corpus: Corpus,
    schemas: Mapping[SchemaKey, ActionSchema],
    fluents: Iterable[Atom],
    goal_model: GoalModel,
) -> PrecedenceModel:
    pairs = must_precede(corpus, schemas, fluents)
    return PrecedenceModel(pairs, mandatory(pairs, goal_model))
