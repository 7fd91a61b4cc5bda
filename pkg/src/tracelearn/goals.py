from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .actions import ActionSchema, SchemaKey, schema_for
from .model import Atom, Corpus, CorpusError
from .vocabulary import Vocabulary


@dataclass(frozen=True)
class GoalModel:
    goal: frozenset[Atom]

    @property
    def desired(self) -> frozenset[Atom]:
        return self.goal


def learn_goals(corpus: Corpus, vocabulary: Vocabulary) -> GoalModel:
    """Fluents true in the final state of every instance.

    Assumes each successful behavior stops as soon as its goals hold, so
    whatever survives the intersection is what the agent acts as if it wants.
    """
    goals: frozenset[Atom] | None = None
    for inst in corpus:
        final = inst.final.props & vocabulary.fluents
        goals = final if goals is None else goals & final
    if goals is None:
        raise CorpusError("empty corpus")
    return GoalModel(goals)


def desired(goal_model: GoalModel, p: Atom) -> bool:
    return p in goal_model.goal


def necessity_suspects(
    goal_model: GoalModel, schemas: Mapping[SchemaKey, ActionSchema], corpus: Corpus
) -> frozenset[Atom]:
    """Goal atoms that are also preconditions of some observed goal-achieving action.

    Diagnostic only: such atoms may be necessities of the final state rather
    than genuine goals.
    """
    suspects = set()
    for inst in corpus:
        for action in inst.actions:
            schema = schema_for(schemas, action)
            if schema.ground_pos(action) & goal_model.goal:
                suspects |= schema.ground_precond(action) & goal_model.goal
    return frozenset(suspects)
