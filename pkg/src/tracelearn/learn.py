"""End-to-end learning over one behavioral class."""

from __future__ import annotations

from typing import Mapping, Sequence

from .actions import Occurrence, collect_occurrences, effect_deviations, learn_action_model
from .goals import learn_goals
from .model import Corpus
from .modelfile import LearnedModel
from .precedence import learn_precedence
from .vocabulary import learn_vocabulary


def learn_model(corpus: Corpus, param_names: Mapping[str, Sequence[str]] | None = None) -> LearnedModel:
    """vocabulary -> action model -> goals -> precedence/mandatory."""
    vocabulary = learn_vocabulary(corpus)
    schemas = learn_action_model(corpus, vocabulary, param_names)
    goal = learn_goals(corpus, vocabulary)
    precedence = learn_precedence(corpus, schemas, vocabulary.fluents, goal)
    return LearnedModel(corpus.class_name, vocabulary, goal, schemas, precedence)


def replay_mismatches(corpus: Corpus, model: LearnedModel) -> list[Occurrence]:
    """Observed transitions that the learned effects fail to reproduce."""
    out = []
    for key, occurrences in collect_occurrences(corpus).items():
        out.extend(effect_deviations(occurrences, model.schemas[key]))
    return out
