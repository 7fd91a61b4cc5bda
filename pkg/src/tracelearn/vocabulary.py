"""Proposition/action vocabularies and the static/fluent split."""

from __future__ import annotations

from dataclasses import dataclass

from .model import Atom, Corpus, CorpusError, GroundAction


@dataclass(frozen=True)
class Vocabulary:
    propositions: frozenset[Atom]
    statics: frozenset[Atom]
    fluents: frozenset[Atom]
    actions: frozenset[GroundAction]

    def is_static(self, atom: Atom) -> bool:
        return atom in self.statics

    def is_fluent(self, atom: Atom) -> bool:
        return atom in self.fluents


def learn_vocabulary(corpus: Corpus) -> Vocabulary:
    """Union of all states gives the propositions, their intersection the statics."""
    if not corpus.instances:
        raise CorpusError("empty corpus")
    propositions: set[Atom] = set()
    statics: set[Atom] | None = None
    actions: set[GroundAction] = set()
    for inst in corpus:
        for state in inst.states:
            propositions |= state.props
            statics = set(state.props) if statics is None else statics & state.props
        actions.update(inst.actions)
    statics = statics or set()
    return Vocabulary(
        propositions=frozenset(propositions),
        statics=frozenset(statics),
        fluents=frozenset(propositions - statics),
        actions=frozenset(actions),
    )
