"""Lifted action-schema induction from observed transitions.

Every executed action is an occurrence: the ground action together with the
full state before and after it.  Occurrences of the same ``(name, arity)``
are lifted onto a shared parameter list by replacing argument constants with
variables, then aggregated by set intersection.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .model import Atom, Corpus, GroundAction
from .vocabulary import Vocabulary

log = logging.getLogger(__name__)

#: predicate used for derived inequality atoms in validity conditions
NEQ = "neq"
#: static equality predicate that inequalities are derived from
EQ = "eq"

SchemaKey = tuple[str, int]


class AmbiguousLiftError(ValueError):
    """The action repeats a constant among its arguments."""


class MissingSchemaError(KeyError):
    pass


@dataclass(frozen=True)
class Occurrence:
    instance_id: str
    state_id: int
    action: GroundAction
    pre_props: frozenset[Atom]
    post_props: frozenset[Atom]


@dataclass(frozen=True)
class ActionSchema:
    name: str
    params: tuple[str, ...]
    precond: frozenset[Atom] = frozenset()
    pos_effects: frozenset[Atom] = frozenset()
    neg_effects: frozenset[Atom] = frozenset()
    validity: frozenset[Atom] = frozenset()

    @property
    def key(self) -> SchemaKey:
        return (self.name, len(self.params))

    def head(self) -> str:
        return str(Atom(self.name, self.params))

    def binding(self, args: Sequence[str]) -> dict[str, str]:
        if len(args) != len(self.params):
            raise ValueError(f"{self.head()} takes {len(self.params)} arguments, got {len(args)}")
        return dict(zip(self.params, args))

    def ground_precond(self, action: GroundAction) -> frozenset[Atom]:
        return ground_all(self.precond, self.binding(action.args))

    def ground_pos(self, action: GroundAction) -> frozenset[Atom]:
        return ground_all(self.pos_effects, self.binding(action.args))

    def ground_neg(self, action: GroundAction) -> frozenset[Atom]:
        return ground_all(self.neg_effects, self.binding(action.args))

    def admits(self, args: Sequence[str], statics: frozenset[Atom]) -> bool:
        """True when ``args`` satisfy the validity condition against ``statics``."""
        sub = self.binding(args)
        for atom in self.validity:
            g = ground(atom, sub)
            if atom.predicate == NEQ:
                if g.terms[0] == g.terms[1]:
                    return False
            elif g not in statics:
                return False
        return True

    def rename(self, names: Sequence[str]) -> "ActionSchema":
        """Same schema with parameters renamed positionally."""
        sub = dict(zip(self.params, names))
        return ActionSchema(
            self.name,
            tuple(names),
            ground_all(self.precond, sub),
            ground_all(self.pos_effects, sub),
            ground_all(self.neg_effects, sub),
            ground_all(self.validity, sub),
        )


def ground(atom: Atom, binding: Mapping[str, str]) -> Atom:
    return Atom(atom.predicate, tuple(binding.get(t, t) for t in atom.terms))


def ground_all(atoms: Iterable[Atom], binding: Mapping[str, str]) -> frozenset[Atom]:
    return frozenset(ground(a, binding) for a in atoms)


def default_params(arity: int) -> tuple[str, ...]:
    return tuple(f"V{i}" for i in range(1, arity + 1))


def schema_for(schemas: Mapping[SchemaKey, ActionSchema], action: GroundAction) -> ActionSchema:
    try:
        return schemas[action.key]
    except KeyError:
        raise MissingSchemaError(f"no schema for action {action} ({action.name}/{action.arity})") from None


def collect_occurrences(corpus: Corpus) -> dict[SchemaKey, list[Occurrence]]:
    out: dict[SchemaKey, list[Occurrence]] = defaultdict(list)
    for inst in corpus:
        for sid, action, pre, post in inst.transitions():
            out[action.key].append(Occurrence(inst.id, sid, action, pre, post))
    return dict(out)


def lift(atom: Atom, action: GroundAction, params: Sequence[str]) -> Atom | None:
    """Replace the action's argument constants in ``atom`` by ``params``.

    Returns None when ``atom`` mentions a constant that is not an argument of
    ``action``.  Raises AmbiguousLiftError if an argument constant repeats.
    """
    if len(action.args) != len(params):
        raise ValueError(f"{action} has {len(action.args)} arguments but {len(params)} params given")
    if len(set(action.args)) != len(action.args):
        raise AmbiguousLiftError(f"repeated constant in arguments of {action}")
    sub = dict(zip(action.args, params))
    terms = []
    for t in atom.terms:
        if t not in sub:
            return None
        terms.append(sub[t])
    return Atom(atom.predicate, tuple(terms))


def lift_all(atoms: Iterable[Atom], action: GroundAction, params: Sequence[str]) -> frozenset[Atom]:
    lifted = (lift(a, action, params) for a in atoms)
    return frozenset(a for a in lifted if a is not None)


def _liftable(occurrences: Sequence[Occurrence]) -> list[Occurrence]:
    ok = []
    for occ in occurrences:
        if len(set(occ.action.args)) != len(occ.action.args):
            log.warning(
                "skipping %s at %s/state %d: repeated constant makes lifting ambiguous",
                occ.action, occ.instance_id, occ.state_id,
            )
            continue
        ok.append(occ)
    return ok


def learn_preconditions(
    occurrences: Sequence[Occurrence], fluents: frozenset[Atom], params: Sequence[str]
) -> frozenset[Atom]:
    """Intersect the lifted fluent pre-states of all occurrences."""
    occurrences = _liftable(occurrences)
    if not occurrences:
        raise ValueError("cannot learn preconditions from zero occurrences")
    result: frozenset[Atom] | None = None
    for occ in occurrences:
        lifted = lift_all(occ.pre_props & fluents, occ.action, params)
        result = lifted if result is None else result & lifted
    return result


def _lifted_diffs(occ: Occurrence, params: Sequence[str]) -> tuple[frozenset[Atom], frozenset[Atom]]:
    out = []
    for diff in (occ.post_props - occ.pre_props, occ.pre_props - occ.post_props):
        lifted = set()
        for atom in diff:
            la = lift(atom, occ.action, params)
            if la is None:
                log.warning(
                    "effect %s of %s at %s/state %d mentions a non-argument constant; dropped",
                    atom, occ.action, occ.instance_id, occ.state_id,
                )
            else:
                lifted.add(la)
        out.append(frozenset(lifted))
    return out[0], out[1]


def learn_effects(
    occurrences: Sequence[Occurrence], params: Sequence[str]
) -> tuple[frozenset[Atom], frozenset[Atom]]:
    """Positive and negative effects: intersection of lifted per-occurrence diffs.

    Occurrences whose own diff is larger than the intersection are counted in
    a determinism warning; see :func:`effect_deviations` for the list.
    """
    occurrences = _liftable(occurrences)
    if not occurrences:
        raise ValueError("cannot learn effects from zero occurrences")
    diffs = [_lifted_diffs(occ, params) for occ in occurrences]
    pos = frozenset.intersection(*(d[0] for d in diffs))
    neg = frozenset.intersection(*(d[1] for d in diffs))
    deviating = 0
    for occ, (p, n) in zip(occurrences, diffs):
        if p != pos or n != neg:
            deviating += 1
            log.debug(
                "%s at %s/state %d has effects +%s -%s beyond the learned ones",
                occ.action, occ.instance_id, occ.state_id,
                sorted(map(str, p - pos)), sorted(map(str, n - neg)),
            )
    if deviating:
        log.warning(
            "determinism: %d of %d occurrences of %s/%d have effects beyond the learned ones",
            deviating, len(occurrences), occurrences[0].action.name, len(params),
        )
    return pos, neg


def effect_deviations(occurrences: Sequence[Occurrence], schema: ActionSchema) -> list[Occurrence]:
    """Occurrences whose observed successor differs from the schema's prediction."""
    bad = []
    for occ in occurrences:
        predicted = (occ.pre_props - schema.ground_neg(occ.action)) | schema.ground_pos(occ.action)
        if predicted != occ.post_props:
            bad.append(occ)
    return bad


def derive_inequalities(
    occurrences: Sequence[Occurrence], statics: frozenset[Atom], params: Sequence[str]
) -> tuple[Atom, ...]:
    """``Vi != Vj`` for every pair never observed bound to equal objects.

    Equality is read from static ``eq`` facts under the closed-world
    assumption: ``x != y`` iff ``eq(x,y)`` is not a static fact.
    """
    out = []
    for i in range(len(params)):
        for j in range(i + 1, len(params)):
            if all(Atom(EQ, (o.action.args[i], o.action.args[j])) not in statics for o in occurrences):
                out.append(Atom(NEQ, (params[i], params[j])))
    return tuple(out)


def _static_extensions(statics: frozenset[Atom]) -> dict[tuple[str, int], frozenset[tuple[str, ...]]]:
    ext: dict[tuple[str, int], set[tuple[str, ...]]] = defaultdict(set)
    for atom in statics:
        if atom.arity > 0:
            ext[(atom.predicate, atom.arity)].add(atom.terms)
    return {k: frozenset(v) for k, v in ext.items()}


def learn_validity_condition(
    occurrences: Sequence[Occurrence], statics: frozenset[Atom], params: Sequence[str]
) -> tuple[Atom, ...]:
    """Static predicates covering every observed binding, plus inequalities.

    Predicates are tried by ascending arity, then ascending extension size
    (ties by name), over every tuple of distinct parameters.  A covering
    predicate is skipped when a smaller one already adopted for the same
    tuple has an extension contained in its own, since it adds no
    constraint.
    """
    if not occurrences:
        raise ValueError("cannot learn a validity condition from zero occurrences")
    extensions = _static_extensions(statics)
    order = sorted(extensions, key=lambda k: (k[1], len(extensions[k]), k[0]))
    adopted: dict[tuple[int, ...], list[frozenset]] = defaultdict(list)
    out: list[Atom] = []
    for pred, arity in order:
        ext = extensions[(pred, arity)]
        for idx in permutations(range(len(params)), arity):
            if not all(tuple(o.action.args[i] for i in idx) in ext for o in occurrences):
                continue
            if any(prev <= ext for prev in adopted[idx]):
                continue
            adopted[idx].append(ext)
            out.append(Atom(pred, tuple(params[i] for i in idx)))
    out.extend(derive_inequalities(occurrences, statics, params))
    return tuple(out)


@dataclass
class ActionModelLearner:
    """Learns one schema per ``(name, arity)`` observed in a corpus."""

    vocabulary: Vocabulary
    param_names: Mapping[str, Sequence[str]] = field(default_factory=dict)

    def params_for(self, key: SchemaKey) -> tuple[str, ...]:
        name, arity = key
        names = self.param_names.get(name)
        if names is not None and len(names) == arity:
            return tuple(names)
        return default_params(arity)

    def learn_schema(self, key: SchemaKey, occurrences: Sequence[Occurrence]) -> ActionSchema:
        params = self.params_for(key)
        pos, neg = learn_effects(occurrences, params)
        return ActionSchema(
            name=key[0],
            params=params,
            precond=learn_preconditions(occurrences, self.vocabulary.fluents, params),
            pos_effects=pos,
            neg_effects=neg,
            validity=frozenset(learn_validity_condition(occurrences, self.vocabulary.statics, params)),
        )

    def learn(self, corpus: Corpus) -> dict[SchemaKey, ActionSchema]:
        occ = collect_occurrences(corpus)
        return {key: self.learn_schema(key, occ[key]) for key in sorted(occ)}


def learn_action_model(
    corpus: Corpus,
    vocabulary: Vocabulary,
    param_names: Mapping[str, Sequence[str]] | None = None,
) -> dict[SchemaKey, ActionSchema]:
    return ActionModelLearner(vocabulary, param_names or {}).learn(corpus)
