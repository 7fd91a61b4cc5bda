from __future__ import annotations

from tracelearn.model import Atom, BehavioralInstance, GroundAction, StateRecord, parse_atom


def atoms(*texts: str) -> frozenset[Atom]:
    return frozenset(parse_atom(t) for t in texts)


def act(text: str) -> GroundAction:
    a = parse_atom(text)
    return GroundAction(a.predicate, a.terms)


def make_instance(iid: str, states, actions) -> BehavioralInstance:
    recs = tuple(StateRecord(i, frozenset(s)) for i, s in enumerate(states))
    return BehavioralInstance(iid, recs, tuple(actions))
