"""
Which facts have to come first
==============================

A proposition must precede another when, in every behavior showing both, it
holds first and is not simply used up as a precondition along the way. If it
must precede something but is not itself a goal, it is mandatory: an
intermediate step the agent cannot skip.
"""

from tracelearn import blocksworld
from tracelearn.learn import learn_model
from tracelearn.model import Atom, Corpus, GroundAction, StateRecord, BehavioralInstance

corpus = Corpus("blocksworld", tuple(blocksworld.generate_instances()))
params = {"move": ("Block", "From", "To")}

# On the clean corpus the only constraint links two goal atoms, so nothing
# is mandatory.
clean = learn_model(corpus, params)
print("must precede:", [f"{a} < {b}" for a, b in sorted(clean.precedence.must_precede)])
print("mandatory:", sorted(map(str, clean.precedence.mandatory)))

# Mark every state before on(a,b) first appears with an extra proposition.
# It now precedes on(a,b) everywhere without being a goal.
injected = learn_model(blocksworld.inject_goal_preceding_prop(corpus), params)
print("mandatory after injection:", sorted(map(str, injected.precedence.mandatory)))

# The relation is not transitive. p1 precedes p2 and p2 precedes p3, but in
# the second behavior p3 is there before p1 ever shows up.
tick = GroundAction("tick")


def behavior(name, *states):
    recs = tuple(StateRecord(i, frozenset(Atom(p) for p in s)) for i, s in enumerate(states))
    return BehavioralInstance(name, recs, (tick,) * (len(states) - 1))


toy = Corpus("toy", (behavior("b1", {"p1"}, {"p2"}, {"p3"}), behavior("b2", {"p2", "p3"}, {"p1"}, {"p1", "p2"})))
print("toy:", [f"{a} < {b}" for a, b in sorted(learn_model(toy).precedence.must_precede)])
