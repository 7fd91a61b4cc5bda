"""
Learning what a stacker is up to
================================

A scripted agent builds the tower a/b/c from every one of the 120 possible
starting configurations. We only watch: states and actions go to trace files,
and the learner works from those files alone.
"""

import tempfile
from pathlib import Path

from tracelearn import blocksworld
from tracelearn.learn import learn_model
from tracelearn.model import load_corpus, trace_files

# Record one behavior per configuration.
out = Path(tempfile.mkdtemp()) / "traces"
blocksworld.generate_corpus(out)
corpus = load_corpus(trace_files(out), "blocksworld")
print(len(corpus), "behaviors,", sum(len(i.actions) for i in corpus), "actions")

# Learn everything in one go: vocabulary, action schema, goal, precedence.
model = learn_model(corpus, {"move": ("Block", "From", "To")})

# Typing and equality facts never change, so they come out as statics.
print("statics:", ", ".join(map(str, sorted(model.vocabulary.statics))))

# The goal is whatever every final state has in common.
print("goal:", ", ".join(map(str, sorted(model.goal.goal))))

# One lifted schema for move/3.
s = model.schemas[("move", 3)]
for label, atoms in [("pre", s.precond), ("add", s.pos_effects), ("del", s.neg_effects), ("valid", s.validity)]:
    print(f"  {label:5} {', '.join(map(str, sorted(atoms)))}")
