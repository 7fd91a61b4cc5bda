"""
Explaining a wasteful behavior
==============================

Starting with a on c and b alone, the stacker first parks a on b, then moves
it again to p2 before building the tower. The explainer links each action to
the effects that matter: goal atoms, or atoms a later action relies on.
"""

from tracelearn import blocksworld
from tracelearn.explain import explain_trace, render_explanation
from tracelearn.learn import learn_model
from tracelearn.model import Corpus

instances = blocksworld.generate_instances()
model = learn_model(Corpus("blocksworld", tuple(instances)), {"move": ("Block", "From", "To")})

index = blocksworld.enumerate_configs().index(blocksworld.EXAMPLE_CONFIG)
behavior = instances[index]
print("actions:", "; ".join(map(str, behavior.actions)))

# achieved(S, A, {...}) lists the relevant effects of A at state S;
# the indented lines say why each one counts.
print(render_explanation(explain_trace(behavior, model.schemas, model.goal), model.goal))
