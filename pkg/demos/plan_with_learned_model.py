"""
Doing better than the teacher
=============================

The learned schema and goal are enough to plan. Breadth-first search over
the learned model finds shortest plans, which we compare with what the
executor actually did.
"""

from tracelearn import blocksworld
from tracelearn.learn import learn_model
from tracelearn.model import Corpus
from tracelearn.planner import PlanningProblem, format_plan, plan

instances = blocksworld.generate_instances()
model = learn_model(Corpus("blocksworld", tuple(instances)), {"move": ("Block", "From", "To")})


def shortest(initial):
    problem = PlanningProblem.from_model(initial, model.goal.goal, model.schemas, model.vocabulary.statics)
    return plan(problem)


example = instances[blocksworld.enumerate_configs().index(blocksworld.EXAMPLE_CONFIG)]
print("executor:", "; ".join(map(str, example.actions)))
print(format_plan(shortest(example.initial.props)))

planned = [len(shortest(i.initial.props)) for i in instances]
executed = [len(i.actions) for i in instances]
print("total steps: planner", sum(planned), "vs executor", sum(executed))
print("shorter on", sum(p < e for p, e in zip(planned, executed)), "of", len(instances))
