"""The full blocks-world demonstration, written to one output directory."""

from __future__ import annotations

from pathlib import Path

from . import blocksworld
from .explain import explain_trace, render_explanation
from .goals import necessity_suspects
from .learn import learn_model, replay_mismatches
from .model import Corpus, load_corpus, trace_files, write_atomic
from .modelfile import serialize_model
from .planner import PlanningProblem, format_plan, plan


def _fmt(atoms) -> str:
    return "{" + ", ".join(str(a) for a in sorted(atoms)) + "}" if atoms else "none"


def run_pipeline(out: Path) -> str:
    """Generate, learn (clean and injected), explain every trace, plan every start.

    Returns the summary text, which is also written to ``out/summary.txt``.
    """
    out.mkdir(parents=True, exist_ok=True)
    instances = blocksworld.generate_instances()
    blocksworld.generate_corpus(out / "traces", instances)
    injected = blocksworld.inject_goal_preceding_prop(Corpus("blocksworld", tuple(instances)))
    blocksworld.generate_corpus(out / "traces" / "injected", list(injected.instances))

    # learn from the files, as a separate observer would
    corpus = load_corpus(trace_files(out / "traces"), "blocksworld")
    injected = load_corpus(trace_files(out / "traces" / "injected"), "blocksworld")
    model = learn_model(corpus, blocksworld.PARAM_NAMES)
    write_atomic(out / "blocksworld.model", serialize_model(model))
    injected_model = learn_model(injected, blocksworld.PARAM_NAMES)
    write_atomic(out / "blocksworld_injected.model", serialize_model(injected_model))

    (out / "explain").mkdir(exist_ok=True)
    (out / "plans").mkdir(exist_ok=True)
    explanations = {}
    plans = {}
    for inst in corpus:
        exp = explain_trace(inst, model.schemas, model.goal)
        explanations[inst.id] = exp
        write_atomic(out / "explain" / f"{inst.id}.explain", render_explanation(exp, model.goal))
        problem = PlanningProblem.from_model(
            inst.initial.props, model.goal.goal, model.schemas, model.vocabulary.statics
        )
        result = plan(problem)
        plans[inst.id] = result
        write_atomic(out / "plans" / f"{inst.id}.plan", format_plan(result))

    example_index = blocksworld.enumerate_configs().index(blocksworld.EXAMPLE_CONFIG)
    example = corpus.instances[example_index]
    schema = model.schemas[("move", 3)]
    exec_len = {i.id: len(i.actions) for i in corpus}
    improved = [k for k in plans if len(plans[k]) < exec_len[k]]
    unexplained = sum(len(e.unexplained) for e in explanations.values())

    lines = [
        f"behaviors observed: {len(corpus)}",
        f"actions executed: {sum(exec_len.values())}",
        f"propositions: {len(model.vocabulary.propositions)}"
        f" (static {len(model.vocabulary.statics)}, fluent {len(model.vocabulary.fluents)})",
        f"ground actions observed: {len(model.vocabulary.actions)}",
        f"static propositions: {_fmt(model.vocabulary.statics)}",
        "",
        f"goal: {_fmt(model.goal.goal)}",
        f"desired: {_fmt(model.goal.desired)}",
        f"goals that are also preconditions of goal-achieving actions: "
        f"{_fmt(necessity_suspects(model.goal, model.schemas, corpus))}",
        "must precede: " + (", ".join(f"{a} < {b}" for a, b in sorted(model.precedence.must_precede)) or "none"),
        f"mandatory: {_fmt(model.precedence.mandatory)}",
        f"mandatory after injecting {blocksworld.GOAL_PRECEDING_PROP}: {_fmt(injected_model.precedence.mandatory)}",
        "",
        f"action {schema.head()}",
        f"  pre:   {_fmt(schema.precond)}",
        f"  add:   {_fmt(schema.pos_effects)}",
        f"  del:   {_fmt(schema.neg_effects)}",
        f"  valid: {_fmt(schema.validity)}",
        f"replay mismatches: {len(replay_mismatches(corpus, model))} clean, "
        f"{len(replay_mismatches(injected, injected_model))} injected",
        "",
        f"example behavior {example.id}: " + "; ".join(str(a) for a in example.actions),
    ]
    lines += ["  " + l for l in render_explanation(explanations[example.id], model.goal).splitlines()[1:]]
    lines += [
        f"actions without relevant effects across all behaviors: {unexplained}",
        "",
        f"plan for {example.id}: " + "; ".join(str(a) for a in plans[example.id].steps)
        + f" ({len(plans[example.id])} steps, executor used {exec_len[example.id]})",
        f"planned steps over all behaviors: {sum(len(p) for p in plans.values())}"
        f" vs executor {sum(exec_len.values())}; shorter on {len(improved)} of {len(plans)}",
    ]
    text = "\n".join(lines) + "\n"
    write_atomic(out / "summary.txt", text)
    return text
