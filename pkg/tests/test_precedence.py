from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from helpers import act, atoms, make_instance
from tracelearn.actions import MissingSchemaError, learn_action_model
from tracelearn.goals import GoalModel, learn_goals
from tracelearn.learn import learn_model
from tracelearn.model import Atom, Corpus, parse_atom
from tracelearn.precedence import mandatory, must_precede, precedes_in_instance, symmetric_pairs
from tracelearn.vocabulary import learn_vocabulary

P1, P2, P3 = Atom("p1"), Atom("p2"), Atom("p3")


def nontransitive_corpus() -> Corpus:
    tick = act("tick")
    return Corpus(
        "chain",
        (
            # p1 then p2 then p3
            make_instance("b1", [{P1}, {P2}, {P3}], [tick, tick]),
            # p2 and p3 together first, then p1; p3 never follows p1 here
            make_instance("b2", [{P2, P3}, {P1}, {P1, P2}], [tick, tick]),
        ),
    )


def test_example_trace_precedence(example_instance, bw_model):
    s = bw_model.schemas
    assert precedes_in_instance(example_instance, parse_atom("on(b,c)"), parse_atom("on(a,b)"), s)
    assert not precedes_in_instance(example_instance, parse_atom("clear(b)"), parse_atom("on(a,b)"), s)


def test_clear_b_never_precedes_on_a_b(bw_corpus, bw_model):
    p1, p2 = parse_atom("clear(b)"), parse_atom("on(a,b)")
    for inst in bw_corpus:
        if p2 in inst.initial.props:
            continue
        assert not precedes_in_instance(inst, p1, p2, bw_model.schemas)
        assert not oracles.precedes(inst, p1, p2, bw_model.schemas)


def test_initial_clause():
    inst = make_instance("i", [{P1, P2}, set()], [act("tick")])
    schemas = {("tick", 0): learn_action_model(Corpus("c", (inst,)), learn_vocabulary(Corpus("c", (inst,))))[("tick", 0)]}
    assert precedes_in_instance(inst, P1, P2, schemas)
    assert precedes_in_instance(inst, P2, P1, schemas)


def test_only_initial_cooccurrence_gives_nothing():
    inst = make_instance("i", [{P1, P2}, set()], [act("tick")])
    corpus = Corpus("c", (inst,))
    vocab = learn_vocabulary(corpus)
    assert must_precede(corpus, learn_action_model(corpus, vocab), vocab.fluents) == frozenset()


def test_nontransitive_fixture():
    corpus = nontransitive_corpus()
    model = learn_model(corpus)
    pairs = model.precedence.must_precede
    assert pairs == {(P1, P2), (P2, P3)}
    assert (P1, P3) not in pairs
    assert pairs == oracles.must_precede(corpus, model.schemas, model.vocabulary.fluents)


def test_consumed_precondition_blocks_precedence():
    # p is required by 'use', so it cannot count as preceding q produced by that action
    corpus = Corpus(
        "c",
        (
            make_instance("i1", [{Atom("p")}, {Atom("q")}], [act("use")]),
            make_instance("i2", [{Atom("p"), Atom("r")}, {Atom("q")}], [act("use")]),
        ),
    )
    model = learn_model(corpus)
    assert model.schemas[("use", 0)].precond == {Atom("p")}
    assert (Atom("p"), Atom("q")) not in model.precedence.must_precede
    assert (Atom("r"), Atom("q")) in model.precedence.must_precede


def test_blocks_precedence(bw_corpus, bw_model):
    pairs = bw_model.precedence.must_precede
    assert (parse_atom("on(b,c)"), parse_atom("on(a,b)")) in pairs
    assert pairs == oracles.must_precede(bw_corpus, bw_model.schemas, bw_model.vocabulary.fluents)
    assert bw_model.precedence.mandatory == frozenset()


def test_injected_precedence(bw_injected, bw_injected_model):
    gpp = Atom("goal_preceding_prop")
    m = bw_injected_model
    assert m.precedence.mandatory == {gpp}
    assert gpp in m.vocabulary.fluents and gpp not in m.goal.goal
    assert (gpp, parse_atom("on(a,b)")) in m.precedence.must_precede
    assert m.precedence.must_precede == oracles.must_precede(bw_injected, m.schemas, m.vocabulary.fluents)


def test_mandatory_axiom():
    goal = GoalModel(frozenset({P2}))
    assert mandatory([], goal) == frozenset()
    assert mandatory([(P1, P2), (P2, P3)], goal) == {P1}


def test_symmetric_pairs_reported(caplog):
    # p1, then p2, then p1 again: each precedes the other
    corpus = Corpus("c", (make_instance("i", [{P1}, {P2}, {P1}], [act("tick"), act("tick")]),))
    with caplog.at_level("WARNING"):
        model = learn_model(corpus)
    assert {(P1, P2), (P2, P1)} <= model.precedence.must_precede
    assert symmetric_pairs(model.precedence.must_precede) == [(P1, P2)]
    assert any("precedence anomaly" in r.getMessage() for r in caplog.records)


def test_missing_schema_propagates(example_instance):
    with pytest.raises(MissingSchemaError):
        precedes_in_instance(example_instance, P1, P2, {})


props = st.sampled_from([P1, P2, P3, Atom("p4")])
actions = st.sampled_from([act("f"), act("g"), act("h")])


@st.composite
def tiny_corpora(draw):
    insts = []
    for k in range(draw(st.integers(1, 4))):
        n = draw(st.integers(0, 5))
        sts = [draw(st.frozensets(props, max_size=3)) for _ in range(n + 1)]
        insts.append(make_instance(f"i{k}", sts, [draw(actions) for _ in range(n)]))
    return Corpus("c", tuple(insts))


@settings(max_examples=150, deadline=None)
@given(tiny_corpora())
def test_matches_definition_oracle(corpus):
    model = learn_model(corpus)
    fluents = model.vocabulary.fluents
    pairs = model.precedence.must_precede
    assert pairs == oracles.must_precede(corpus, model.schemas, fluents)
    assert all(a in fluents and b in fluents for a, b in pairs)
    assert not model.precedence.mandatory & model.goal.goal
    assert not model.precedence.mandatory & model.vocabulary.statics
