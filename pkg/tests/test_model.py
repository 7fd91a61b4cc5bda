from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import act, atoms, make_instance
from tracelearn import blocksworld
from tracelearn.model import (
    Atom,
    Corpus,
    CorpusError,
    TraceSyntaxError,
    load_corpus,
    parse_atom,
    parse_state,
    parse_trace,
    serialize_trace,
    write_trace,
)

EXAMPLE_ACTIONS = ["move(a,c,b)", "move(a,b,p2)", "move(b,p1,c)", "move(a,p2,b)"]


def test_zero_action_trace():
    inst = parse_trace("behavior t0\nstate 0\n  on(a,p1)\nend\n")
    assert inst.id == "t0"
    assert len(inst.states) == 1 and inst.actions == ()
    assert inst.initial.props == atoms("on(a,p1)")


def test_example_trace_roundtrips_through_text(example_instance):
    inst = parse_trace(serialize_trace(example_instance))
    assert len(inst.states) == 5
    assert [str(a) for a in inst.actions] == EXAMPLE_ACTIONS
    assert inst == example_instance


def test_comments_blank_lines_and_duplicates():
    text = "# header\nbehavior x\n\nstate 0\n  p\n  p\n  q(a)\naction go\n# mid\nstate 1\n  q(a)\nend\n"
    inst = parse_trace(text)
    assert inst.props(0) == atoms("p", "q(a)")
    assert inst.actions == (act("go"),)


def test_term_order_preserved():
    assert parse_atom("on(b,a)").terms == ("b", "a")
    assert parse_atom("on(b, a)") == parse_atom("on(b,a)")


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("behavior x\nstate 0\n  p\nstate 2\n  p\nend\n", 4),
        ("behavior x\nstate 0\n  on(A,b)\nend\n", 3),
        ("behavior x\naction go\nstate 0\nend\n", 2),
        ("behavior x\nstate 0\naction go\naction go\nstate 1\nend\n", 4),
        ("behavior x\nstate 0\naction go\nend\n", 4),
        ("behavior x\nstate 0\n  on(a,\nend\n", 3),
        ("behavior x\nstate 0\nstate 1\nend\n", 3),
        ("behavior x\nstate 0\nend\n  p\n", 4),
        ("behaviour x\nstate 0\nend\n", 1),
        ("behavior x\nstate 0\n p\nend\n", 3),
    ],
)
def test_syntax_errors_carry_line_numbers(text, lineno):
    with pytest.raises(TraceSyntaxError) as info:
        parse_trace(text)
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


def test_missing_end_and_empty():
    with pytest.raises(TraceSyntaxError, match="missing 'end'"):
        parse_trace("behavior x\nstate 0\n  p\n")
    with pytest.raises(TraceSyntaxError, match="empty"):
        parse_trace("# nothing\n")


def test_variables_only_where_allowed():
    assert parse_atom("on(Block,p1)", allow_variables=True).terms == ("Block", "p1")
    with pytest.raises(TraceSyntaxError):
        parse_atom("on(Block,p1)")


def test_empty_state_serializes_as_bare_header():
    inst = make_instance("e", [set()], [])
    assert serialize_trace(inst) == "behavior e\nstate 0\nend\n"
    assert parse_trace(serialize_trace(inst)) == inst


def test_insertion_order_irrelevant():
    a = make_instance("x", [[Atom("p"), Atom("q", ("a",))]], [])
    b = make_instance("x", [[Atom("q", ("a",)), Atom("p")]], [])
    assert serialize_trace(a) == serialize_trace(b)


def test_parse_state_forms():
    assert parse_state("state 0\n  clear(a)\n  on(a,p1)\n") == atoms("clear(a)", "on(a,p1)")
    assert parse_state("behavior s\nstate 0\n  clear(a)\nend\n") == atoms("clear(a)")
    with pytest.raises(TraceSyntaxError):
        parse_state("behavior s\nstate 0\naction go\nstate 1\nend\n")
    with pytest.raises(TraceSyntaxError):
        parse_state("")


names = st.from_regex(r"[a-z][a-z0-9_]{0,4}", fullmatch=True)
ground_atoms = st.builds(Atom, names, st.lists(names, max_size=3).map(tuple))
states = st.frozensets(ground_atoms, max_size=6)


@st.composite
def traces(draw):
    n = draw(st.integers(0, 4))
    sts = [draw(states) for _ in range(n + 1)]
    acts = [draw(ground_atoms) for _ in range(n)]
    return make_instance(draw(names), sts, [act(str(a)) for a in acts])


@settings(max_examples=50, deadline=None)
@given(traces())
def test_roundtrip_random_traces(inst):
    text = serialize_trace(inst)
    parsed = parse_trace(text)
    assert parsed == inst
    assert serialize_trace(parsed) == text
    for i, s in enumerate(parsed.states):
        assert s.id == i


@settings(max_examples=50, deadline=None)
@given(traces())
def test_canonical_atom_order(inst):
    lines = serialize_trace(inst).splitlines()
    block: list[Atom] = []
    for line in lines + ["state"]:
        if line.startswith("  "):
            block.append(parse_atom(line.strip()))
        else:
            assert block == sorted(block)
            block = []


def test_load_corpus(tmp_path, bw_instances):
    paths = blocksworld.generate_corpus(tmp_path, bw_instances)
    corpus = load_corpus(paths, "blocksworld")
    assert len(corpus) == 120
    assert [i.id for i in corpus] == [f"bw_{i:03d}" for i in range(120)]
    with pytest.raises(CorpusError, match="empty corpus"):
        load_corpus([], "x")
    with pytest.raises(CorpusError, match="duplicate"):
        load_corpus([paths[0], paths[0]], "x")


def test_load_corpus_reports_offending_path(tmp_path):
    good = tmp_path / "a.trace"
    bad = tmp_path / "b.trace"
    write_trace(make_instance("a", [set()], []), good)
    bad.write_text("behavior b\nstate 0\n", encoding="utf-8")
    with pytest.raises(CorpusError, match="b.trace"):
        load_corpus([good, bad], "x")


def test_corpus_rejects_duplicate_ids():
    inst = make_instance("a", [set()], [])
    with pytest.raises(CorpusError):
        Corpus("x", (inst, inst))


def test_instance_shape_invariant():
    with pytest.raises(ValueError):
        make_instance("a", [set(), set()], [])
