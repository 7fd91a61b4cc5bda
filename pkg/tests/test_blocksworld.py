from __future__ import annotations

import pytest

import oracles
from helpers import atoms
from tracelearn import blocksworld
from tracelearn.blocksworld import BlocksConfig, IllegalMoveError
from tracelearn.model import Atom, load_corpus, parse_atom, trace_files

STATIC_COUNT = 17  # 3 block, 7 place, 7 eq


def test_enumeration_count_matches_closed_form():
    configs = blocksworld.enumerate_configs()
    assert len(configs) == 120 == oracles.count_configs(3, 4)
    assert len(set(configs)) == 120
    assert configs == sorted(configs)
    for cfg in configs:
        cfg.validate()


def test_closed_form_small_cases():
    # one block on k places: k; two blocks on two places: 2 alone-pairs + 2*2 stacks
    assert oracles.count_configs(1, 3) == 3
    assert oracles.count_configs(2, 2) == 6


def test_example_config():
    assert blocksworld.EXAMPLE_CONFIG in blocksworld.enumerate_configs()
    state = blocksworld.config_to_state(blocksworld.EXAMPLE_CONFIG)
    assert state - blocksworld.static_atoms() == atoms(
        "on(a,c)", "on(c,p3)", "on(b,p1)", "clear(a)", "clear(b)", "clear(p2)", "clear(p4)"
    )


def test_all_on_table():
    cfg = BlocksConfig.from_dict({"a": "p1", "b": "p2", "c": "p3"})
    assert atoms("clear(a)", "clear(b)", "clear(c)", "clear(p4)") <= blocksworld.config_to_state(cfg)


def test_state_size():
    for cfg in blocksworld.enumerate_configs():
        state = blocksworld.config_to_state(cfg)
        on = sum(a.predicate == "on" for a in state)
        clear = sum(a.predicate == "clear" for a in state)
        assert on == 3
        assert len(state) == on + clear + STATIC_COUNT


@pytest.mark.parametrize(
    "on",
    [{"a": "b", "b": "a", "c": "p1"}, {"a": "p1", "b": "p1", "c": "p2"}, {"a": "p1", "b": "p2"}, {"a": "zz", "b": "p1", "c": "p2"}],
)
def test_invalid_configs(on):
    with pytest.raises(ValueError):
        BlocksConfig.from_dict(on)


def test_illegal_moves():
    cfg = blocksworld.EXAMPLE_CONFIG
    with pytest.raises(IllegalMoveError):
        cfg.move("c", "p3", "p2")  # c is covered
    with pytest.raises(IllegalMoveError):
        cfg.move("a", "p1", "p2")  # wrong source
    with pytest.raises(IllegalMoveError):
        cfg.move("a", "c", "a")


def test_rule_executor_reproduces_example_detour():
    inst = blocksworld.run_executor(blocksworld.EXAMPLE_CONFIG)
    assert [str(a) for a in inst.actions] == ["move(a,c,b)", "move(a,b,p2)", "move(b,p1,c)", "move(a,p2,b)"]


def test_corpus_example_trace(example_instance):
    assert [str(a) for a in example_instance.actions] == [
        "move(a,c,b)", "move(a,b,p2)", "move(b,p1,c)", "move(a,p2,b)"
    ]


def test_goal_config_gives_empty_trace():
    cfg = BlocksConfig.from_dict({"a": "b", "b": "c", "c": "p4"})
    assert blocksworld.run_executor(cfg).actions == ()
    assert blocksworld.run_executor(cfg, seed=1).actions == ()


@pytest.mark.parametrize("seed", [None, 0, 1])
def test_executor_terminates_legally(seed):
    for i, cfg in enumerate(blocksworld.enumerate_configs()):
        inst = blocksworld.run_executor(cfg, seed=None if seed is None else seed * 1000 + i)
        assert blocksworld.GOAL <= inst.final.props
        current = cfg
        for k, a in enumerate(inst.actions):
            assert a in current.legal_moves()
            current = current.move(*a.args)
            assert blocksworld.config_to_state(current) == inst.props(k + 1)


def test_corpus_is_deterministic(tmp_path, bw_instances):
    assert blocksworld.generate_instances() == bw_instances
    a = blocksworld.generate_corpus(tmp_path / "a")
    b = blocksworld.generate_corpus(tmp_path / "b")
    assert [p.name for p in a] == [f"bw_{i:03d}.trace" for i in range(120)]
    assert [p.read_bytes() for p in a] == [p.read_bytes() for p in b]
    corpus = load_corpus(trace_files(tmp_path / "a"), "bw")
    assert list(corpus.instances) == bw_instances


def test_injection(bw_corpus, bw_injected):
    gpp = blocksworld.GOAL_PRECEDING_PROP
    on_ab = parse_atom("on(a,b)")
    for clean, inj in zip(bw_corpus, bw_injected):
        assert clean.actions == inj.actions
        if on_ab in clean.initial.props:
            assert inj == clean
            continue
        first = next(i for i, s in enumerate(clean.states) if on_ab in s.props)
        for i, (c, s) in enumerate(zip(clean.states, inj.states)):
            assert s.props == (c.props | {gpp} if i < first else c.props)
    assert any(on_ab in i.initial.props for i in bw_corpus)


def test_corpus_shape(bw_corpus):
    assert len(bw_corpus) == 120
    assert sum(len(i.actions) for i in bw_corpus) == 697
    assert max(len(i.actions) for i in bw_corpus) <= blocksworld.MAX_EXECUTOR_STEPS
