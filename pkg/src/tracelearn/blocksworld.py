"""Three-block, four-place blocks world and a scripted, clumsy stacker.

The executor knows nothing about goals or action models.  It follows a fixed
rule set that always ends with ``a`` on ``b`` on ``c``, but at every step it
may slip and make an arbitrary legal move instead.  Slips come from a
pseudo-random generator seeded per configuration, so the corpus is identical
on every run.  Its traces are the raw material the learners work from.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from pathlib import Path

from .model import Atom, BehavioralInstance, Corpus, GroundAction, StateRecord, serialize_trace

BLOCKS = ("a", "b", "c")
PLACES = ("p1", "p2", "p3", "p4")
OBJECTS = BLOCKS + PLACES
GOAL = frozenset({Atom("on", ("a", "b")), Atom("on", ("b", "c")), Atom("clear", ("a",))})
GOAL_PRECEDING_PROP = Atom("goal_preceding_prop")
MAX_EXECUTOR_STEPS = 60
#: probability that the executor replaces its rule-based move by a random legal one
SLIP_RATE = 0.5
#: base seed of the corpus generator; trace ``i`` uses ``EXECUTOR_SEED * 1000 + i``
EXECUTOR_SEED = 40


class IllegalMoveError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class BlocksConfig:
    """Support of every block, as sorted ``(block, support)`` pairs."""

    on: tuple[tuple[str, str], ...]

    @classmethod
    def from_dict(cls, on: dict[str, str]) -> "BlocksConfig":
        cfg = cls(tuple(sorted(on.items())))
        cfg.validate()
        return cfg

    @cached_property
    def support(self) -> dict[str, str]:
        return dict(self.on)

    @cached_property
    def above(self) -> dict[str, str]:
        return {s: b for b, s in self.on}

    @property
    def clear(self) -> frozenset[str]:
        return frozenset(x for x in OBJECTS if x not in self.above)

    def validate(self) -> None:
        sup = self.support
        if set(sup) != set(BLOCKS):
            raise ValueError(f"every block needs exactly one support: {sup}")
        if len(set(sup.values())) != len(sup):
            raise ValueError(f"two blocks share a support: {sup}")
        for b in BLOCKS:
            seen, x = set(), b
            while x in sup:
                if x in seen:
                    raise ValueError(f"cyclic support through {b}: {sup}")
                seen.add(x)
                x = sup[x]
                if x not in OBJECTS:
                    raise ValueError(f"unknown support {x!r}")

    def tower(self, block: str) -> list[str]:
        """Blocks of the stack containing ``block``, bottom to top."""
        x = block
        while x in self.support:
            if self.support[x] in PLACES:
                break
            x = self.support[x]
        out = [x]
        while out[-1] in self.above:
            out.append(self.above[out[-1]])
        return out

    def top_above(self, block: str) -> str | None:
        """Topmost block resting (transitively) on ``block``, if any."""
        if block not in self.above:
            return None
        x = block
        while x in self.above:
            x = self.above[x]
        return x

    def move(self, block: str, src: str, dst: str) -> "BlocksConfig":
        """Ground-truth move semantics; raises on anything illegal."""
        if block not in BLOCKS or block in (src, dst) or src == dst:
            raise IllegalMoveError(f"move({block},{src},{dst}): bad arguments")
        if self.support.get(block) != src:
            raise IllegalMoveError(f"move({block},{src},{dst}): {block} is not on {src}")
        clear = self.clear
        if block not in clear or dst not in clear:
            raise IllegalMoveError(f"move({block},{src},{dst}): {block} or {dst} is covered")
        sup = dict(self.support)
        sup[block] = dst
        return BlocksConfig.from_dict(sup)

    def legal_moves(self) -> list[GroundAction]:
        clear = self.clear
        out = []
        for b in BLOCKS:
            if b not in clear:
                continue
            for dst in sorted(clear):
                if dst not in (b, self.support[b]):
                    out.append(GroundAction("move", (b, self.support[b], dst)))
        return sorted(out)


#: a on c, b alone; the executor wastes two moves before stacking
EXAMPLE_CONFIG = BlocksConfig.from_dict({"a": "c", "b": "p1", "c": "p3"})
PARAM_NAMES = {"move": ("Block", "From", "To")}


def enumerate_configs() -> list[BlocksConfig]:
    out = []
    for supports in product(OBJECTS, repeat=len(BLOCKS)):
        try:
            out.append(BlocksConfig.from_dict(dict(zip(BLOCKS, supports))))
        except ValueError:
            continue
    return sorted(out)


def static_atoms() -> frozenset[Atom]:
    """Typing and equality facts.  Blocks are places too: they can hold a block."""
    atoms = {Atom("block", (b,)) for b in BLOCKS}
    atoms |= {Atom("place", (x,)) for x in OBJECTS}
    atoms |= {Atom("eq", (x, x)) for x in OBJECTS}
    return frozenset(atoms)


def config_to_state(config: BlocksConfig) -> frozenset[Atom]:
    config.validate()
    atoms = {Atom("on", pair) for pair in config.on}
    atoms |= {Atom("clear", (x,)) for x in config.clear}
    return frozenset(atoms) | static_atoms()


def satisfies_goal(config: BlocksConfig) -> bool:
    return GOAL <= config_to_state(config)


def _lowest_free_place(config: BlocksConfig) -> str:
    return min(p for p in PLACES if p in config.clear)


def executor_step(config: BlocksConfig) -> GroundAction:
    """The next move the scripted executor makes from ``config``."""
    sup = config.support

    def unstack(block: str, dst: str) -> GroundAction:
        top = config.top_above(block)
        return GroundAction("move", (top, sup[top], dst))

    if sup["b"] != "c":
        if config.top_above("c") is not None:
            stack = set(config.tower("c"))
            targets = sorted(x for x in BLOCKS if x in config.clear and x not in stack)
            return unstack("c", targets[0] if targets else _lowest_free_place(config))
        if config.top_above("b") is not None:
            return unstack("b", _lowest_free_place(config))
        tower = config.tower("c")
        if "a" in tower[: tower.index("c")]:
            # c rests on a: a could never be freed once b sits on c
            return GroundAction("move", ("c", sup["c"], _lowest_free_place(config)))
        return GroundAction("move", ("b", sup["b"], "c"))
    for block in ("b", "a"):
        if config.top_above(block) is not None:
            return unstack(block, _lowest_free_place(config))
    return GroundAction("move", ("a", sup["a"], "b"))


def run_executor(
    config: BlocksConfig,
    instance_id: str = "bw",
    seed: int | None = None,
    slip_rate: float = SLIP_RATE,
) -> BehavioralInstance:
    """Run the executor from ``config`` until the stack a/b/c is built.

    With ``seed=None`` the executor never slips and follows its rules only.
    """
    rng = random.Random(seed) if seed is not None else None
    configs, actions = [config], []
    while not satisfies_goal(configs[-1]):
        if len(actions) >= MAX_EXECUTOR_STEPS:
            raise RuntimeError(f"executor did not terminate from {config}")
        current = configs[-1]
        if rng is not None and rng.random() < slip_rate:
            action = rng.choice(current.legal_moves())
        else:
            action = executor_step(current)
        configs.append(current.move(*action.args))
        actions.append(action)
    states = tuple(StateRecord(i, config_to_state(c)) for i, c in enumerate(configs))
    return BehavioralInstance(instance_id, states, tuple(actions))


def instance_name(index: int) -> str:
    return f"bw_{index:03d}"


def corpus_seed(index: int) -> int:
    return EXECUTOR_SEED * 1000 + index


def generate_instances() -> list[BehavioralInstance]:
    """One executor run per configuration, in enumeration order."""
    return [
        run_executor(cfg, instance_name(i), seed=corpus_seed(i))
        for i, cfg in enumerate(enumerate_configs())
    ]


def generate_corpus(out_dir: str | Path, instances: list[BehavioralInstance] | None = None) -> list[Path]:
    """Write one ``bw_NNN.trace`` per configuration into ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for inst in instances if instances is not None else generate_instances():
        path = out_dir / f"{inst.id}.trace"
        path.write_text(serialize_trace(inst), encoding="utf-8")
        paths.append(path)
    return paths


def inject_goal_preceding_prop(corpus: Corpus, atom: Atom = GOAL_PRECEDING_PROP) -> Corpus:
    """Add ``atom`` to every state before ``on(a,b)`` first holds.

    Instances that start with ``on(a,b)`` are left untouched.
    """
    target = Atom("on", ("a", "b"))
    out = []
    for inst in corpus:
        if target in inst.initial.props:
            out.append(inst)
            continue
        states, marking = [], True
        for s in inst.states:
            marking = marking and target not in s.props
            states.append(StateRecord(s.id, s.props | {atom}) if marking else s)
        out.append(BehavioralInstance(inst.id, tuple(states), inst.actions))
    return Corpus(corpus.class_name, tuple(out))
