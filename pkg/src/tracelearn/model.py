"""Core domain types and the ``.trace`` text format.

A trace file records one behavioral instance: an initial state followed by
alternating action/state pairs::

    behavior bw_000
    state 0
      clear(a)
      on(a,p1)
    action move(a,p1,b)
    state 1
      ...
    end

Ground terms are lowercase; uppercase terms are variables and only appear in
model files (see :mod:`tracelearn.modelfile`).
"""

from __future__ import annotations

import os
import re
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
VARIABLE_RE = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")
_ATOM_RE = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\((.*)\))?\Z")

INDENT = "  "


class TraceSyntaxError(ValueError):
    """Malformed trace or model text. ``lineno`` is 1-based, or None."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


class CorpusError(ValueError):
    pass


def is_variable(term: str) -> bool:
    return bool(VARIABLE_RE.match(term))


def is_constant(term: str) -> bool:
    return bool(NAME_RE.match(term))


@dataclass(frozen=True, order=True)
class Atom:
    """A predicate applied to an ordered tuple of terms.

    Terms are plain strings: lowercase names are constants, capitalised
    names are variables.  The dataclass ordering (predicate, then terms) is
    the canonical order used for every serialized set of atoms.
    """

    predicate: str
    terms: tuple[str, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.terms)

    @property
    def is_ground(self) -> bool:
        return all(is_constant(t) for t in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return self.predicate
        return f"{self.predicate}({','.join(self.terms)})"


@dataclass(frozen=True, order=True)
class GroundAction:
    name: str
    args: tuple[str, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def key(self) -> tuple[str, int]:
        return (self.name, len(self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(self.args)})"


@dataclass(frozen=True)
class StateRecord:
    id: int
    props: frozenset[Atom]


@dataclass(frozen=True)
class BehavioralInstance:
    id: str
    states: tuple[StateRecord, ...]
    actions: tuple[GroundAction, ...]

    def __post_init__(self):
        if len(self.states) != len(self.actions) + 1:
            raise ValueError(
                f"instance {self.id!r}: {len(self.states)} states for {len(self.actions)} actions"
            )
        for i, state in enumerate(self.states):
            if state.id != i:
                raise ValueError(f"instance {self.id!r}: state at position {i} has id {state.id}")

    @property
    def initial(self) -> StateRecord:
        return self.states[0]

    @property
    def final(self) -> StateRecord:
        return self.states[-1]

    def props(self, state_id: int) -> frozenset[Atom]:
        return self.states[state_id].props

    def transitions(self):
        """Yield ``(state_id, action, pre_props, post_props)`` for every step."""
        for i, action in enumerate(self.actions):
            yield i, action, self.states[i].props, self.states[i + 1].props


@dataclass(frozen=True)
class Corpus:
    class_name: str
    instances: tuple[BehavioralInstance, ...]

    def __post_init__(self):
        seen = set()
        for inst in self.instances:
            if inst.id in seen:
                raise CorpusError(f"duplicate instance id {inst.id!r}")
            seen.add(inst.id)

    def __len__(self) -> int:
        return len(self.instances)

    def __iter__(self):
        return iter(self.instances)

    def by_id(self, instance_id: str) -> BehavioralInstance:
        for inst in self.instances:
            if inst.id == instance_id:
                return inst
        raise KeyError(instance_id)


def parse_atom(text: str, *, allow_variables: bool = False, lineno: int | None = None) -> Atom:
    """Parse ``name`` or ``name(t1,...,tn)``.

    >>> parse_atom("on(a,p1)")
    Atom(predicate='on', terms=('a', 'p1'))
    """
    m = _ATOM_RE.match(text.strip())
    if not m:
        raise TraceSyntaxError(f"malformed atom {text.strip()!r}", lineno)
    name, args = m.group(1), m.group(2)
    if not NAME_RE.match(name):
        raise TraceSyntaxError(f"bad predicate name {name!r}", lineno)
    if args is None:
        return Atom(name)
    terms = tuple(t.strip() for t in args.split(","))
    for t in terms:
        if is_constant(t):
            continue
        if is_variable(t):
            if not allow_variables:
                raise TraceSyntaxError(f"uppercase term {t!r} in a ground position", lineno)
            continue
        raise TraceSyntaxError(f"bad term {t!r} in {text.strip()!r}", lineno)
    return Atom(name, terms)


def parse_action(text: str, lineno: int | None = None) -> GroundAction:
    atom = parse_atom(text, lineno=lineno)
    return GroundAction(atom.predicate, atom.terms)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line or line.lstrip().startswith("#"):
            continue
        yield lineno, line


def _parse_atom_line(line: str, lineno: int) -> Atom:
    if not line.startswith(INDENT) or line[len(INDENT)] == " ":
        raise TraceSyntaxError(f"expected an atom indented by two spaces, got {line!r}", lineno)
    return parse_atom(line[len(INDENT):], lineno=lineno)


def parse_trace(text: str) -> BehavioralInstance:
    """Parse the text of one ``.trace`` file."""
    lines = list(_content_lines(text))
    if not lines:
        raise TraceSyntaxError("empty trace")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "behavior":
        raise TraceSyntaxError(f"expected 'behavior <id>', got {header!r}", lineno)
    instance_id = parts[1]

    states: list[StateRecord] = []
    actions: list[GroundAction] = []
    current: set[Atom] | None = None
    expect_state = True
    ended = False

    for lineno, line in lines[1:]:
        if ended:
            raise TraceSyntaxError(f"content after 'end': {line!r}", lineno)
        if line == "end":
            if expect_state:
                raise TraceSyntaxError("'end' after an action line; final state missing", lineno)
            states.append(StateRecord(len(states), frozenset(current)))
            ended = True
        elif line.startswith("state"):
            parts = line.split()
            if len(parts) != 2 or parts[0] != "state" or not parts[1].isdigit():
                raise TraceSyntaxError(f"expected 'state <nat>', got {line!r}", lineno)
            if not expect_state:
                raise TraceSyntaxError("two state blocks without an action between them", lineno)
            if current is not None:
                states.append(StateRecord(len(states), frozenset(current)))
            sid = int(parts[1])
            if sid != len(states):
                raise TraceSyntaxError(f"state id {sid} out of sequence, expected {len(states)}", lineno)
            current = set()
            expect_state = False
        elif line.startswith("action "):
            if current is None or expect_state:
                raise TraceSyntaxError("action line not between two states", lineno)
            actions.append(parse_action(line[len("action "):], lineno))
            expect_state = True
        elif line.startswith(" "):
            if current is None or expect_state:
                raise TraceSyntaxError("atom line outside a state block", lineno)
            current.add(_parse_atom_line(line, lineno))
        else:
            raise TraceSyntaxError(f"unrecognised line {line!r}", lineno)

    if not ended:
        raise TraceSyntaxError("missing 'end'")
    return BehavioralInstance(instance_id, tuple(states), tuple(actions))


def parse_state(text: str) -> frozenset[Atom]:
    """Parse a single state block, optionally wrapped as a one-state trace."""
    lines = list(_content_lines(text))
    if lines and lines[0][1].startswith("behavior"):
        inst = parse_trace(text)
        if inst.actions:
            raise TraceSyntaxError("expected a single state, got a trace with actions")
        return inst.initial.props
    if not lines:
        raise TraceSyntaxError("empty state file")
    lineno, first = lines[0]
    parts = first.split()
    if len(parts) != 2 or parts[0] != "state" or not parts[1].isdigit():
        raise TraceSyntaxError(f"expected 'state <nat>', got {first!r}", lineno)
    return frozenset(_parse_atom_line(line, n) for n, line in lines[1:])


def format_state(state_id: int, props: Iterable[Atom]) -> str:
    out = [f"state {state_id}"]
    out.extend(INDENT + str(a) for a in sorted(props))
    return "\n".join(out) + "\n"


def serialize_trace(instance: BehavioralInstance) -> str:
    out = [f"behavior {instance.id}\n"]
    for state in instance.states:
        out.append(format_state(state.id, state.props))
        if state.id < len(instance.actions):
            out.append(f"action {instance.actions[state.id]}\n")
    out.append("end\n")
    return "".join(out)


def read_trace(path: str | Path) -> BehavioralInstance:
    return parse_trace(Path(path).read_text(encoding="utf-8"))


def write_trace(instance: BehavioralInstance, path: str | Path) -> None:
    Path(path).write_text(serialize_trace(instance), encoding="utf-8")


def load_corpus(paths: Sequence[str | Path], class_name: str) -> Corpus:
    """Parse every file in ``paths`` (in order) into one behavioral class."""
    if not paths:
        raise CorpusError("empty corpus")
    instances = []
    seen: dict[str, Path] = {}
    for path in paths:
        path = Path(path)
        try:
            inst = read_trace(path)
        except (OSError, TraceSyntaxError) as exc:
            raise CorpusError(f"{path}: {exc}") from exc
        if inst.id in seen:
            raise CorpusError(f"{path}: duplicate instance id {inst.id!r} (first seen in {seen[inst.id]})")
        seen[inst.id] = path
        instances.append(inst)
    return Corpus(class_name, tuple(instances))


def trace_files(directory: str | Path) -> list[Path]:
    return sorted(Path(directory).glob("*.trace"))


def constants_of(atoms: Iterable[Atom]) -> set[str]:
    return {t for a in atoms for t in a.terms if is_constant(t)}


def write_atomic(path: str | Path, text: str) -> None:
    """Write via a temp file in the same directory, then rename over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
