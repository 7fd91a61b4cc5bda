"""Text serialization of a learned model.

Layout (sections always in this order, atoms sorted)::

    model blocksworld
    statics:
      block(a)
    fluents:
      clear(a)
    actions:
      move(a,c,b)
    goal:
      clear(a)
    action move(Block,From,To)
      pre:
        clear(Block)
      add:
        ...
      del:
        ...
      valid:
        block(Block)
        neq(Block,From)
    must_precede:
      on(b,c) < on(a,b)
    mandatory:
    end
"""

from __future__ import annotations

from dataclasses import dataclass

from .actions import ActionSchema, SchemaKey
from .goals import GoalModel
from .model import Atom, TraceSyntaxError, is_variable, parse_action, parse_atom
from .precedence import PrecedenceModel
from .vocabulary import Vocabulary

_VOCAB_SECTIONS = ("statics", "fluents", "actions", "goal")
_SCHEMA_SECTIONS = {"pre": "precond", "add": "pos_effects", "del": "neg_effects", "valid": "validity"}


@dataclass(frozen=True)
class LearnedModel:
    class_name: str
    vocabulary: Vocabulary
    goal: GoalModel
    schemas: dict[SchemaKey, ActionSchema]
    precedence: PrecedenceModel


def serialize_model(model: LearnedModel) -> str:
    out = [f"model {model.class_name}"]

    def section(name, items, indent="  "):
        out.append(f"{indent[:-2]}{name}:")
        out.extend(indent + str(x) for x in sorted(items))

    section("statics", model.vocabulary.statics)
    section("fluents", model.vocabulary.fluents)
    section("actions", model.vocabulary.actions)
    section("goal", model.goal.goal)
    for key in sorted(model.schemas):
        schema = model.schemas[key]
        out.append(f"action {schema.head()}")
        for label, attr in _SCHEMA_SECTIONS.items():
            section(label, getattr(schema, attr), indent="    ")
    out.append("must_precede:")
    out.extend(f"  {a} < {b}" for a, b in sorted(model.precedence.must_precede))
    section("mandatory", model.precedence.mandatory)
    out.append("end")
    return "\n".join(out) + "\n"


def parse_model(text: str) -> LearnedModel:
    lines = [
        (n, raw.rstrip())
        for n, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    if not lines or not lines[0][1].startswith("model "):
        raise TraceSyntaxError("model file must start with 'model <name>'", lines[0][0] if lines else None)
    class_name = lines[0][1].split(None, 1)[1].strip()

    sets: dict[str, set] = {name: set() for name in (*_VOCAB_SECTIONS, "mandatory")}
    pairs: set[tuple[Atom, Atom]] = set()
    schemas: dict[SchemaKey, dict] = {}
    section = None
    schema = None
    seen_end = False

    for n, line in lines[1:]:
        if seen_end:
            raise TraceSyntaxError("content after 'end'", n)
        stripped = line.strip()
        depth = len(line) - len(line.lstrip(" "))
        if depth == 0:
            schema = None
            if line == "end":
                seen_end = True
            elif line.startswith("action "):
                head = parse_atom(line[len("action "):], allow_variables=True, lineno=n)
                if not all(is_variable(t) for t in head.terms):
                    raise TraceSyntaxError(f"schema parameters must be variables: {head}", n)
                key = (head.predicate, head.arity)
                if key in schemas:
                    raise TraceSyntaxError(f"duplicate schema {head}", n)
                schema = schemas[key] = {"params": head.terms, **{a: set() for a in _SCHEMA_SECTIONS.values()}}
                section = None
            elif line.endswith(":") and line[:-1] in (*sets, "must_precede"):
                section = line[:-1]
            else:
                raise TraceSyntaxError(f"unexpected line {line!r}", n)
        elif schema is not None and depth == 2:
            if not stripped.endswith(":") or stripped[:-1] not in _SCHEMA_SECTIONS:
                raise TraceSyntaxError(f"expected pre:/add:/del:/valid:, got {stripped!r}", n)
            section = _SCHEMA_SECTIONS[stripped[:-1]]
        elif schema is not None and depth == 4 and section in schema:
            atom = parse_atom(stripped, allow_variables=True, lineno=n)
            stray = [t for t in atom.terms if is_variable(t) and t not in schema["params"]]
            if stray:
                raise TraceSyntaxError(f"variable {stray[0]} is not a parameter", n)
            schema[section].add(atom)
        elif schema is None and depth == 2 and section == "must_precede":
            left, sep, right = stripped.partition(" < ")
            if not sep:
                raise TraceSyntaxError(f"expected '<atom> < <atom>', got {stripped!r}", n)
            pairs.add((parse_atom(left, lineno=n), parse_atom(right, lineno=n)))
        elif schema is None and depth == 2 and section == "actions":
            sets["actions"].add(parse_action(stripped, n))
        elif schema is None and depth == 2 and section in sets:
            sets[section].add(parse_atom(stripped, lineno=n))
        else:
            raise TraceSyntaxError(f"unexpected line {line!r}", n)
    if not seen_end:
        raise TraceSyntaxError("missing 'end'")

    statics, fluents = frozenset(sets["statics"]), frozenset(sets["fluents"])
    vocabulary = Vocabulary(statics | fluents, statics, fluents, frozenset(sets["actions"]))
    return LearnedModel(
        class_name=class_name,
        vocabulary=vocabulary,
        goal=GoalModel(frozenset(sets["goal"])),
        schemas={
            key: ActionSchema(
                key[0],
                s["params"],
                **{attr: frozenset(s[attr]) for attr in _SCHEMA_SECTIONS.values()},
            )
            for key, s in sorted(schemas.items())
        },
        precedence=PrecedenceModel(frozenset(pairs), frozenset(sets["mandatory"])),
    )
