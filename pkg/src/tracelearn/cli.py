"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 I/O error, 3 no plan.  Diagnostics
go to stderr; report files only ever hold results.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import blocksworld
from .actions import MissingSchemaError
from .explain import explain_trace, render_explanation
from .learn import learn_model
from .model import (
    Corpus,
    CorpusError,
    TraceSyntaxError,
    load_corpus,
    parse_state,
    read_trace,
    trace_files,
    write_atomic,
)
from .modelfile import LearnedModel, parse_model, serialize_model
from .planner import DEFAULT_MAX_DEPTH, PlanningProblem, format_plan, plan

log = logging.getLogger("tracelearn")

EXIT_OK, EXIT_INPUT, EXIT_IO, EXIT_NO_PLAN = 0, 1, 2, 3


class CommandError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _parse_params(values: list[str] | None) -> dict[str, tuple[str, ...]]:
    out = {}
    for v in values or ():
        name, sep, rest = v.partition("=")
        if not sep or not rest:
            raise CommandError(f"--params expects name=Var1,Var2,..., got {v!r}", EXIT_INPUT)
        out[name] = tuple(rest.split(","))
    return out


def _read_model(path) -> LearnedModel:
    try:
        return parse_model(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise CommandError(f"cannot read model {path}: {exc}", EXIT_INPUT) from exc
    except TraceSyntaxError as exc:
        raise CommandError(f"{path}: {exc}", EXIT_INPUT) from exc


def _load_dir(trace_dir, class_name) -> Corpus:
    files = trace_files(trace_dir) if Path(trace_dir).is_dir() else []
    try:
        return load_corpus(files, class_name)
    except CorpusError as exc:
        raise CommandError(f"{trace_dir}: {exc}", EXIT_INPUT) from exc


def cmd_generate(args) -> int:
    out = Path(args.out)
    try:
        instances = blocksworld.generate_instances()
        blocksworld.generate_corpus(out, instances)
        if args.inject_gpp:
            injected = blocksworld.inject_goal_preceding_prop(Corpus("blocksworld", tuple(instances)))
            blocksworld.generate_corpus(out / "injected", list(injected.instances))
    except OSError as exc:
        raise CommandError(f"cannot write traces to {out}: {exc}", EXIT_IO) from exc
    print(f"wrote {len(instances)} traces to {out}", file=sys.stderr)
    return EXIT_OK


def cmd_learn(args) -> int:
    corpus = _load_dir(args.trace_dir, args.class_name)
    try:
        model = learn_model(corpus, _parse_params(args.params))
    except ValueError as exc:
        raise CommandError(f"{args.trace_dir}: {exc}", EXIT_INPUT) from exc
    try:
        write_atomic(args.output, serialize_model(model))
    except OSError as exc:
        raise CommandError(f"cannot write {args.output}: {exc}", EXIT_IO) from exc
    return EXIT_OK


def cmd_explain(args) -> int:
    model = _read_model(args.model)
    try:
        instance = read_trace(args.trace)
    except (OSError, TraceSyntaxError) as exc:
        raise CommandError(f"{args.trace}: {exc}", EXIT_INPUT) from exc
    try:
        explanation = explain_trace(instance, model.schemas, model.goal)
    except MissingSchemaError as exc:
        raise CommandError(f"{args.trace}: {exc.args[0]}", EXIT_INPUT) from exc
    report = render_explanation(explanation, model.goal)
    if args.output:
        try:
            write_atomic(args.output, report)
        except OSError as exc:
            raise CommandError(f"cannot write {args.output}: {exc}", EXIT_IO) from exc
    else:
        sys.stdout.write(report)
    return EXIT_OK


def cmd_plan(args) -> int:
    model = _read_model(args.model)
    try:
        initial = parse_state(Path(args.initial).read_text(encoding="utf-8"))
    except (OSError, TraceSyntaxError) as exc:
        raise CommandError(f"{args.initial}: {exc}", EXIT_INPUT) from exc
    problem = PlanningProblem.from_model(initial, model.goal.goal, model.schemas, model.vocabulary.statics)
    result = plan(problem, max_depth=args.max_depth)
    if result is None:
        log.error("no plan within %d steps", args.max_depth)
        return EXIT_NO_PLAN
    text = format_plan(result)
    sys.stdout.write(text)
    if args.output:
        try:
            write_atomic(args.output, text)
        except OSError as exc:
            raise CommandError(f"cannot write {args.output}: {exc}", EXIT_IO) from exc
    return EXIT_OK


def cmd_pipeline(args) -> int:
    from .report import run_pipeline

    try:
        run_pipeline(Path(args.out))
    except OSError as exc:
        raise CommandError(f"pipeline output {args.out}: {exc}", EXIT_IO) from exc
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tracelearn", description=__doc__.splitlines()[0])
    parser.add_argument("-q", "--quiet", action="store_true", help="only report errors on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write the 120 blocks-world traces")
    p.add_argument("--out", required=True)
    p.add_argument("--inject-gpp", action="store_true", help="also write an injected copy under OUT/injected")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("learn", help="learn a model from a directory of .trace files")
    p.add_argument("trace_dir")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--class-name", default="behaviors")
    p.add_argument("--params", action="append", metavar="NAME=V1,V2", help="parameter names for an action")
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("explain", help="explain one trace against a learned model")
    p.add_argument("model")
    p.add_argument("trace")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("plan", help="plan from an initial state to the learned goal")
    p.add_argument("model")
    p.add_argument("initial")
    p.add_argument("-o", "--output")
    p.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("pipeline", help="generate, learn, explain and plan; write a summary")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    saved = log.handlers[:], log.level, log.propagate
    log.handlers[:] = [handler]
    log.setLevel(logging.ERROR if args.quiet else logging.WARNING)
    log.propagate = False
    try:
        return args.func(args)
    except CommandError as exc:
        log.error("%s", exc)
        return exc.code
    finally:
        log.handlers[:], log.level, log.propagate = saved


if __name__ == "__main__":
    sys.exit(main())
