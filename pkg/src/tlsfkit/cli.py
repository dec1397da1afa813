"""Command line front end: parse, elaborate, adjust, rewrite, classify, export."""

import argparse
import sys
from dataclasses import dataclass, field, replace

from .elaborate import elaborate
from .errors import TlsfError
from .export import ALL_DIALECTS, export, export_spec, print_basic
from .fragment import classify
from .ltl import to_text
from .parser import parse_spec
from .rewrite import check_keep, nnf, push_pull, replace_derived
from .semantics import adapt_target, combine
from .syntax_tree import Semantics

FORMATS = ("check", "basic", "full-ltl") + ALL_DIALECTS + ("grk-report",)


class UsageError(Exception):
    exit_code = 4


@dataclass
class RunConfig:
    input: str = "-"
    format: str = "check"
    params: dict = field(default_factory=dict)
    target: str = None
    semantics: Semantics = None
    nnf: bool = False
    keep: frozenset = None
    push_pull: tuple = None  # (direction, operator)
    single_pass: bool = False
    werror: bool = False


@dataclass
class RunResult:
    status: int
    output: str = ""
    diagnostics: list = field(default_factory=list)


def parse_semantics(text):
    parts = [p.strip() for p in text.split(",")]
    if parts[0] not in ("Mealy", "Moore") or parts[1:] not in ([], ["Strict"]):
        raise UsageError(f"bad semantics {text!r}; expected Mealy or Moore, optionally "
                         "followed by ,Strict")
    return Semantics(parts[0], len(parts) == 2)


def parse_param(text):
    name, sep, value = text.partition("=")
    name, value = name.strip(), value.strip()
    if not sep or not name or not value.isdigit():
        raise UsageError(f"bad parameter override {text!r}; expected NAME=NATURAL")
    return name, int(value)


def _read(path):
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read(), path
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise UsageError(f"{path} is not valid UTF-8") from None


def _transform(config):
    def apply(f):
        if config.nnf:
            f = nnf(f)
        if config.keep is not None:
            f = replace_derived(f, config.keep)
        if config.push_pull is not None:
            direction, op = config.push_pull
            f = push_pull(f, direction, op, config.single_pass)
        return f
    return apply


def pipeline(text, config, warn):
    spec = elaborate(parse_spec(text), config.params)
    info = spec.info
    if config.semantics is not None:
        info = replace(info, semantics=config.semantics)
    if config.target is not None:
        info = replace(info, target=config.target)
    spec = replace(spec, info=info)
    declared = info.semantics
    if info.semantics.model != info.target:
        side = "inputs" if info.semantics.model == "Moore" else "outputs"
        warn(f"semantics model {info.semantics.model} differs from target {info.target}; "
             f"{side} are prefixed with X")
        spec = adapt_target(spec, info.semantics.model, info.target)
    transform = _transform(config)
    spec = spec.with_sections(transform)

    fmt = config.format
    if fmt == "check":
        verdict = classify(spec).verdict
        return (f"semantics: {declared}, target: {spec.info.target}, "
                f"inputs: {len(spec.inputs)}, outputs: {len(spec.outputs)}, {verdict}\n")
    if fmt == "basic":
        return print_basic(spec)
    if fmt == "grk-report":
        return classify(spec).summary()
    if fmt == "slugs":
        return export_spec(spec, "slugs")
    formula = transform(combine(spec))
    if fmt == "full-ltl":
        return to_text(formula) + "\n"
    return export(formula, fmt, spec.inputs, spec.outputs, spec.info)


def run(config):
    result = RunResult(0)
    try:
        text, name = _read(config.input)
    except UsageError as exc:
        result.diagnostics.append(f"error: {exc}")
        result.status = exc.exit_code
        return result
    warnings = []
    try:
        result.output = pipeline(text, config, warnings.append)
    except TlsfError as exc:
        result.status = exc.exit_code
        result.diagnostics.append(f"error: {name}:{exc}" if exc.pos else f"error: {name}: {exc}")
    result.diagnostics[:0] = [f"warning: {w}" for w in warnings]
    if warnings and config.werror and result.status == 0:
        result.status = 2
        result.output = ""
    return result


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _ArgumentParser(
        prog="tlsfkit",
        description="Compile TLSF specifications to basic TLSF, plain LTL and other formats.")
    p.add_argument("input", help="TLSF file, or - for standard input")
    p.add_argument("-f", "--format", choices=FORMATS, default="check",
                   help="output format (default: check)")
    p.add_argument("-p", "--param", action="append", default=[], metavar="NAME=VALUE",
                   help="override a parameter; may be repeated")
    p.add_argument("--target", choices=("Mealy", "Moore"), help="override the target")
    p.add_argument("--semantics", metavar="MODEL[,Strict]",
                   help="override the semantics, e.g. Moore,Strict")
    p.add_argument("--nnf", action="store_true", help="convert to negation normal form")
    p.add_argument("--replace-derived", metavar="OPS",
                   help="comma separated operators to keep; others are rewritten away")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--push", choices=("X", "F", "G"), help="push an operator inwards")
    group.add_argument("--pull", choices=("X", "F", "G"), help="pull an operator outwards")
    p.add_argument("--single-pass", action="store_true",
                   help="apply one push/pull pass instead of iterating to a fixpoint")
    p.add_argument("--werror", action="store_true", help="treat warnings as errors")
    p.add_argument("-o", "--output", help="write the result to a file instead of stdout")
    return p


def config_from_args(args):
    params = {}
    for item in args.param:
        name, value = parse_param(item)
        if name in params:
            raise UsageError(f"parameter {name} given twice")
        params[name] = value
    keep = None
    if args.replace_derived is not None:
        keep = check_keep(op.strip() for op in args.replace_derived.split(",") if op.strip())
    direction = None
    if args.push:
        direction = ("inwards", args.push)
    elif args.pull:
        direction = ("outwards", args.pull)
    if args.single_pass and direction is None:
        raise UsageError("--single-pass needs --push or --pull")
    return RunConfig(
        input=args.input, format=args.format, params=params, target=args.target,
        semantics=parse_semantics(args.semantics) if args.semantics else None,
        nnf=args.nnf, keep=keep, push_pull=direction, single_pass=args.single_pass,
        werror=args.werror)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = config_from_args(args)
    except (UsageError, TlsfError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 4
    result = run(config)
    for line in result.diagnostics:
        print(line, file=sys.stderr)
    if result.status == 0:
        if args.output:
            try:
                with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                    fh.write(result.output)
            except OSError as exc:
                print(f"error: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
                return 4
        else:
            sys.stdout.write(result.output)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
