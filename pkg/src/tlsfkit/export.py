"""Basic TLSF printing and dialect export of LTL formulas."""

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from .errors import ExportError
from .fragment import classify
from .ltl import Formula, atom, map_atoms, to_basic
from .rewrite import push_pull, replace_derived
from .semantics import combine
from .syntax_tree import SECTIONS

_BUS_ATOM = re.compile(r"^(.*)\[(\d+)\]$")


# basic TLSF

def _group_signals(names):
    """Turn a flat atom list back into single and bus declarations."""
    decls, i = [], 0
    names = list(names)
    while i < len(names):
        m = _BUS_ATOM.match(names[i])
        if not m:
            decls.append(names[i])
            i += 1
            continue
        base, width = m.group(1), 0
        while i < len(names) and names[i] == f"{base}[{width}]":
            width += 1
            i += 1
        if width == 0:
            raise ExportError(f"bus {base} does not start at index 0")
        decls.append(f"{base}[{width}]")
    return decls


def _quote(s):
    if '"' in s:
        raise ExportError(f"string {s!r} contains a double quote")
    return f'"{s}"'


def print_basic(spec):
    info = spec.info
    out = ["INFO {",
           f"  TITLE:       {_quote(info.title)}",
           f"  DESCRIPTION: {_quote(info.description)}",
           f"  SEMANTICS:   {info.semantics}",
           f"  TARGET:      {info.target}"]
    if info.tags:
        out.append("  TAGS:        " + ", ".join(_quote(t) for t in info.tags))
    out += ["}", "", "MAIN {"]
    for title, names in (("INPUTS", spec.inputs), ("OUTPUTS", spec.outputs)):
        out.append(f"  {title} {{")
        out += [f"    {d};" for d in _group_signals(names)]
        out.append("  }")
    for name in SECTIONS:
        formulas = spec.section(name)
        if not formulas:
            continue
        out.append(f"  {name} {{")
        out += [f"    {to_basic(f)};" for f in formulas]
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"


# dialects

def sanitize(name):
    m = _BUS_ATOM.match(name)
    if m:
        name = f"{m.group(1)}_{m.group(2)}"
    return name.replace("'", "_p").replace("@", "_at")


def _renaming(names):
    table, seen = {}, {}
    for n in names:
        s = sanitize(n)
        if s in seen and seen[s] != n:
            raise ExportError(f"signals {seen[s]} and {n} both map to {s}")
        seen[s] = n
        table[n] = s
    return table


@dataclass(frozen=True)
class Dialect:
    name: str
    keep: frozenset          # operators the dialect spells natively
    unary: dict              # op -> prefix text
    binary: dict             # op -> infix text
    true: str = "true"
    false: str = "false"

    def render(self, f, top=True):
        if f.op == "atom":
            return f.name
        if f.op == "true":
            return self.true
        if f.op == "false":
            return self.false
        if f.op in self.unary:
            inner = self.render(f.args[0], top=False)
            prefix = self.unary[f.op]
            word = any(ch.isalpha() for ch in prefix)
            return f"{prefix} {inner}" if word else prefix + inner
        if f.op in self.binary:
            text = (f"{self.render(f.args[0], False)} {self.binary[f.op]} "
                    f"{self.render(f.args[1], False)}")
            return text if top else f"({text})"
        raise ExportError(f"dialect {self.name} cannot express operator {f.op}")


PROMELA = Dialect(
    "promela", frozenset({"!", "&&", "||", "->", "<->", "X", "G", "F", "U"}),
    {"!": "!", "X": "X", "G": "[]", "F": "<>"},
    {"&&": "&&", "||": "||", "->": "->", "<->": "<->", "U": "U"})

PSL = Dialect(
    "psl", frozenset({"!", "&&", "||", "->", "<->", "X", "G", "F", "U", "W"}),
    {"!": "!", "X": "next!", "G": "always", "F": "eventually!"},
    {"&&": "&&", "||": "||", "->": "->", "<->": "<->", "U": "until!", "W": "until"})

WRING = Dialect(
    "wring", frozenset({"!", "&&", "||", "->", "<->", "X", "G", "F", "U", "R"}),
    {"!": "!", "X": "X", "G": "G", "F": "F"},
    {"&&": "*", "||": "+", "->": "->", "<->": "<->", "U": "U", "R": "R"},
    true="TRUE", false="FALSE")

DIALECTS = {d.name: d for d in (PROMELA, PSL, WRING)}
ALL_DIALECTS = ("promela", "psl", "wring", "slugs", "unbeast")


def prepare(formula, dialect):
    """Rewrite away the operators the dialect lacks."""
    return replace_derived(formula, dialect.keep)


def _wring_atoms(f):
    # literals are written a=1 / a=0
    if f.op == "atom":
        return Formula("atom", (), f.name + "=1")
    if f.op == "!" and f.args[0].op == "atom":
        return Formula("atom", (), f.args[0].name + "=0")
    if not f.args:
        return f
    return Formula(f.op, tuple(_wring_atoms(a) for a in f.args))


def export(formula, dialect, inputs, outputs, info=None):
    """Render one formula in a foreign dialect."""
    names = _renaming(list(inputs) + list(outputs))
    missing = formula.atoms() - set(names)
    if missing:
        raise ExportError(f"undeclared signal {sorted(missing)[0]}")
    renamed = map_atoms(formula, lambda a: atom(names[a.name]))
    ins = [names[n] for n in inputs]
    outs = [names[n] for n in outputs]
    if dialect == "slugs":
        return _slugs(classify(formula), names, ins, outs)
    if dialect == "unbeast":
        if renamed.op == "->":
            assumptions, guarantees = [renamed.args[0]], [renamed.args[1]]
        else:
            assumptions, guarantees = [], [renamed]
        return _unbeast(assumptions, guarantees, ins, outs, info)
    if dialect not in DIALECTS:
        raise ExportError(f"unknown dialect {dialect}")
    d = DIALECTS[dialect]
    f = prepare(renamed, d)
    if dialect == "wring":
        f = _wring_atoms(f)
    return d.render(f) + "\n"


def export_spec(spec, dialect):
    """Export a whole basic specification; Slugs uses its sections directly."""
    if dialect == "slugs":
        names = _renaming(list(spec.inputs) + list(spec.outputs))
        return _slugs(classify(spec), names, [names[n] for n in spec.inputs],
                      [names[n] for n in spec.outputs])
    return export(combine(spec), dialect, spec.inputs, spec.outputs, spec.info)


# slugs

_SLUGS = Dialect(
    "slugs", frozenset({"!", "&&", "||", "->", "<->", "X"}),
    {"!": "!"},
    {"&&": "&", "||": "|", "->": "->", "<->": "<->"},
    true="TRUE", false="FALSE")


def _slugs_line(f, names):
    f = map_atoms(f, lambda a: atom(names[a.name]))
    f = push_pull(f, "inwards", "X")

    def prime(g):
        if g.op == "X":
            inner = g.args[0]
            if inner.op == "atom":
                return Formula("atom", (), inner.name + "'")
            if inner.op in ("true", "false"):
                return inner
            raise ExportError(f"slugs cannot express {g}")
        if not g.args:
            return g
        return Formula(g.op, tuple(prime(a) for a in g.args))
    return _SLUGS.render(prime(f))


def _slugs(report, names, ins, outs):
    if not report.in_gr:
        raise ExportError(f"slugs needs a GR(1) specification ({report.reason})")
    if report.k != 1:
        raise ExportError(f"slugs needs a GR(1) specification, found GR({report.k})")
    env_fair, sys_fair = report.groups[0]
    sections = [("INPUT", ins), ("OUTPUT", outs)]
    for title, items in (("ENV_INIT", report.env_init), ("SYS_INIT", report.sys_init),
                         ("ENV_TRANS", report.env_trans), ("SYS_TRANS", report.sys_trans),
                         ("ENV_LIVENESS", env_fair), ("SYS_LIVENESS", sys_fair)):
        sections.append((title, [_slugs_line(f, names) for f in items]))
    out = []
    for title, lines in sections:
        out.append(f"[{title}]")
        out.extend(lines)
        out.append("")
    return "\n".join(out)


# unbeast

_UNBEAST_KEEP = frozenset({"!", "&&", "||", "X", "G", "F", "U", "R"})
_UNBEAST_TAGS = {"!": "Not", "&&": "And", "||": "Or", "X": "X", "G": "G", "F": "F",
                 "U": "U", "R": "R"}


def _xml_formula(parent, f):
    if f.op == "atom":
        ET.SubElement(parent, "Var").text = f.name
    elif f.op == "true":
        ET.SubElement(parent, "True")
    elif f.op == "false":
        ET.SubElement(parent, "False")
    else:
        node = ET.SubElement(parent, _UNBEAST_TAGS[f.op])
        for a in f.args:
            _xml_formula(node, a)


def _unbeast(assumptions, guarantees, ins, outs, info):
    root = ET.Element("SynthesisProblem")
    ET.SubElement(root, "Title").text = info.title if info else ""
    ET.SubElement(root, "Description").text = info.description if info else ""
    ET.SubElement(root, "PathToLTLCompiler").text = "ltl2ba -f"
    for tag, bits in (("GlobalInputs", ins), ("GlobalOutputs", outs)):
        group = ET.SubElement(root, tag)
        for b in bits:
            ET.SubElement(group, "Bit").text = b
    for tag, formulas in (("Assumptions", assumptions), ("Specification", guarantees)):
        group = ET.SubElement(root, tag)
        for f in formulas:
            _xml_formula(ET.SubElement(group, "LTL"), replace_derived(f, _UNBEAST_KEEP))
    ET.indent(root, "  ")
    body = ET.tostring(root, encoding="unicode")
    return ('<?xml version="1.0"?>\n'
            '<!DOCTYPE SynthesisProblem SYSTEM "SynSpec.dtd">\n' + body + "\n")
