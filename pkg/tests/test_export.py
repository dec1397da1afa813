import random
import xml.etree.ElementTree as ET

import pytest

from helpers import CORPUS_FILES, GOLDEN, random_formulas, random_spec, read
from tlsfkit.basic import parse_basic_spec
from tlsfkit.elaborate import elaborate, formula_from_text as ltl
from tlsfkit.errors import ExportError
from tlsfkit.export import (
    ALL_DIALECTS, DIALECTS, export, export_spec, prepare, print_basic, sanitize,
)
from tlsfkit.lasso import bounded_equiv
from tlsfkit.parser import parse_spec


def arbiter(n=2):
    return elaborate(parse_spec(read("arbiter.tlsf")), {"n": n})


def golden(name):
    return (GOLDEN / name).read_text()


# basic TLSF

def test_arbiter_matches_hand_derived_golden():
    assert print_basic(arbiter()) == golden("arbiter_n2.tlsf")


def test_fully_parenthesized_line_and_omitted_sections():
    s = parse_basic_spec(
        'INFO { TITLE: "t" DESCRIPTION: "d" SEMANTICS: Moore,Strict TARGET: Moore TAGS: "x" }'
        " MAIN { INPUTS { a; } OUTPUTS { b; } ASSERT { ((a) && (b)); } }")
    text = print_basic(elaborate(s))
    assert "    ((a) && (b));\n" in text
    assert "GUARANTEE" not in text and "ASSUME" not in text
    assert '  TAGS:        "x"\n' in text and "  SEMANTICS:   Moore,Strict\n" in text


@pytest.mark.parametrize("name", CORPUS_FILES)
def test_corpus_round_trip(name):
    spec = elaborate(parse_spec(read(name)))
    text = print_basic(spec)
    assert elaborate(parse_basic_spec(text)) == spec
    assert print_basic(elaborate(parse_basic_spec(text))) == text


def test_generated_specs_round_trip():
    rng = random.Random(41)
    for _ in range(200):
        spec = random_spec(rng, strict=rng.random() < 0.5,
                           model=rng.choice(["Mealy", "Moore"]))
        assert elaborate(parse_basic_spec(print_basic(spec))) == spec


def test_print_basic_is_deterministic():
    assert print_basic(arbiter(3)) == print_basic(arbiter(3))


def test_quotes_in_strings_are_rejected():
    from dataclasses import replace
    spec = arbiter()
    with pytest.raises(ExportError):
        print_basic(replace(spec, info=replace(spec.info, title='say "hi"')))


# dialects

@pytest.mark.parametrize("dialect", ["promela", "psl", "wring", "unbeast"])
def test_arbiter_dialect_goldens(dialect):
    assert export_spec(arbiter(), dialect) == golden(f"arbiter_n2.{dialect}")


def test_slugs_golden():
    spec = elaborate(parse_spec(read("amba_decode.tlsf")))
    assert export_spec(spec, "slugs") == golden("amba_decode.slugs")


@pytest.mark.parametrize("text, dialect, expected", [
    ("G F a", "promela", "[]<>a"),
    ("a W b", "promela", "(a U b) || []a"),
    ("a R b", "promela", "!(!a U !b)"),
    ("G (a -> F b)", "psl", "always (a -> eventually! b)"),
    ("X a U b", "psl", "next! a until! b"),
    ("a W b", "psl", "a until b"),
    ("a && !b", "wring", "a=1 * b=0"),
    ("G (a || X b)", "wring", "G (a=1 + X b=1)"),
    ("true", "wring", "TRUE"),
])
def test_dialect_spellings(text, dialect, expected):
    assert export(ltl(text), dialect, ["a"], ["b"]) == expected + "\n"


def test_slugs_rejects_non_gr1():
    with pytest.raises(ExportError, match="GR\\(1\\)"):
        export_spec(arbiter(), "slugs")
    with pytest.raises(ExportError, match="GR\\(2\\)"):
        export(ltl("(G F a -> G F b) && (G F b -> G F a)"), "slugs", ["a"], ["b"])


def test_slugs_primes_next_atoms():
    out = export(ltl("a && G (a -> X (b && a)) && (G F a -> G F b)"), "slugs", ["a"], ["b"])
    assert "[SYS_TRANS]\na -> (b' & a')\n" in out
    assert "[ENV_LIVENESS]\na\n" in out and "[SYS_LIVENESS]\nb\n" in out


def test_unbeast_splits_assumptions_and_is_well_formed():
    out = export(ltl("G F a -> G b"), "unbeast", ["a"], ["b"])
    root = ET.fromstring(out.split("\n", 2)[2])
    assert [e.tag for e in root] == ["Title", "Description", "PathToLTLCompiler",
                                    "GlobalInputs", "GlobalOutputs", "Assumptions",
                                    "Specification"]
    assert root.find("Assumptions/LTL/G/F/Var").text == "a"
    assert root.find("Specification/LTL/G/Var").text == "b"


def test_sanitized_names():
    assert sanitize("b[3]") == "b_3" and sanitize("x'") == "x_p" and sanitize("@q") == "_atq"


def test_sanitizing_collisions_are_errors():
    with pytest.raises(ExportError, match="both map"):
        export(ltl("b_0 && b[0]"), "promela", ["b_0"], ["b[0]"])


def test_undeclared_atoms_are_errors():
    with pytest.raises(ExportError, match="undeclared"):
        export(ltl("z"), "promela", ["a"], ["b"])


@pytest.mark.parametrize("dialect", ALL_DIALECTS)
def test_export_is_deterministic(dialect):
    spec = elaborate(parse_spec(read("amba_decode.tlsf")))
    assert export_spec(spec, dialect) == export_spec(spec, dialect)


@pytest.mark.parametrize("dialect", sorted(DIALECTS))
def test_pre_rewrites_are_sound(dialect):
    d = DIALECTS[dialect]
    for f in random_formulas(80, seed=len(dialect), depth=4):
        g = prepare(f, d)
        assert g.operators() <= d.keep | {"true", "false", "atom"}
        assert bounded_equiv(f, g, K=3, L=3)
