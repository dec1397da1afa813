"""Acceptance gate: one test per criterion, summarised by conftest."""

import random
import time
from itertools import product

import pytest

from helpers import CORPUS, CORPUS_FILES, GOLDEN, random_formulas, random_spec, read
from tlsfkit.basic import parse_basic_spec
from tlsfkit.cli import RunConfig, run
from tlsfkit.elaborate import (
    Bus, EnumValuation, desugar, elaborate, eval_range, expand_enum_comparison,
    formula_from_text as ltl,
)
from tlsfkit.errors import UnboundIdentifier
from tlsfkit.export import print_basic
from tlsfkit.fragment import classify, reassemble
from tlsfkit.lasso import Equal, LassoWord, bounded_equiv, eval_at
from tlsfkit.ltl import And, F, G, Implies, Not, Or, W, atom
from tlsfkit.parser import parse_expr, parse_spec
from tlsfkit.rewrite import nnf, push_pull, replace_derived
from tlsfkit.semantics import adapt_target, combine, section_formulas
from tlsfkit.syntax_tree import Binary, Ident, Unary

criterion = pytest.mark.criterion


@criterion(1, "corpus parses and elaborates; verbatim tincr has one unbound identifier")
def test_corpus_acceptance():
    assert len(CORPUS_FILES) == 9
    for name in CORPUS_FILES:
        start = time.perf_counter()
        spec = elaborate(parse_spec(read(name)))
        assert time.perf_counter() - start < 1.0, name
        assert spec.inputs and spec.outputs and any(spec.formulas())
    result = run(RunConfig(input=str(CORPUS / "amba_tincr_verbatim.tlsf")))
    assert result.status == 2 and len(result.diagnostics) == 1
    with pytest.raises(UnboundIdentifier):
        elaborate(parse_spec(read("amba_tincr_verbatim.tlsf")))


@criterion(2, "sugar desugars to the exact right-hand sides")
def test_sugar_identities():
    a = Ident("a")

    def nx(e):
        return Unary("X", e)
    assert desugar(parse_expr("X[3] a")) == nx(nx(nx(a)))
    assert desugar(parse_expr("F[2:3] a")) == nx(nx(Binary("||", a, nx(a))))
    assert desugar(parse_expr("G[1:3] a")) == nx(Binary("&&", a, nx(Binary("&&", a, nx(a)))))
    assert desugar(parse_expr("F[2:3] a")) == parse_expr("X X(a || X a)")


@criterion(3, "Position enum comparisons and truth table")
def test_enum_semantics():
    bus = Bus("b", 3)
    b = [atom(f"b[{i}]") for i in range(3)]
    right = expand_enum_comparison(bus, EnumValuation("RIGHT", ("001",)))
    assert right == And(And(Not(b[0]), Not(b[1])), b[2])
    undef = ("11*", "1*1", "*11")
    not_undef = expand_enum_comparison(bus, EnumValuation("UNDEF", undef), "neq")
    assert not_undef == Not(Or(Or(And(b[0], b[1]), And(b[0], b[2])), And(b[1], b[2])))
    entries = {"LEFT": ("100",), "MIDDLE": ("010",), "RIGHT": ("001",), "UNDEF": undef}
    names = frozenset(f"b[{i}]" for i in range(3))
    for bits in product("01", repeat=3):
        letter = frozenset(f"b[{i}]" for i, v in enumerate(bits) if v == "1")
        word = LassoWord(names, (), (letter,))
        for entry, patterns in entries.items():
            expected = any(all(p in ("*", v) for p, v in zip(pat, bits)) for pat in patterns)
            for polarity in ("eq", "neq"):
                f = expand_enum_comparison(bus, EnumValuation(entry, patterns), polarity)
                assert eval_at(word, f) == (expected if polarity == "eq" else not expected)


@criterion(4, "range law and randomized ranges")
def test_range_law():
    def values(x, y, z):
        return {v.value for v in eval_range(x, y, z).items}
    assert values(0, 2, 7) == {0, 2, 4, 6}
    rng = random.Random(4)
    for _ in range(500):
        x = rng.randint(0, 31)
        y = rng.randint(x + 1, 32)
        z = rng.randint(y, 32)
        assert values(x, y, z) == {i for i in range(x, z + 1) if (i - x) % (y - x) == 0}


@criterion(5, "arbiter expansion at n=2 matches the hand-derived golden")
def test_arbiter_expansion():
    spec = elaborate(parse_spec(read("arbiter.tlsf")), {"n": 2})
    r = [atom(f"r[{i}]") for i in range(2)]
    g = [atom(f"g[{i}]") for i in range(2)]
    assert spec.guarantee == (And(G(Implies(r[0], F(g[0]))), G(Implies(r[1], F(g[1])))),)
    assert spec.assert_ == (Or(Not(And(g[0], g[1])), Not(And(g[1], g[0]))),)
    assert print_basic(spec) == (GOLDEN / "arbiter_n2.tlsf").read_text()


def _atom_depths(f, depth=0):
    if f.op == "atom":
        return [(f.name, depth)]
    return [p for a in f.args for p in _atom_depths(a, depth + (f.op == "X"))]


@criterion(6, "semantics templates and target conversion X-depths")
def test_semantics_templates():
    rng = random.Random(6)
    for i in range(50):
        strict = i % 2 == 1
        spec = random_spec(rng, strict=strict)
        te, ts, pe, ps, fe, fs = section_formulas(spec)
        if strict:
            expected = Implies(te, And(And(ts, W(ps, Not(pe))), Implies(And(G(pe), fe), fs)))
        else:
            expected = Implies(te, And(ts, Implies(And(G(pe), fe), And(G(ps), fs))))
        assert combine(spec) == expected
        source, target, side = (("Moore", "Mealy", spec.inputs) if i % 2
                                else ("Mealy", "Moore", spec.outputs))
        out = adapt_target(spec, source, target)
        for before, after in zip(spec.formulas(), out.formulas()):
            for (n0, d0), (n1, d1) in zip(_atom_depths(before), _atom_depths(after)):
                assert n0 == n1 and d1 == d0 + (n0 in side)


@criterion(7, "nnf, replace_derived and push_pull are sound on 500 random formulas")
def test_rewrite_soundness():
    rng = random.Random(7)
    keeps = [{"!", "&&", "||", "X", "U"}, {"!", "&&", "||", "X", "R"},
             {"!", "&&", "||", "->", "X", "U", "G", "F"}]
    start = time.perf_counter()
    for f in random_formulas(500, seed=7, depth=5, atoms=("a", "b", "c")):
        assert bounded_equiv(f, nnf(f), K=4, L=4) == Equal()
        assert bounded_equiv(f, replace_derived(f, rng.choice(keeps)), K=4, L=4) == Equal()
        g = push_pull(f, rng.choice(["inwards", "outwards"]), rng.choice(["X", "F", "G"]))
        assert bounded_equiv(f, g, K=4, L=4) == Equal()
    assert time.perf_counter() - start < 60


@criterion(8, "fragment examples and oracle-equivalent reassembly")
def test_gr_classification():
    r = classify(ltl("(G F a) -> (G F b)"))
    assert r.verdict == "GR(1)" and r.env_fairness == (atom("a"),)
    assert r.sys_fairness == (atom("b"),)
    assert classify(ltl("((G F a && G F b) -> G F c) && (G F d -> G F e)")).verdict == "GR(2)"
    assert classify(ltl("G (req -> F grant)")).verdict == "not GR: F under G outside GF core"
    for text in ["a && G (a -> X b) && (G F a -> G F b)",
                 "!!(G F a -> G F (b || c)) && G (X a <-> b)",
                 "(G F a -> G F b) && (G F c -> G F a) && (true || c)",
                 "(G F G F a && G F b) -> G F c"]:
        f = ltl(text)
        report = classify(f)
        assert report.in_gr and bounded_equiv(reassemble(report), f, K=3, L=3) == Equal()


@criterion(9, "print_basic, parse_basic_spec and elaborate round-trip exactly")
def test_round_trip():
    for name in CORPUS_FILES:
        spec = elaborate(parse_spec(read(name)))
        assert elaborate(parse_basic_spec(print_basic(spec))) == spec
    rng = random.Random(9)
    for _ in range(200):
        spec = random_spec(rng, strict=rng.random() < 0.5)
        assert elaborate(parse_basic_spec(print_basic(spec))) == spec


@criterion(10, "no performance reproduction claimed beyond the wall-clock budgets")
def test_no_performance_claims():
    # budgets are enforced inside criteria 1 and 7
    assert True
