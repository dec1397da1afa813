import random

import pytest

from helpers import CORPUS_FILES, read
from tlsfkit.elaborate import elaborate, formula_from_text as ltl
from tlsfkit.fragment import classify, normalize, reassemble
from tlsfkit.lasso import bounded_equiv
from tlsfkit.ltl import TRUE, And, F, Formula, G, Implies, Not, Or, X, atom, conjoin
from tlsfkit.parser import parse_spec

ATOMS = ("a", "b", "c")


def test_single_group():
    r = classify(ltl("(G F a) -> (G F b)"))
    assert r.verdict == "GR(1)"
    assert r.env_fairness == (atom("a"),) and r.sys_fairness == (atom("b"),)


def test_two_groups():
    r = classify(ltl("((G F a && G F b) -> G F c) && (G F d -> G F e)"))
    assert r.verdict == "GR(2)"
    assert r.groups == (((atom("a"), atom("b")), (atom("c"),)), ((atom("d"),), (atom("e"),)))


def test_response_property_is_not_gr():
    r = classify(ltl("G (req -> F grant)"))
    assert not r.in_gr and r.reason == "F under G outside GF core"
    assert r.verdict == "not GR: F under G outside GF core"


def test_safety_only_counts_as_one_empty_group():
    r = classify(ltl("a && G (a -> X b)"))
    assert r.k == 1 and r.groups == (((), ()),)
    assert r.sys_init == (atom("a"),) and r.sys_trans == (ltl("a -> X b"),)


@pytest.mark.parametrize("text, reason", [
    ("G (a -> X X b)", "X-depth 2 exceeds 1 in transition constraint"),
    ("X a", "X outside a transition constraint"),
    ("G F X a", "GF core is not an X-free boolean formula"),
    ("F a", "F outside GF core"),
    ("(F a) -> G F b", "implication sides are not conjunctions of GF formulas"),
])
def test_obstructions(text, reason):
    assert classify(ltl(text)).reason == reason


@pytest.mark.parametrize("text", [
    "!!(G F a -> G F b)",
    "(G F a -> G F b) && true",
    "true -> (G F a -> G F b)",
    "(G F G F a) -> G F b",
    "(G F a -> G F b) && (false || a)",
])
def test_identities_are_applied(text):
    assert classify(ltl(text)).verdict == "GR(1)"


def test_normalize_is_sound():
    for text in ["!!a && true", "false || G F G F a", "true -> X a", "a -> true", "!false"]:
        assert bounded_equiv(normalize(ltl(text)), ltl(text), K=3, L=3)


# random GR instances

def _boolean(rng, depth, next_ok=False):
    if depth <= 1 or rng.random() < 0.3:
        a = atom(rng.choice(ATOMS))
        if next_ok and rng.random() < 0.4:
            a = X(a)
        return Not(a) if rng.random() < 0.3 else a
    op = rng.choice(["&&", "||", "->", "<->"])
    return Formula(op, (_boolean(rng, depth - 1, next_ok), _boolean(rng, depth - 1, next_ok)))


def _gf_conj(rng):
    return conjoin(G(F(_boolean(rng, 2))) for _ in range(rng.randint(1, 2)))


def gr_parts(rng, k):
    parts = [_boolean(rng, 3) for _ in range(rng.randint(0, 2))]
    parts += [G(_boolean(rng, 3, next_ok=True)) for _ in range(rng.randint(0, 2))]
    parts += [Implies(_gf_conj(rng), _gf_conj(rng)) for _ in range(k)]
    return parts


def _disguise(rng, f):
    r = rng.random()
    if r < 0.2:
        return Not(Not(f))
    if r < 0.3:
        return And(TRUE, f)
    if r < 0.4:
        return Or(f, Formula("false", ()))
    return f


def test_reassembly_is_equivalent():
    rng = random.Random(31)
    for _ in range(60):
        f = conjoin(_disguise(rng, p) for p in gr_parts(rng, rng.randint(1, 2)))
        r = classify(f)
        assert r.in_gr, (f, r.reason)
        assert bounded_equiv(reassemble(r), f, K=3, L=3), f


def test_verdict_invariant_under_conjunct_permutation():
    rng = random.Random(32)
    for _ in range(60):
        k = rng.randint(1, 3)
        parts = gr_parts(rng, k)
        verdict = classify(conjoin(parts)).verdict
        for _ in range(3):
            rng.shuffle(parts)
            assert classify(conjoin(_disguise(rng, p) for p in parts)).verdict == verdict
        # a permuted non-GR conjunct keeps the verdict negative
        bad = parts + [G(Implies(atom("a"), F(atom("b"))))]
        rng.shuffle(bad)
        assert not classify(conjoin(bad)).in_gr


def test_adding_a_group_increments_k():
    rng = random.Random(33)
    for _ in range(60):
        k = rng.randint(1, 3)
        f = conjoin(gr_parts(rng, k))
        assert classify(f).k == k
        g = And(f, Implies(_gf_conj(rng), _gf_conj(rng)))
        assert classify(g).k == k + 1


def test_reassembly_requires_formula_mode():
    spec = elaborate(parse_spec(read("amba_decode.tlsf")))
    with pytest.raises(ValueError):
        reassemble(classify(spec))
    with pytest.raises(ValueError):
        reassemble(classify(ltl("F a")))


# corpus

EXPECTED = {
    "amba_decode.tlsf": "GR(1)", "amba_encode.tlsf": "GR(1)", "amba_lock.tlsf": "GR(1)",
    "amba_shift.tlsf": "GR(1)",
}


@pytest.mark.parametrize("name", CORPUS_FILES)
def test_corpus_verdicts(name):
    report = classify(elaborate(parse_spec(read(name))))
    assert report.verdict == EXPECTED.get(name, report.verdict)
    if name not in EXPECTED:
        assert not report.in_gr
    assert report.summary().startswith(f"verdict: {report.verdict}\n")
