import random

import pytest
from hypothesis import given, settings

from helpers import formulas, random_formulas
from tlsfkit.elaborate import formula_from_text as ltl
from tlsfkit.lasso import bounded_equiv
from tlsfkit.rewrite import (
    NotAdmissible, is_nnf, measure, nnf, push_pull, push_pull_pass, replace_derived,
)

CORE_U = {"!", "&&", "||", "X", "U"}
CORE_R = {"!", "&&", "||", "X", "R"}


@pytest.mark.parametrize("text, expected", [
    ("!(a && b)", "!a || !b"),
    ("!X a", "X !a"),
    ("!(a U b)", "!a R !b"),
    ("!(a R b)", "!a U !b"),
    ("!G a", "F !a"),
    ("!(a -> b)", "a && !b"),
    ("!(a W b)", "(a && !b) U (!a && !b)"),
    ("!!a", "a"),
    ("!true", "false"),
])
def test_nnf_examples(text, expected):
    assert nnf(ltl(text)) == ltl(expected)


@settings(max_examples=150, deadline=None)
@given(formulas())
def test_nnf_is_sound_and_normal(f):
    g = nnf(f)
    assert is_nnf(g)
    assert bounded_equiv(f, g, K=3, L=3)


@pytest.mark.parametrize("text, keep, expected", [
    ("F a", CORE_U, "true U a"),
    ("a W b", CORE_U, "(a U b) || !(true U !a)"),
    ("a U b", CORE_U, "a U b"),
    ("G a", CORE_R, "false R a"),
    ("a -> b", CORE_U, "!a || b"),
    ("a U b", CORE_R, "!(!a R !b)"),
    ("a W b", CORE_R, "b R (b || a)"),
    ("a W b", CORE_U | {"G"}, "(a U b) || G a"),
])
def test_replace_derived_examples(text, keep, expected):
    assert replace_derived(ltl(text), keep) == ltl(expected)


def test_replace_derived_keep_must_be_admissible():
    with pytest.raises(NotAdmissible):
        replace_derived(ltl("a"), {"!", "&&", "X", "U"})
    with pytest.raises(NotAdmissible):
        replace_derived(ltl("a"), {"!", "&&", "||", "X"})
    with pytest.raises(NotAdmissible):
        replace_derived(ltl("a"), CORE_U | {"Y"})


@settings(max_examples=150, deadline=None)
@given(formulas())
def test_replace_derived_only_uses_kept_operators(f):
    for keep in (CORE_U, CORE_R, CORE_U | {"F", "G"}):
        g = replace_derived(f, keep)
        assert g.operators() <= keep
        assert bounded_equiv(f, g, K=3, L=3)


@pytest.mark.parametrize("text, direction, op, expected", [
    ("X (a && b)", "inwards", "X", "X a && X b"),
    ("X a && X b", "outwards", "X", "X (a && b)"),
    ("G (a && G b)", "inwards", "G", "G a && G b"),
    ("F (a || F b)", "inwards", "F", "F a || F b"),
    ("G a && G b", "outwards", "G", "G (a && b)"),
    ("F a || F b", "outwards", "F", "F (a || b)"),
    ("X (a U !b)", "inwards", "X", "X a U !X b"),
    ("G (a || b)", "inwards", "G", "G (a || b)"),
])
def test_push_pull_examples(text, direction, op, expected):
    assert push_pull(ltl(text), direction, op) == ltl(expected)


def test_single_pass_stops_early():
    f = ltl("X (a && X (b && c))")
    once = push_pull(f, "inwards", "X", single_pass=True)
    assert once != push_pull(f, "inwards", "X")
    assert bounded_equiv(f, once)


def test_push_pull_validates_arguments():
    with pytest.raises(ValueError):
        push_pull(ltl("a"), "sideways", "X")
    with pytest.raises(ValueError):
        push_pull(ltl("a"), "inwards", "U")


def test_measure_strictly_decreases_on_every_pass():
    rng = random.Random(11)
    for f in random_formulas(150, seed=12):
        direction = rng.choice(["inwards", "outwards"])
        op = rng.choice(["X", "F", "G"])
        while True:
            g = push_pull_pass(f, direction, op)
            if g == f:
                break
            assert measure(g, direction, op) < measure(f, direction, op)
            f = g


@settings(max_examples=100, deadline=None)
@given(formulas())
def test_push_pull_is_sound(f):
    for direction in ("inwards", "outwards"):
        for op in ("X", "F", "G"):
            assert bounded_equiv(f, push_pull(f, direction, op), K=3, L=3)
