"""Shared builders for the test suite."""

import random
from pathlib import Path

from hypothesis import strategies as st

from tlsfkit.ltl import FALSE, TRUE, Formula, atom

CORPUS = Path(__file__).parent / "corpus"
GOLDEN = Path(__file__).parent / "golden"

# the nine paper specifications, corrected where a listing has a typo
CORPUS_FILES = [
    "arbiter.tlsf", "amba_decode.tlsf", "amba_arbiter.tlsf", "amba_encode.tlsf",
    "amba_shift.tlsf", "amba_tsingle.tlsf", "amba_tincr.tlsf", "amba_tburst4.tlsf",
    "amba_lock.tlsf",
]

UNARY = ("!", "X", "G", "F")
BINARY = ("&&", "||", "->", "<->", "U", "R", "W")


def read(name):
    return (CORPUS / name).read_text()


def random_formula(rng, depth=5, atoms=("a", "b", "c")):
    """Uniform-ish random formula of depth at most ``depth``."""
    if depth <= 1 or rng.random() < 0.2:
        r = rng.random()
        if r < 0.08:
            return TRUE
        if r < 0.16:
            return FALSE
        return atom(rng.choice(atoms))
    if rng.random() < 0.4:
        return Formula(rng.choice(UNARY), (random_formula(rng, depth - 1, atoms),))
    return Formula(rng.choice(BINARY), (random_formula(rng, depth - 1, atoms),
                                        random_formula(rng, depth - 1, atoms)))


def random_formulas(n, seed, depth=5, atoms=("a", "b", "c")):
    rng = random.Random(seed)
    return [random_formula(rng, depth, atoms) for _ in range(n)]


def formulas(max_depth=4, atoms=("a", "b", "c")):
    """Hypothesis strategy for formulas."""
    leaves = st.sampled_from([TRUE, FALSE] + [atom(a) for a in atoms])

    def extend(children):
        return st.one_of(
            st.tuples(st.sampled_from(UNARY), children).map(lambda t: Formula(t[0], (t[1],))),
            st.tuples(st.sampled_from(BINARY), children, children).map(
                lambda t: Formula(t[0], (t[1], t[2]))),
        )
    return st.recursive(leaves, extend, max_leaves=2 ** max_depth).filter(
        lambda f: f.depth() <= max_depth + 1)


def lasso_words(atoms=("a", "b", "c"), max_prefix=3, max_loop=3):
    from tlsfkit.lasso import LassoWord
    letter = st.frozensets(st.sampled_from(atoms))
    return st.builds(lambda p, l: LassoWord(frozenset(atoms), tuple(p), tuple(l)),
                     st.lists(letter, max_size=max_prefix),
                     st.lists(letter, min_size=1, max_size=max_loop))


_FOLD = {"!": lambda x: not x, "&&": lambda x, y: x and y, "||": lambda x, y: x or y,
         "->": lambda x, y: (not x) or y, "<->": lambda x, y: x == y}


def fold_constants(f):
    """Collapse boolean connectives whose operands are all constants, as elaboration does."""
    if not f.args:
        return f
    args = tuple(fold_constants(a) for a in f.args)
    if f.op in _FOLD and all(a.op in ("true", "false") for a in args):
        return TRUE if _FOLD[f.op](*(a.op == "true" for a in args)) else FALSE
    return Formula(f.op, args)


SECTION_FIELDS = ("initially", "preset", "require", "assert_", "assume", "guarantee")


def random_spec(rng, strict=False, model="Mealy", max_per_section=2, depth=3):
    """A small elaborated specification over inputs a, b and outputs c, d[0..1]."""
    from tlsfkit.elaborate import BasicSpec
    from tlsfkit.syntax_tree import Info, Semantics
    inputs, outputs = ("a", "b"), ("c", "d[0]", "d[1]")
    names = inputs + outputs
    sections = {name: tuple(fold_constants(random_formula(rng, depth, names))
                            for _ in range(rng.randint(0, max_per_section)))
                for name in SECTION_FIELDS}
    info = Info(f"spec {rng.randint(0, 999)}", "generated", Semantics(model, strict),
                rng.choice(["Mealy", "Moore"]), ("generated",) if rng.random() < 0.5 else ())
    return BasicSpec(info, inputs, outputs, **sections)
