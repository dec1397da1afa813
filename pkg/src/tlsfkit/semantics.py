"""From the six formula groups of a basic specification to one LTL formula."""

from dataclasses import dataclass, replace

from .ltl import And, G, Implies, Not, W, X, conjoin, map_atoms

MODELS = ("Mealy", "Moore")


@dataclass(frozen=True)
class CombinedFormula:
    formula: object
    semantics: object
    target: str
    inputs: tuple
    outputs: tuple


def section_formulas(spec):
    """theta_e, theta_s, psi_e, psi_s, phi_e, phi_s as left-folded conjunctions."""
    return tuple(conjoin(spec.section(s)) for s in
                 ("INITIALLY", "PRESET", "REQUIRE", "ASSERT", "ASSUME", "GUARANTEE"))


def combine(spec, strict=None):
    if strict is None:
        strict = spec.info.semantics.strict
    te, ts, pe, ps, fe, fs = section_formulas(spec)
    if strict:
        body = And(And(ts, W(ps, Not(pe))), Implies(And(G(pe), fe), fs))
    else:
        body = And(ts, Implies(And(G(pe), fe), And(G(ps), fs)))
    return Implies(te, body)


def combined(spec, strict=None):
    return CombinedFormula(combine(spec, strict), spec.info.semantics, spec.info.target,
                           spec.inputs, spec.outputs)


def adapt_target(spec, from_model, to_model):
    """Convert between Mealy and Moore by prefixing one side's atoms with X.

    Moore to Mealy delays the inputs, Mealy to Moore delays the outputs.
    """
    for m in (from_model, to_model):
        if m not in MODELS:
            raise ValueError(f"unknown system model {m}")
    if from_model == to_model:
        return spec
    shifted = set(spec.inputs if from_model == "Moore" else spec.outputs)
    fn = lambda a: X(a) if a.name in shifted else a
    info = replace(spec.info, semantics=replace(spec.info.semantics, model=to_model))
    return replace(spec.with_sections(lambda f: map_atoms(f, fn)), info=info)
