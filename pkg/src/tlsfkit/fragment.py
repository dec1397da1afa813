"""Syntactic GR(k) detection.

A formula is accepted when, modulo a small closed set of boolean identities,
it is a conjunction of initial constraints (X-free boolean formulas),
transition constraints ``G B`` with B boolean of X-depth at most one, and
``k`` implication groups ``(GF a1 && ...) -> (GF g1 && ...)``.  The
identities are: associativity and commutativity of && and ||, double
negation, true/false as units and absorbing elements, ``true -> f == f``,
and ``G F G F a == G F a``.

GR(k) for k > 1 is read as a conjunction of k GR(1) implications.
"""

from dataclasses import dataclass

from .ltl import (
    FALSE, TRUE, F, Formula, G, Implies, TEMPORAL_OPS, conjoin, conjuncts,
)


@dataclass(frozen=True)
class GrReport:
    k: int = 0
    reason: str = None
    env_init: tuple = ()
    sys_init: tuple = ()
    env_trans: tuple = ()
    sys_trans: tuple = ()
    groups: tuple = ()  # ((assumption cores, guarantee cores), ...)
    mode: str = "formula"

    @property
    def in_gr(self):
        return self.reason is None

    @property
    def verdict(self):
        return f"GR({self.k})" if self.in_gr else f"not GR: {self.reason}"

    @property
    def env_fairness(self):
        return tuple(c for a, _ in self.groups for c in a)

    @property
    def sys_fairness(self):
        return tuple(c for _, g in self.groups for c in g)

    def summary(self):
        lines = [f"verdict: {self.verdict}"]
        if self.in_gr:
            for label, items in (("env init", self.env_init), ("sys init", self.sys_init),
                                 ("env trans", self.env_trans), ("sys trans", self.sys_trans)):
                lines.append(f"{label}: {len(items)}")
                lines.extend(f"  {f}" for f in items)
            for i, (a, g) in enumerate(self.groups, 1):
                lines.append(f"group {i}:")
                lines.extend(f"  assume G F {f}" for f in a)
                lines.extend(f"  ensure G F {f}" for f in g)
        return "\n".join(lines) + "\n"


def not_gr(reason, mode="formula"):
    return GrReport(reason=reason, mode=mode)


# normalisation modulo the documented identities

def normalize(f):
    if not f.args:
        return f
    args = tuple(normalize(a) for a in f.args)
    op = f.op
    if op == "!":
        a = args[0]
        if a.op == "!":
            return a.args[0]
        if a.op in ("true", "false"):
            return FALSE if a == TRUE else TRUE
        return Formula(op, args)
    if op == "&&":
        a, b = args
        if FALSE in args:
            return FALSE
        if a == TRUE:
            return b
        if b == TRUE:
            return a
    elif op == "||":
        a, b = args
        if TRUE in args:
            return TRUE
        if a == FALSE:
            return b
        if b == FALSE:
            return a
    elif op == "->":
        a, b = args
        if a == TRUE:
            return b
        if a == FALSE or b == TRUE:
            return TRUE
    elif op == "G" and args[0].op == "F" and args[0].args[0].op == "G" \
            and args[0].args[0].args[0].op == "F":
        return args[0].args[0]
    return Formula(op, args)


def _is_boolean(f):
    return not (f.operators() & set(TEMPORAL_OPS))


def _x_depth(f):
    """Largest X nesting, or None if another temporal operator occurs."""
    if f.op in ("G", "F", "U", "R", "W"):
        return None
    inner = 0
    for a in f.args:
        d = _x_depth(a)
        if d is None:
            return None
        inner = max(inner, d)
    return inner + (1 if f.op == "X" else 0)


def _first_temporal(f, skip=("X",)):
    for s in f.subformulas():
        if s.op in TEMPORAL_OPS and s.op not in skip:
            return s.op
    return None


def _gf_core(f):
    if f.op == "G" and f.args[0].op == "F" and _is_boolean(f.args[0].args[0]):
        return f.args[0].args[0]
    return None


def _gf_cores(f):
    """Cores of a conjunction of GF formulas, or None."""
    if f == TRUE:
        return ()
    cores = []
    for c in conjuncts(f):
        core = _gf_core(c)
        if core is None:
            return None
        cores.append(core)
    return tuple(cores)


def _transition_body(body):
    """Check a transition constraint body; returns an obstruction or None."""
    depth = _x_depth(body)
    if depth is None:
        return f"{_first_temporal(body)} under G outside GF core"
    if depth > 1:
        return f"X-depth {depth} exceeds 1 in transition constraint"
    return None


def _describe_conjunct(c):
    if c.op == "G":
        core = c.args[0]
        if core.op == "F":
            return "GF core is not an X-free boolean formula"
        return _transition_body(core)
    if c.op == "->":
        return "implication sides are not conjunctions of GF formulas"
    if _x_depth(c) is not None:
        return "X outside a transition constraint"
    return f"{_first_temporal(c)} outside GF core"


def classify(source):
    """Classify a BasicSpec (section-wise) or a single Formula."""
    if isinstance(source, Formula):
        return _classify_formula(source)
    return _classify_spec(source)


def _classify_formula(f):
    init, trans, groups, lone = [], [], [], []
    for c in conjuncts(normalize(f)):
        if c == TRUE:
            continue
        if c == FALSE or _is_boolean(c):
            init.append(c)
            continue
        if c.op == "G" and _gf_core(c) is None and _transition_body(c.args[0]) is None:
            trans.append(c.args[0])
            continue
        core = _gf_core(c)
        if core is not None:
            lone.append(core)
            continue
        if c.op == "->":
            a, g = _gf_cores(c.args[0]), _gf_cores(c.args[1])
            if a is not None and g is not None:
                groups.append((a, g))
                continue
        return not_gr(_describe_conjunct(c))
    if lone:
        groups.insert(0, ((), tuple(lone)))
    if not groups:
        groups = [((), ())]
    return GrReport(len(groups), None, (), tuple(init), (), tuple(trans), tuple(groups))


def _classify_spec(spec):
    env_init = [c for f in spec.initially for c in conjuncts(normalize(f))]
    sys_init = [c for f in spec.preset for c in conjuncts(normalize(f))]
    parts = {"env": ([], []), "sys": ([], [])}  # (trans, fairness)
    extra = []
    for side, init in (("env", env_init), ("sys", sys_init)):
        for c in init:
            if not _is_boolean(c):
                return not_gr(f"initial constraint {c} is not an X-free boolean formula", "spec")
    for side, section in (("env", spec.require), ("sys", spec.assert_)):
        for f in section:
            for c in conjuncts(normalize(f)):
                body = c.args[0] if c.op == "G" and _gf_core(c) is None else c
                problem = _transition_body(body)
                if problem:
                    return not_gr(problem, "spec")
                if body != TRUE:
                    parts[side][0].append(body)
    for side, section, init in (("env", spec.assume, env_init),
                                ("sys", spec.guarantee, sys_init)):
        for f in section:
            for c in conjuncts(normalize(f)):
                if c == TRUE:
                    continue
                if _is_boolean(c):
                    init.append(c)
                    continue
                core = _gf_core(c)
                if core is not None:
                    parts[side][1].append(core)
                    continue
                if c.op == "G" and _transition_body(c.args[0]) is None:
                    parts[side][0].append(c.args[0])
                    continue
                if side == "sys" and c.op == "->":
                    a, g = _gf_cores(c.args[0]), _gf_cores(c.args[1])
                    if a is not None and g is not None:
                        extra.append((a, g))
                        continue
                return not_gr(_describe_conjunct(c), "spec")
    groups = []
    if parts["env"][1] or parts["sys"][1]:
        groups.append((tuple(parts["env"][1]), tuple(parts["sys"][1])))
    groups.extend(extra)
    if not groups:
        groups = [((), ())]
    return GrReport(len(groups), None, tuple(env_init), tuple(sys_init),
                    tuple(parts["env"][0]), tuple(parts["sys"][0]), tuple(groups), "spec")


def reassemble(report):
    """Formula-mode inverse of classify: the conjunction of all reported parts."""
    if not report.in_gr:
        raise ValueError("cannot reassemble a formula outside GR(k)")
    if report.mode != "formula":
        raise ValueError("reassembly is defined for formula-mode reports only")
    pieces = list(report.sys_init)
    pieces += [G(b) for b in report.sys_trans]
    for a, g in report.groups:
        if not a and not g:
            continue
        lhs = conjoin(G(F(c)) for c in a)
        rhs = conjoin(G(F(c)) for c in g)
        pieces.append(rhs if not a else Implies(lhs, rhs))
    return conjoin(pieces)
