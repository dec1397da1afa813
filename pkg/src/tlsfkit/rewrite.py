"""Equivalence-preserving LTL rewrites: NNF, derived-operator replacement,
and pushing/pulling of X, F and G."""

from .errors import TlsfError
from .ltl import FALSE, TRUE, And, F, Formula, G, Not, Or, R, U, W, X, make

BOOLEAN_CORE = frozenset({"!", "&&", "||"})
ALL_OPS = frozenset({"!", "&&", "||", "->", "<->", "X", "G", "F", "U", "R", "W"})


# negation normal form

def nnf(f):
    return _nnf(f, False)


def _nnf(f, neg):
    op = f.op
    if op == "true":
        return FALSE if neg else TRUE
    if op == "false":
        return TRUE if neg else FALSE
    if op == "atom":
        return Not(f) if neg else f
    if op == "!":
        return _nnf(f.args[0], not neg)
    if op == "X":
        return X(_nnf(f.args[0], neg))
    if op == "G":
        return F(_nnf(f.args[0], True)) if neg else G(_nnf(f.args[0], False))
    if op == "F":
        return G(_nnf(f.args[0], True)) if neg else F(_nnf(f.args[0], False))
    a, b = f.args
    if op == "&&":
        return Or(_nnf(a, True), _nnf(b, True)) if neg else And(_nnf(a, False), _nnf(b, False))
    if op == "||":
        return And(_nnf(a, True), _nnf(b, True)) if neg else Or(_nnf(a, False), _nnf(b, False))
    if op == "->":
        # a -> b  ==  !a || b
        return And(_nnf(a, False), _nnf(b, True)) if neg else Or(_nnf(a, True), _nnf(b, False))
    if op == "<->":
        # a <-> b  ==  (!a || b) && (a || !b);  !(a <-> b)  ==  (a && !b) || (!a && b)
        if neg:
            return Or(And(_nnf(a, False), _nnf(b, True)), And(_nnf(a, True), _nnf(b, False)))
        return And(Or(_nnf(a, True), _nnf(b, False)), Or(_nnf(a, False), _nnf(b, True)))
    if op == "U":
        return R(_nnf(a, True), _nnf(b, True)) if neg else U(_nnf(a, False), _nnf(b, False))
    if op == "R":
        return U(_nnf(a, True), _nnf(b, True)) if neg else R(_nnf(a, False), _nnf(b, False))
    if op == "W":
        if neg:
            nb = _nnf(b, True)
            return U(And(_nnf(a, False), nb), And(_nnf(a, True), nb))
        return W(_nnf(a, False), _nnf(b, False))
    raise ValueError(f"unknown operator {op}")


def is_nnf(f):
    if f.op == "!":
        return f.args[0].op == "atom"
    if f.op in ("->", "<->"):
        return False
    return all(is_nnf(a) for a in f.args)


# derived operators

class NotAdmissible(TlsfError):
    exit_code = 4


def check_keep(keep):
    keep = frozenset(keep)
    unknown = keep - ALL_OPS
    if unknown:
        raise NotAdmissible(f"unknown operators in keep set: {sorted(unknown)}")
    if not BOOLEAN_CORE <= keep or "X" not in keep or not ({"U", "R"} & keep):
        raise NotAdmissible(
            "keep set must contain !, &&, ||, X and at least one of U or R")
    return keep


def replace_derived(f, keep):
    keep = check_keep(keep)
    return _replace(f, keep)


def _replace(f, keep):
    if not f.args:
        return f
    args = tuple(_replace(a, keep) for a in f.args)
    op = f.op
    if op in keep:
        return Formula(op, args)
    if op == "->":
        return Or(Not(args[0]), args[1])
    if op == "<->":
        a, b = args
        return And(Or(Not(a), b), Or(a, Not(b)))
    if op == "F":
        return _eventually(args[0], keep)
    if op == "G":
        return _globally(args[0], keep)
    if op == "U":
        # a U b == !(!a R !b)
        return Not(R(Not(args[0]), Not(args[1])))
    if op == "R":
        # a R b == !(!a U !b)
        return Not(U(Not(args[0]), Not(args[1])))
    if op == "W":
        a, b = args
        if "U" in keep:
            return Or(U(a, b), _globally(a, keep))
        # a W b == b R (b || a)
        return R(b, Or(b, a))
    raise ValueError(f"cannot replace {op}")


def _eventually(a, keep):
    if "F" in keep:
        return F(a)
    if "U" in keep:
        return U(TRUE, a)
    return Not(R(FALSE, Not(a)))


def _globally(a, keep):
    if "G" in keep:
        return G(a)
    if "R" in keep:
        return R(FALSE, a)
    return Not(U(TRUE, Not(a)))


# push and pull

PUSHABLE = {"X": ("!", "&&", "||", "->", "<->", "U", "R", "W", "F", "G"),
            "F": ("||",), "G": ("&&",)}


def _rule(f, direction, op):
    """Apply one rewrite step at the root, or return None."""
    if direction == "inwards":
        if f.op != op:
            return None
        g = f.args[0]
        if op in ("F", "G") and g.op == op:
            return g
        if g.op in PUSHABLE[op]:
            return make(g.op, *(make(op, a) for a in g.args))
        return None
    if op in ("F", "G") and f.op == op and f.args[0].op == op:
        return f.args[0]
    if f.op in PUSHABLE[op] and f.args and all(a.op == op for a in f.args):
        return make(op, make(f.op, *(a.args[0] for a in f.args)))
    return None


def push_pull_pass(f, direction, op):
    """One bottom-up pass applying at most one step per node."""
    if not f.args:
        return f
    node = Formula(f.op, tuple(push_pull_pass(a, direction, op) for a in f.args))
    step = _rule(node, direction, op)
    return node if step is None else step


def push_pull(f, direction, op, single_pass=False):
    if direction not in ("inwards", "outwards"):
        raise ValueError("direction must be inwards or outwards")
    if op not in PUSHABLE:
        raise ValueError("operator must be X, F or G")
    while True:
        g = push_pull_pass(f, direction, op)
        if single_pass or g == f:
            return g
        f = g


def measure(f, direction, op):
    """Termination measure, compared lexicographically.

    Inwards: (number of non-op connectives below each op-node, summed; number
    of op-nodes).  Distribution lowers the first component, idempotence keeps
    it and lowers the second.  Outwards: (summed depth of op-nodes, 0); every
    step moves one op-node up or removes it.
    """
    below = 0
    count = 0
    depths = 0

    def walk(g, depth):
        # returns the number of non-op internal nodes in g
        nonlocal below, count, depths
        inner = sum(walk(a, depth + 1) for a in g.args)
        if g.op == op:
            below += inner
            count += 1
            depths += depth + 1
            return inner
        return inner + (1 if g.args else 0)
    walk(f, 0)
    if direction == "inwards":
        return (below, count)
    return (depths, 0)
