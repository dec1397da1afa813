"""Plain LTL formulas over atomic signals."""

from dataclasses import dataclass, field

UNARY_OPS = ("!", "X", "G", "F")
BINARY_OPS = ("&&", "||", "->", "<->", "U", "R", "W")
TEMPORAL_OPS = ("X", "G", "F", "U", "R", "W")
BOOLEAN_OPS = ("!", "&&", "||", "->", "<->")

# precedence level and associativity, as in the TLSF operator table
LEVELS = {"&&": (12, "left"), "||": (13, "left"), "->": (14, "right"), "<->": (14, "right"),
          "W": (15, "right"), "U": (16, "right"), "R": (17, "left")}


@dataclass(frozen=True)
class Formula:
    op: str
    args: tuple = ()
    name: str = None
    _hash: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.op, self.args, self.name)))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Formula({to_text(self)})"

    def __str__(self):
        return to_text(self)

    @property
    def is_atom(self):
        return self.op == "atom"

    @property
    def is_constant(self):
        return self.op in ("true", "false")

    def atoms(self):
        out = set()
        stack = [self]
        while stack:
            f = stack.pop()
            if f.op == "atom":
                out.add(f.name)
            stack.extend(f.args)
        return out

    def subformulas(self):
        """Post-order list of distinct subformulas."""
        seen, order = set(), []

        def visit(f):
            if f in seen:
                return
            for a in f.args:
                visit(a)
            seen.add(f)
            order.append(f)
        visit(self)
        return order

    def size(self):
        return 1 + sum(a.size() for a in self.args)

    def depth(self):
        return 1 + max((a.depth() for a in self.args), default=0)

    def temporal_depth(self):
        inner = max((a.temporal_depth() for a in self.args), default=0)
        return inner + (1 if self.op in TEMPORAL_OPS else 0)

    def operators(self):
        out = set()
        stack = [self]
        while stack:
            f = stack.pop()
            if f.args:
                out.add(f.op)
            stack.extend(f.args)
        return out


TRUE = Formula("true")
FALSE = Formula("false")


def atom(name):
    if not name:
        raise ValueError("atom names must be nonempty")
    return Formula("atom", (), name)


def const(value):
    return TRUE if value else FALSE


def Not(a):
    return Formula("!", (a,))


def And(a, b):
    return Formula("&&", (a, b))


def Or(a, b):
    return Formula("||", (a, b))


def Implies(a, b):
    return Formula("->", (a, b))


def Iff(a, b):
    return Formula("<->", (a, b))


def X(a):
    return Formula("X", (a,))


def G(a):
    return Formula("G", (a,))


def F(a):
    return Formula("F", (a,))


def U(a, b):
    return Formula("U", (a, b))


def R(a, b):
    return Formula("R", (a, b))


def W(a, b):
    return Formula("W", (a, b))


def make(op, *args):
    if op in ("true", "false"):
        return const(op == "true")
    if op in UNARY_OPS and len(args) == 1 or op in BINARY_OPS and len(args) == 2:
        return Formula(op, tuple(args))
    raise ValueError(f"bad arity for {op}: {len(args)}")


def conjoin(formulas):
    """Left-associated conjunction; the empty conjunction is true."""
    result = None
    for f in formulas:
        result = f if result is None else And(result, f)
    return TRUE if result is None else result


def disjoin(formulas):
    result = None
    for f in formulas:
        result = f if result is None else Or(result, f)
    return FALSE if result is None else result


def conjuncts(f):
    """Flatten a (possibly nested) conjunction into its operands."""
    if f.op == "&&":
        return conjuncts(f.args[0]) + conjuncts(f.args[1])
    return [f]


def map_atoms(f, fn):
    """Replace each atom occurrence by fn(atom)."""
    if f.op == "atom":
        return fn(f)
    if not f.args:
        return f
    return Formula(f.op, tuple(map_atoms(a, fn) for a in f.args))


def _level(f):
    if f.op in LEVELS:
        return LEVELS[f.op][0]
    if f.op in UNARY_OPS:
        return 11
    return 0


def to_text(f):
    """Render in TLSF expression syntax with the fewest parentheses that
    reparse to the same tree."""
    if f.op == "atom":
        return f.name
    if f.op in ("true", "false"):
        return f.op
    if f.op in UNARY_OPS:
        inner = f.args[0]
        s = to_text(inner)
        if _level(inner) > 11:
            s = f"({s})"
        sep = "" if f.op == "!" else " "
        return f"{f.op}{sep}{s}"
    lvl, assoc = LEVELS[f.op]
    left, right = f.args
    ls, rs = to_text(left), to_text(right)
    if _level(left) > (lvl if assoc == "left" else lvl - 1):
        ls = f"({ls})"
    if _level(right) > (lvl if assoc == "right" else lvl - 1):
        rs = f"({rs})"
    return f"{ls} {f.op} {rs}"


def to_basic(f):
    """Fully parenthesized rendering used by the basic format."""
    if f.op == "atom":
        return f"({f.name})"
    if f.op in ("true", "false"):
        return f"({f.op})"
    if f.op in UNARY_OPS:
        return f"({f.op} {to_basic(f.args[0])})"
    return f"({to_basic(f.args[0])} {f.op} {to_basic(f.args[1])})"
