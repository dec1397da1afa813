"""Evaluation of full TLSF down to plain LTL."""

import sys
import threading
from dataclasses import dataclass, field, replace
from itertools import product

from .errors import ElaborationError, KindError, TlsfError, UnboundIdentifier
from .ltl import (
    Formula, G, Not, atom, conjoin, const, disjoin, make,
)
from .parser import parse_expr
from .syntax_tree import (
    SECTIONS, Binary, Binder, Binding, BoolLit, EnumDecl, FormulaLit, FunctionDef,
    Guard, Ident, Info, Match, Num, Otherwise, RangeBinder, SetRange, Sugar,
    Unary,
)

DEFAULT_DEPTH_LIMIT = 4096


# values

@dataclass(frozen=True)
class Nat:
    value: int


@dataclass(frozen=True)
class Bool:
    value: bool


@dataclass(frozen=True)
class SetOf:
    items: frozenset
    kind: str = None  # element kind, None for the empty set


@dataclass(frozen=True)
class Ltl:
    formula: Formula


@dataclass(frozen=True)
class Signal:
    name: str


@dataclass(frozen=True)
class Bus:
    name: str
    width: int


@dataclass(frozen=True)
class EnumValuation:
    name: str
    patterns: tuple
    enum: str = None


KIND_NAMES = {Nat: "natural", Bool: "boolean", SetOf: "set", Ltl: "LTL formula",
              Signal: "signal", Bus: "bus", EnumValuation: "enum value"}


def kind_of(v):
    return KIND_NAMES[type(v)]


def _formula_like(v):
    return isinstance(v, (Bool, Signal, Ltl))


def to_formula(v, pos=None):
    if isinstance(v, Ltl):
        return v.formula
    if isinstance(v, Signal):
        return atom(v.name)
    if isinstance(v, Bool):
        return const(v.value)
    raise KindError(f"expected an LTL expression, found a {kind_of(v)}", pos)


def _sort_key(v):
    if isinstance(v, Nat):
        return (0, v.value, "")
    return (1, 0, repr(v))


def make_set(values, pos=None):
    values = list(values)
    kinds = {kind_of(v) for v in values}
    if len(kinds) > 1:
        raise KindError(f"sets must be homogeneous, found {sorted(kinds)}", pos)
    return SetOf(frozenset(values), kinds.pop() if kinds else None)


def set_items(s):
    return sorted(s.items, key=_sort_key)


# declarations

@dataclass(frozen=True)
class EnumDef:
    name: str
    width: int
    entries: tuple  # ((entry, (pattern, ...)), ...)

    def valuations(self, patterns):
        out = set()
        for p in patterns:
            choices = [("0", "1") if c == "*" else (c,) for c in p]
            out.update("".join(x) for x in product(*choices))
        return out

    def is_complete(self):
        covered = set()
        for _, pats in self.entries:
            covered |= self.valuations(pats)
        return len(covered) == 2 ** self.width


def _make_enum(decl):
    widths = {len(p) for _, pats in decl.entries for p in pats}
    if len(widths) != 1:
        raise ElaborationError(f"enum {decl.name}: all patterns must have the same width",
                               decl.pos)
    enum = EnumDef(decl.name, widths.pop(), decl.entries)
    seen = {}
    for name, pats in decl.entries:
        if name in seen:
            raise ElaborationError(f"enum {decl.name}: duplicate entry {name}", decl.pos)
        vals = enum.valuations(pats)
        for other, ovals in seen.items():
            if vals & ovals:
                clash = sorted(vals & ovals)[0]
                raise ElaborationError(
                    f"enum {decl.name}: entries {other} and {name} overlap on {clash}", decl.pos)
        seen[name] = vals
    return enum


@dataclass(frozen=True)
class BasicSpec:
    info: Info
    inputs: tuple
    outputs: tuple
    initially: tuple = ()
    preset: tuple = ()
    require: tuple = ()
    assert_: tuple = ()
    assume: tuple = ()
    guarantee: tuple = ()

    def section(self, name):
        return getattr(self, _FIELD[name])

    def with_sections(self, fn):
        """Apply fn to every formula of every section."""
        return replace(self, **{_FIELD[s]: tuple(fn(f) for f in self.section(s))
                                for s in SECTIONS})

    def formulas(self):
        for s in SECTIONS:
            yield from self.section(s)


_FIELD = {"INITIALLY": "initially", "PRESET": "preset", "REQUIRE": "require",
          "ASSERT": "assert_", "ASSUME": "assume", "GUARANTEE": "guarantee"}


# environment

class _Lazy:
    def __init__(self, expr):
        self.expr = expr
        self.busy = False


class Scope:
    def __init__(self, bindings, parent=None):
        self.bindings = bindings
        self.parent = parent

    def lookup(self, name):
        s = self
        while s is not None:
            if name in s.bindings:
                return s.bindings[name]
            s = s.parent
        return None


@dataclass
class Environment:
    globals: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)
    enums: dict = field(default_factory=dict)
    inputs: list = field(default_factory=list)
    outputs: list = field(default_factory=list)
    depth_limit: int = DEFAULT_DEPTH_LIMIT
    auto_signals: bool = False
    depth: int = 0
    result_kinds: dict = field(default_factory=dict)

    def declare(self, name, value, pos=None):
        if name in self.globals or name in self.functions or name in self.enums:
            raise ElaborationError(f"identifier {name} is declared twice", pos)
        self.globals[name] = value


def bind_globals(spec, overrides=None):
    overrides = dict(overrides or {})
    env = Environment()
    declared = {p.name for p in spec.parameters}
    unknown = sorted(set(overrides) - declared)
    if unknown:
        raise UnknownParameter(f"unknown parameter {unknown[0]}")
    for p in spec.parameters:
        if p.name in overrides:
            value = overrides[p.name]
            if not isinstance(value, Nat):
                value = Nat(int(value))
        else:
            value = evaluate(p.expr, env)
            if not isinstance(value, Nat):
                raise KindError(f"parameter {p.name} must be a natural, found a {kind_of(value)}",
                                p.pos)
        env.declare(p.name, value, p.pos)
    for d in spec.definitions:
        if isinstance(d, FunctionDef):
            if d.name in env.globals or d.name in env.functions:
                raise ElaborationError(f"identifier {d.name} is declared twice", d.pos)
            env.functions[d.name] = d
        elif isinstance(d, EnumDecl):
            if d.name in env.enums:
                raise ElaborationError(f"enum {d.name} is declared twice", d.pos)
            enum = _make_enum(d)
            env.enums[d.name] = enum
            for entry, pats in enum.entries:
                env.declare(entry, EnumValuation(entry, pats, enum.name), d.pos)
        else:
            env.declare(d.name, _Lazy(d.expr), d.pos)
    # plain identifier bindings must not depend on each other cyclically
    for d in spec.definitions:
        if isinstance(d, Binding):
            _check_cycles(d.name, env)
    return env


class UnknownParameter(ElaborationError):
    exit_code = 4


def _free_idents(e, out):
    if isinstance(e, Ident):
        out.add(e.name)
    elif isinstance(e, (tuple, list)):
        for x in e:
            _free_idents(x, out)
    elif hasattr(e, "__dataclass_fields__") and not isinstance(e, FormulaLit):
        for name in e.__dataclass_fields__:
            if name != "pos":
                _free_idents(getattr(e, name), out)
    return out


def _check_cycles(start, env):
    def deps(name):
        v = env.globals.get(name)
        return _free_idents(v.expr, set()) if isinstance(v, _Lazy) else set()

    stack, path = [(start, iter(sorted(deps(start))))], [start]
    while stack:
        name, it = stack[-1]
        nxt = next(it, None)
        if nxt is None:
            stack.pop()
            path.pop()
            continue
        if nxt == start or nxt in path:
            raise ElaborationError("cyclic definition: " + " -> ".join(path + [nxt]))
        if isinstance(env.globals.get(nxt), _Lazy):
            stack.append((nxt, iter(sorted(deps(nxt)))))
            path.append(nxt)


# evaluation

def evaluate(expr, env, scope=None):
    return _Evaluator(env).eval(expr, scope)


def eval_range(x, y, z, pos=None):
    if not x < y:
        raise ElaborationError(f"range {{{x}, {y} .. {z}}} requires the first element to be "
                               "smaller than the second", pos)
    return make_set(Nat(n) for n in range(x, z + 1, y - x))


def expand_enum_comparison(bus, entry, polarity="eq", pos=None):
    width = len(entry.patterns[0])
    if bus.width != width:
        raise KindError(f"bus {bus.name} has width {bus.width} but {entry.name} has width "
                        f"{width}", pos)

    def pattern(p):
        lits = [atom(f"{bus.name}[{i}]") if c == "1" else Not(atom(f"{bus.name}[{i}]"))
                for i, c in enumerate(p) if c != "*"]
        return conjoin(lits)

    f = disjoin(pattern(p) for p in entry.patterns)
    return Not(f) if polarity == "neq" else f


def implicit_enum_constraints(decl, enum):
    """Formula constraining an enum-typed bus to its named valuations, or None."""
    if enum.is_complete():
        return None
    bus = Bus(decl.name, enum.width)
    return G(disjoin(expand_enum_comparison(bus, EnumValuation(name, pats, enum.name))
                     for name, pats in enum.entries))


def desugar(expr, env=None, scope=None):
    """Rewrite X[n], F[n:m], G[n:m] and comparison binders into core syntax."""
    if isinstance(expr, Sugar):
        body = desugar(expr.body, env, scope)
        n = _const_nat(expr.lo, env, scope)
        if expr.op == "X":
            core = body
        else:
            m = _const_nat(expr.hi, env, scope)
            if m < n:
                raise ElaborationError(f"{expr.op}[{n}:{m}] requires {n} <= {m}", expr.pos)
            glue = "||" if expr.op == "F" else "&&"
            core = body
            for _ in range(m - n):
                core = Binary(glue, body, Unary("X", core))
        for _ in range(n):
            core = Unary("X", core)
        return core
    if isinstance(expr, RangeBinder):
        return Binder(expr.name, _range_domain(expr), pos=expr.pos)
    if isinstance(expr, FormulaLit) or not hasattr(expr, "__dataclass_fields__"):
        return expr
    changes = {}
    for name in expr.__dataclass_fields__:
        if name == "pos":
            continue
        value = getattr(expr, name)
        if isinstance(value, tuple):
            new = tuple(desugar(v, env, scope) for v in value)
        elif hasattr(value, "__dataclass_fields__"):
            new = desugar(value, env, scope)
        else:
            continue
        if new != value:
            changes[name] = new
    return replace(expr, **changes) if changes else expr


def _plus_one(e):
    return Num(e.value + 1) if isinstance(e, Num) else Binary("+", e, Num(1))


def _range_domain(b):
    first = b.lo if b.lo_op == "<=" else _plus_one(b.lo)
    if b.hi_op == "<=":
        last = b.hi
    elif isinstance(b.hi, Num) and b.hi.value > 0:
        last = Num(b.hi.value - 1)
    else:
        last = Binary("-", b.hi, Num(1))
    return SetRange(first, _plus_one(first), last)


def _const_nat(e, env, scope):
    if isinstance(e, Num):
        return e.value
    if env is None:
        raise ElaborationError("sugar bounds must be literals when no environment is given",
                               getattr(e, "pos", None))
    v = _Evaluator(env).eval(e, scope)
    if not isinstance(v, Nat):
        raise KindError(f"sugar bound must be a natural, found a {kind_of(v)}", e.pos)
    return v.value


def apply_function(name, arguments, env, pos=None):
    return _Evaluator(env).apply(name, list(arguments), pos)


def expand_big_op(op, binders, body, env, scope=None, pos=None):
    return _Evaluator(env).big_op(op, binders, body, scope, pos)


_BOOL_FNS = {"&&": lambda a, b: a and b, "||": lambda a, b: a or b,
             "->": lambda a, b: (not a) or b, "<->": lambda a, b: a == b}
_CMP = {"==": lambda a, b: a == b, "!=": lambda a, b: a != b, "<": lambda a, b: a < b,
        "<=": lambda a, b: a <= b, ">": lambda a, b: a > b, ">=": lambda a, b: a >= b}


class _Evaluator:
    def __init__(self, env):
        self.env = env

    def eval(self, e, scope=None):
        method = getattr(self, "eval_" + type(e).__name__, None)
        if method is None:
            raise ElaborationError(f"cannot evaluate {type(e).__name__} here",
                                   getattr(e, "pos", None))
        return method(e, scope)

    # leaves
    def eval_Num(self, e, scope):
        return Nat(e.value)

    def eval_BoolLit(self, e, scope):
        return Bool(e.value)

    def eval_FormulaLit(self, e, scope):
        return Ltl(e.formula)

    def eval_Ident(self, e, scope):
        if e.name == "_":
            raise ElaborationError("the wildcard _ is only allowed in patterns", e.pos)
        if scope is not None:
            v = scope.lookup(e.name)
            if v is not None:
                return v
        v = self.env.globals.get(e.name)
        if isinstance(v, _Lazy):
            if v.busy:
                raise ElaborationError(f"cyclic definition of {e.name}", e.pos)
            v.busy = True
            try:
                value = self.eval(v.expr, None)
            finally:
                v.busy = False
            self.env.globals[e.name] = value
            return value
        if v is not None:
            return v
        if e.name in self.env.functions:
            raise KindError(f"function {e.name} used without arguments", e.pos)
        if self.env.auto_signals:
            return Signal(e.name)
        raise UnboundIdentifier(f"unbound identifier {e.name}", e.pos)

    def eval_Index(self, e, scope):
        if (self.env.auto_signals and isinstance(e.base, Ident)
                and (scope is None or scope.lookup(e.base.name) is None)
                and e.base.name not in self.env.globals):
            base = Bus(e.base.name, 2 ** 63)
        else:
            base = self.eval(e.base, scope)
        if not isinstance(base, Bus):
            raise KindError(f"only buses can be indexed, found a {kind_of(base)}", e.pos)
        idx = self.eval(e.index, scope)
        if not isinstance(idx, Nat):
            raise KindError(f"bus index must be a natural, found a {kind_of(idx)}", e.pos)
        if not 0 <= idx.value < base.width:
            raise ElaborationError(f"index {idx.value} out of bounds for bus {base.name} of "
                                   f"width {base.width}", e.pos)
        return Signal(f"{base.name}[{idx.value}]")

    def eval_Call(self, e, scope):
        args = [self.eval(a, scope) for a in e.args]
        return self.apply(e.name, args, e.pos)

    def eval_SetDisplay(self, e, scope):
        return make_set((self.eval(x, scope) for x in e.items), e.pos)

    def eval_SetRange(self, e, scope):
        x, y, z = (self.nat(v, scope, "range bound") for v in (e.first, e.second, e.last))
        return eval_range(x, y, z, e.pos)

    def eval_Sugar(self, e, scope):
        return self.eval(desugar(e, self.env, scope), scope)

    def eval_Guard(self, e, scope):
        raise ElaborationError("guards are only allowed in function definitions", e.pos)

    eval_Match = eval_Guard
    eval_Otherwise = eval_Guard

    def nat(self, e, scope, what):
        v = self.eval(e, scope)
        if not isinstance(v, Nat):
            raise KindError(f"{what} must be a natural, found a {kind_of(v)}",
                            getattr(e, "pos", None))
        return v.value

    # operators
    def eval_Unary(self, e, scope):
        v = self.eval(e.operand, scope)
        op = e.op
        if op == "!":
            if isinstance(v, Bool):
                return Bool(not v.value)
            return Ltl(Not(self.formula(v, e, "!")))
        if op in ("X", "F", "G"):
            return Ltl(make(op, self.formula(v, e, op)))
        if op == "SIZEOF":
            if not isinstance(v, Bus):
                raise KindError(f"SIZEOF expects a bus, found a {kind_of(v)}", e.pos)
            return Nat(v.width)
        if not isinstance(v, SetOf):
            raise KindError(f"{op} expects a set, found a {kind_of(v)}", e.pos)
        if op == "SIZE":
            return Nat(len(v.items))
        if v.kind not in (None, "natural"):
            raise KindError(f"{op} expects a set of naturals", e.pos)
        if not v.items:
            raise ElaborationError(f"{op} of the empty set", e.pos)
        fn = min if op == "MIN" else max
        return Nat(fn(x.value for x in v.items))

    def formula(self, v, e, op):
        if not _formula_like(v):
            raise KindError(f"operator {op} expects an LTL expression, found a {kind_of(v)}",
                            e.pos)
        return to_formula(v)

    def eval_Binary(self, e, scope):
        op = e.op
        a = self.eval(e.left, scope)
        b = self.eval(e.right, scope)
        if op in ("+", "-", "*", "/", "%"):
            if not (isinstance(a, Nat) and isinstance(b, Nat)):
                raise KindError(f"operator {op} expects naturals, found a {kind_of(a)} and "
                                f"a {kind_of(b)}", e.pos)
            x, y = a.value, b.value
            if op == "+":
                return Nat(x + y)
            if op == "*":
                return Nat(x * y)
            if op == "-":
                if y > x:
                    raise ElaborationError(f"natural underflow in {x} - {y}", e.pos)
                return Nat(x - y)
            if y == 0:
                raise ElaborationError("division by zero", e.pos)
            return Nat(x // y if op == "/" else x % y)
        if op in ("(+)", "(*)", "(\\)"):
            if not (isinstance(a, SetOf) and isinstance(b, SetOf)):
                raise KindError(f"operator {op} expects sets", e.pos)
            items = {"(+)": a.items | b.items, "(*)": a.items & b.items,
                     "(\\)": a.items - b.items}[op]
            if a.kind and b.kind and a.kind != b.kind:
                raise KindError(f"operator {op} mixes a set of {a.kind} and a set of {b.kind}",
                                e.pos)
            return make_set(items, e.pos) if items else SetOf(frozenset(), a.kind or b.kind)
        if op in _CMP:
            if isinstance(a, Nat) and isinstance(b, Nat):
                return Bool(_CMP[op](a.value, b.value))
            if op in ("==", "!="):
                return self.enum_compare(op, a, b, e)
            raise KindError(f"operator {op} expects naturals, found a {kind_of(a)} and "
                            f"a {kind_of(b)}", e.pos)
        if op == "IN":
            if not isinstance(b, SetOf):
                raise KindError(f"IN expects a set on the right, found a {kind_of(b)}", e.pos)
            if b.kind and kind_of(a) != b.kind:
                raise KindError(f"IN compares a {kind_of(a)} with a set of {b.kind}", e.pos)
            return Bool(a in b.items)
        if op in _BOOL_FNS:
            if isinstance(a, Bool) and isinstance(b, Bool):
                return Bool(_BOOL_FNS[op](a.value, b.value))
            return Ltl(make(op, self.formula(a, e, op), self.formula(b, e, op)))
        if op in ("U", "R", "W"):
            return Ltl(make(op, self.formula(a, e, op), self.formula(b, e, op)))
        raise ElaborationError(f"unknown operator {op}", e.pos)

    def enum_compare(self, op, a, b, e):
        if isinstance(a, EnumValuation) and isinstance(b, Bus):
            a, b = b, a
        if isinstance(a, Bus) and isinstance(b, EnumValuation):
            return Ltl(expand_enum_comparison(a, b, "eq" if op == "==" else "neq", e.pos))
        if isinstance(a, Bus) and isinstance(b, Bus):
            raise KindError(f"comparison {op} between two buses is not defined", e.pos)
        raise KindError(f"operator {op} cannot compare a {kind_of(a)} with a {kind_of(b)}",
                        e.pos)

    # big operators
    def eval_BigOp(self, e, scope):
        return self.big_op(e.op, e.binders, e.body, scope, e.pos)

    def big_op(self, op, binders, body, scope, pos):
        return self._expand(op, list(binders), body, scope, pos)

    def _domain(self, b, scope):
        if isinstance(b, RangeBinder):
            lo = self.nat(b.lo, scope, "binder bound")
            hi = self.nat(b.hi, scope, "binder bound")
            lo = lo if b.lo_op == "<=" else lo + 1
            hi = hi if b.hi_op == "<=" else hi - 1
            return [Nat(i) for i in range(lo, hi + 1)]
        if isinstance(b, tuple):
            name, dom = b
            return set_items(dom)
        v = self.eval(b.domain, scope)
        if not isinstance(v, SetOf):
            raise KindError(f"binder {b.name} must range over a set, found a {kind_of(v)}",
                            b.pos)
        return set_items(v)

    def _expand(self, op, binders, body, scope, pos):
        first, rest = binders[0], binders[1:]
        name = first[0] if isinstance(first, tuple) else first.name
        values = []
        for item in self._domain(first, scope):
            inner = Scope({name: item}, scope)
            if rest:
                values.append(self._expand(op, rest, body, inner, pos))
            else:
                values.append(self.eval(body, inner))
        return self.fold(op, values, pos)

    def fold(self, op, values, pos):
        if not values:
            identity = {"&&": Bool(True), "||": Bool(False), "+": Nat(0), "*": Nat(1),
                        "(+)": SetOf(frozenset())}
            if op not in identity:
                raise ElaborationError(f"big operator {op} over an empty set has no identity",
                                       pos)
            return identity[op]
        acc = values[0]
        self._check_fold_kind(op, acc, pos)
        for v in values[1:]:
            self._check_fold_kind(op, v, pos)
            acc = self.eval_Binary(Binary(op, _ValueLit(acc), _ValueLit(v), pos=pos), None)
        return acc

    def _check_fold_kind(self, op, v, pos):
        ok = {"+": Nat, "*": Nat, "(+)": SetOf, "(*)": SetOf}
        if op in ok and not isinstance(v, ok[op]):
            raise KindError(f"big operator {op} expects {KIND_NAMES[ok[op]]}s, found a "
                            f"{kind_of(v)}", pos)
        if op in ("&&", "||") and not _formula_like(v):
            raise KindError(f"big operator {op} expects boolean or LTL operands, found a "
                            f"{kind_of(v)}", pos)

    def eval__ValueLit(self, e, scope):
        return e.value

    # functions
    def apply(self, name, args, pos=None):
        env = self.env
        fn = env.functions.get(name)
        if fn is None:
            if name in env.globals:
                raise KindError(f"{name} is not a function", pos)
            raise UnboundIdentifier(f"unbound function {name}", pos)
        if len(args) != len(fn.params):
            raise KindError(f"function {name} expects {len(fn.params)} arguments, got "
                            f"{len(args)}", pos)
        if env.depth >= env.depth_limit:
            raise ElaborationError(f"recursion depth limit {env.depth_limit} exceeded in "
                                   f"function {name}", pos)
        env.depth += 1
        try:
            scope = Scope(dict(zip(fn.params, args)))
            result = self._select(fn, scope, pos)
        finally:
            env.depth -= 1
        kind = _result_class(result)
        known = env.result_kinds.setdefault(name, kind)
        if known != kind:
            raise KindError(f"function {name} returns both a {known} and a {kind}", pos)
        return result

    def _select(self, fn, scope, pos):
        for body in fn.bodies:
            if not isinstance(body, Guard):
                return self.eval(body, scope)
            cond = body.cond
            if isinstance(cond, Otherwise):
                return self.eval(body.body, scope)
            if isinstance(cond, Match):
                subject = self.eval(cond.subject, scope)
                if not _formula_like(subject):
                    raise KindError(f"pattern match expects an LTL expression, found a "
                                    f"{kind_of(subject)}", cond.pos)
                bound = match_pattern(desugar(cond.pattern, self.env, scope),
                                      to_formula(subject))
                if bound is not None:
                    return self.eval(body.body, Scope(bound, scope))
                continue
            v = self.eval(cond, scope)
            if not isinstance(v, Bool):
                if isinstance(v, (Signal, Ltl)):
                    raise KindError("signals are not allowed in a boolean expression",
                                    getattr(cond, "pos", None))
                raise KindError(f"guard must be boolean, found a {kind_of(v)}",
                                getattr(cond, "pos", None))
            if v.value:
                return self.eval(body.body, scope)
        raise ElaborationError(f"no guard of function {fn.name} applies", pos)


@dataclass(frozen=True)
class _ValueLit:
    value: object
    pos: tuple = None


def _result_class(v):
    if _formula_like(v):
        return "formula"
    return kind_of(v)


def match_pattern(pattern, f):
    """Structurally match f against a pattern expression; returns bindings or None."""
    if isinstance(pattern, Ident):
        if pattern.name == "_":
            return {}
        return {pattern.name: Ltl(f)}
    if isinstance(pattern, BoolLit):
        return {} if f == const(pattern.value) else None
    if isinstance(pattern, Unary) and pattern.op in ("!", "X", "F", "G"):
        if f.op != pattern.op:
            return None
        return match_pattern(pattern.operand, f.args[0])
    if isinstance(pattern, Binary) and pattern.op in ("&&", "||", "->", "<->", "U", "R", "W"):
        if f.op != pattern.op:
            return None
        left = match_pattern(pattern.left, f.args[0])
        if left is None:
            return None
        right = match_pattern(pattern.right, f.args[1])
        if right is None:
            return None
        for k, v in right.items():
            left.setdefault(k, v)
        return left
    raise KindError("patterns may only use identifiers, true, false and LTL connectives",
                    getattr(pattern, "pos", None))


# whole specifications

def _declare_signals(env, decls, direction):
    atoms = []
    for d in decls:
        if d.shape == "single":
            env.declare(d.name, Signal(d.name), d.pos)
            atoms.append(d.name)
            continue
        if d.shape == "enum":
            enum = env.enums.get(d.enum)
            if enum is None:
                raise UnboundIdentifier(f"unknown enum type {d.enum}", d.pos)
            width = enum.width
        else:
            v = evaluate(d.width, env)
            if not isinstance(v, Nat):
                raise KindError(f"width of bus {d.name} must be a natural", d.pos)
            width = v.value
            if width < 1:
                raise ElaborationError(f"bus {d.name} must have width at least 1", d.pos)
        env.declare(d.name, Bus(d.name, width), d.pos)
        atoms.extend(f"{d.name}[{i}]" for i in range(width))
    return atoms


def elaborate(spec, overrides=None, depth_limit=DEFAULT_DEPTH_LIMIT):
    return _with_deep_stack(lambda: _elaborate(spec, overrides, depth_limit))


def _elaborate(spec, overrides, depth_limit):
    env = bind_globals(spec, overrides)
    env.depth_limit = depth_limit
    inputs = _declare_signals(env, spec.inputs, "input")
    outputs = _declare_signals(env, spec.outputs, "output")
    clash = set(inputs) & set(outputs)
    if clash:
        raise ElaborationError(f"signal {sorted(clash)[0]} is both an input and an output")
    ev = _Evaluator(env)
    sections = {}
    for name, exprs in spec.sections:
        sections[name] = [to_formula(ev.eval(e), getattr(e, "pos", None)) for e in exprs]
    for decls, target in ((spec.inputs, "REQUIRE"), (spec.outputs, "ASSERT")):
        for d in decls:
            if d.shape == "enum":
                c = implicit_enum_constraints(d, env.enums[d.enum])
                if c is not None:
                    sections[target].append(c)
    return BasicSpec(spec.info, tuple(inputs), tuple(outputs),
                     **{_FIELD[s]: tuple(sections[s]) for s in SECTIONS})


def _with_deep_stack(fn):
    """Run fn on a thread with a large stack so deep TLSF recursion fits."""
    result, error = [], []

    def target():
        try:
            result.append(fn())
        except BaseException as exc:  # re-raised on the calling thread
            error.append(exc)

    old_limit = sys.getrecursionlimit()
    old_size = threading.stack_size()
    sys.setrecursionlimit(max(old_limit, 200000))
    threading.stack_size(512 * 1024 * 1024)
    try:
        t = threading.Thread(target=target)
        t.start()
        t.join()
    finally:
        threading.stack_size(old_size)
        sys.setrecursionlimit(old_limit)
    if error:
        raise error[0]
    return result[0]


def formula_from_text(text, signals=None):
    """Parse an LTL expression, treating unknown identifiers as signals.

    Handy for tests: ``formula_from_text("G (r -> F g)")``.
    """
    env = Environment(auto_signals=True)
    for name in signals or ():
        env.globals[name] = Signal(name)
    v = _Evaluator(env).eval(parse_expr(text))
    return to_formula(v)


__all__ = [
    "Nat", "Bool", "SetOf", "Ltl", "Signal", "Bus", "EnumValuation", "EnumDef", "BasicSpec",
    "Environment", "bind_globals", "evaluate", "eval_range", "apply_function",
    "expand_big_op", "desugar", "expand_enum_comparison", "implicit_enum_constraints",
    "elaborate", "formula_from_text", "to_formula", "match_pattern", "TlsfError",
]
