"""Surface syntax tree of full TLSF.

Positions are carried along for diagnostics but never take part in equality,
so trees parsed from different spellings of the same expression compare equal.
"""

from dataclasses import dataclass, field

SECTIONS = ("INITIALLY", "PRESET", "REQUIRE", "ASSERT", "ASSUME", "GUARANTEE")
SECTION_ALIASES = {"INVARIANTS": "ASSERT", "ASSUMPTIONS": "ASSUME", "GUARANTEES": "GUARANTEE"}


def _pos():
    return field(default=None, compare=False, repr=False)


class Expr:
    pass


@dataclass(frozen=True)
class Num(Expr):
    value: int
    pos: tuple = _pos()


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool
    pos: tuple = _pos()


@dataclass(frozen=True)
class Ident(Expr):
    name: str
    pos: tuple = _pos()


@dataclass(frozen=True)
class Index(Expr):
    base: Expr
    index: Expr
    pos: tuple = _pos()


@dataclass(frozen=True)
class Call(Expr):
    name: str
    args: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class SetDisplay(Expr):
    items: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class SetRange(Expr):
    first: Expr
    second: Expr
    last: Expr
    pos: tuple = _pos()


@dataclass(frozen=True)
class Unary(Expr):
    # ! X F G SIZEOF SIZE MIN MAX
    op: str
    operand: Expr
    pos: tuple = _pos()


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr
    pos: tuple = _pos()


@dataclass(frozen=True)
class Binder:
    """``name IN domain``"""
    name: str
    domain: Expr
    pos: tuple = _pos()


@dataclass(frozen=True)
class RangeBinder:
    """``lo <= name < hi`` and its strict/inclusive variants."""
    lo: Expr
    lo_op: str
    name: str
    hi_op: str
    hi: Expr
    pos: tuple = _pos()


@dataclass(frozen=True)
class BigOp(Expr):
    # + * (+) (*) && ||
    op: str
    binders: tuple
    body: Expr
    pos: tuple = _pos()


@dataclass(frozen=True)
class Sugar(Expr):
    """X[n] body, F[lo:hi] body or G[lo:hi] body (hi is None for X)."""
    op: str
    lo: Expr
    hi: object
    body: Expr
    pos: tuple = _pos()


@dataclass(frozen=True)
class Otherwise(Expr):
    pos: tuple = _pos()


@dataclass(frozen=True)
class Match(Expr):
    subject: Expr
    pattern: Expr
    pos: tuple = _pos()


@dataclass(frozen=True)
class Guard(Expr):
    cond: Expr
    body: Expr
    pos: tuple = _pos()


@dataclass(frozen=True)
class FormulaLit(Expr):
    """An already elaborated formula; produced by the basic-format parser."""
    formula: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class SignalDecl:
    name: str
    shape: str  # single | bus | enum
    width: object = None
    enum: object = None
    pos: tuple = _pos()


@dataclass(frozen=True)
class Binding:
    name: str
    expr: Expr
    pos: tuple = _pos()


@dataclass(frozen=True)
class FunctionDef:
    name: str
    params: tuple
    bodies: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class EnumDecl:
    name: str
    entries: tuple  # ((entry name, (pattern, ...)), ...)
    pos: tuple = _pos()


@dataclass(frozen=True)
class Semantics:
    model: str = "Mealy"
    strict: bool = False

    def __str__(self):
        return self.model + (",Strict" if self.strict else "")


@dataclass(frozen=True)
class Info:
    title: str
    description: str
    semantics: Semantics
    target: str
    tags: tuple = ()


@dataclass(frozen=True)
class SpecDocument:
    info: Info
    parameters: tuple
    definitions: tuple
    inputs: tuple
    outputs: tuple
    sections: tuple  # ((section name, (expr, ...)), ...) in SECTIONS order
    basic: bool = False

    def section(self, name):
        return dict(self.sections)[name]
