"""Parser for basic TLSF: no GLOBAL section and fully parenthesized LTL.

Every subformula, atoms included, sits in its own pair of parentheses, so
``((a) && (b))`` is accepted while ``a && b`` is not.  Buses may be declared
with a literal width and referenced with literal indices; this keeps the
output of the basic printer valid input for both parsers.
"""

from .errors import ParseError
from .lexer import tokenize
from .ltl import BINARY_OPS, atom, const, make
from .parser import BINARY_ALIASES, Parser
from .syntax_tree import FormulaLit, Num, SignalDecl, SpecDocument

_UNARY = {"!": "!", "NOT": "!", "X": "X", "F": "F", "G": "G"}
_BINARY = set(BINARY_OPS) | {k for k, v in BINARY_ALIASES.items() if v in BINARY_OPS}


class BasicParser(Parser):
    def spec(self):
        info = self.info()
        if self.at("GLOBAL"):
            self.error("GLOBAL sections are not allowed in basic TLSF")
        inputs, outputs, sections = self.main()
        if self.peek() is not None:
            self.error(f"stray tokens after MAIN: {self._describe()}")
        return SpecDocument(info, (), (), inputs, outputs, sections, basic=True)

    def signals(self, section):
        decls = []
        while not self.accept("}"):
            name = self.expect_ident(section)
            if self.peek() is not None and self.peek().kind == "ident":
                self.error("enum-typed signals are not allowed in basic TLSF", name)
            if self.accept("["):
                width = self.next()
                if width.kind != "number":
                    self.error("bus widths in basic TLSF must be number literals", width)
                if int(width.text) < 1:
                    self.error(f"bus {name.text} must have width at least 1", width)
                self.expect("]", "bus declaration")
                decls.append(SignalDecl(name.text, "bus", width=Num(int(width.text)),
                                        pos=name.pos))
            else:
                decls.append(SignalDecl(name.text, "single", pos=name.pos))
            self.terminator(section)
        return tuple(decls)

    def expr(self, level=None):
        tok = self.peek()
        if tok is not None and not self.at("("):
            self.error("basic TLSF requires fully parenthesized expressions")
        return FormulaLit(self.wrapped(), pos=tok.pos if tok else None)

    def wrapped(self):
        if not self.at("("):
            self.error(f"basic TLSF requires fully parenthesized expressions, found "
                       f"{self._describe()}")
        self.next()
        f = self.inner()
        if not self.at(")"):
            self.error(f"basic TLSF requires fully parenthesized expressions, found "
                       f"{self._describe()}")
        self.next()
        return f

    def inner(self):
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input")
        if self.at("("):
            left = self.wrapped()
            op_tok = self.peek()
            if op_tok is None or op_tok.text == ")":
                return left
            op = BINARY_ALIASES.get(op_tok.text, op_tok.text)
            if op_tok.kind == "string" or op_tok.text not in _BINARY:
                self._reject(op_tok)
            self.next()
            if self.at("["):
                self.error("big operators are not allowed in basic TLSF")
            return make(op, left, self.wrapped())
        if tok.kind in ("op", "keyword") and tok.text in _UNARY:
            self.next()
            if self.at("["):
                self.error("syntactic sugar is not allowed in basic TLSF")
            return make(_UNARY[tok.text], self.wrapped())
        if tok.text in ("true", "false") and tok.kind == "keyword":
            self.next()
            return const(tok.text == "true")
        if tok.kind == "ident":
            self.next()
            if self.at("("):
                self.error("function applications are not allowed in basic TLSF")
            if self.accept("["):
                idx = self.next()
                if idx.kind != "number":
                    self.error("bus indices in basic TLSF must be number literals", idx)
                self.expect("]", "bus index")
                return atom(f"{tok.text}[{int(idx.text)}]")
            return atom(tok.text)
        self._reject(tok)

    def _reject(self, tok):
        if tok.text == "{":
            self.error("sets are not allowed in basic TLSF", tok)
        if tok.kind == "number":
            self.error("numbers are not allowed in basic TLSF formulas", tok)
        if tok.text in _BINARY:
            self.error("basic TLSF requires fully parenthesized expressions", tok)
        self.error(f"{tok.text!r} is not part of the basic LTL grammar", tok)


def parse_basic_spec(text):
    tokens = tokenize(text) if isinstance(text, str) else list(text)
    doc = BasicParser(tokens).spec()
    declared = set()
    for d in doc.inputs + doc.outputs:
        if d.shape == "bus":
            declared.update(f"{d.name}[{i}]" for i in range(d.width.value))
        else:
            declared.add(d.name)
    for _, exprs in doc.sections:
        for e in exprs:
            missing = e.formula.atoms() - declared
            if missing:
                raise ParseError(f"undeclared signal {sorted(missing)[0]}", e.pos)
    return doc
