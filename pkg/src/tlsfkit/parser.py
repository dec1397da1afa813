"""Precedence-climbing parser for full TLSF.

Levels follow the reference table: lower numbers bind tighter.  Word-form
operators are mapped onto their symbolic spelling so that both spellings
produce identical trees.
"""

from .errors import ParseError
from .lexer import Token, tokenize
from .syntax_tree import (
    BigOp, Binary, Binder, Binding, BoolLit, Call, EnumDecl, FunctionDef, Guard, Ident,
    Index, Info, Match, Num, Otherwise, RangeBinder, SECTION_ALIASES, SECTIONS, Semantics,
    SetDisplay, SetRange, SignalDecl, SpecDocument, Sugar, Unary,
)

BINARY = {
    "*": (2, "left"), "/": (3, "right"), "%": (3, "right"),
    "+": (4, "left"), "-": (4, "left"),
    "(\\)": (6, "right"), "(*)": (7, "left"), "(+)": (8, "left"),
    "==": (9, "left"), "!=": (9, "left"), "<": (9, "left"), "<=": (9, "left"),
    ">": (9, "left"), ">=": (9, "left"),
    "IN": (10, "left"),
    "&&": (12, "left"), "||": (13, "left"),
    "->": (14, "right"), "<->": (14, "right"),
    "W": (15, "right"), "U": (16, "right"), "R": (17, "left"),
    "~": (18, "left"), ":": (19, "left"),
}

BINARY_ALIASES = {
    "MUL": "*", "DIV": "/", "MOD": "%", "PLUS": "+", "MINUS": "-",
    "SETMINUS": "(\\)", "(-)": "(\\)", "CAP": "(*)", "CUP": "(+)",
    "EQ": "==", "NEQ": "!=", "/=": "!=", "LE": "<", "LEQ": "<=", "GE": ">", "GEQ": ">=",
    "ELEM": "IN", "<-": "IN", "AND": "&&", "OR": "||", "IMPLIES": "->", "EQUIV": "<->",
}

# prefix operators: spelling -> (canonical, level)
UNARY = {
    "!": ("!", 11), "NOT": ("!", 11),
    "X": ("X", 11), "F": ("F", 11), "G": ("G", 11),
    "SIZEOF": ("SIZEOF", 1), "MIN": ("MIN", 1), "MAX": ("MAX", 1), "SIZE": ("SIZE", 1),
}

# big operators, only when followed by '['
BIG = {
    "+": ("+", 1), "SUM": ("+", 1), "*": ("*", 1), "PROD": ("*", 1),
    "(+)": ("(+)", 5), "CUP": ("(+)", 5), "(*)": ("(*)", 5), "CAP": ("(*)", 5),
    "&&": ("&&", 11), "AND": ("&&", 11), "FORALL": ("&&", 11),
    "||": ("||", 11), "OR": ("||", 11), "EXISTS": ("||", 11),
}

TOP = 17           # everything except the guard-only operators
FUNCTION_TOP = 19  # function bodies additionally admit ~ and :


def _canonical(tok):
    if tok.kind in ("op", "keyword"):
        return BINARY_ALIASES.get(tok.text, tok.text)
    return None


class Parser:
    def __init__(self, tokens):
        self.tokens = list(tokens)
        self.i = 0
        self.in_function = False
        self.in_sugar = 0

    # token helpers
    def peek(self, k=0):
        j = self.i + k
        return self.tokens[j] if j < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input")
        self.i += 1
        return tok

    def at(self, text, k=0):
        tok = self.peek(k)
        return tok is not None and tok.kind != "string" and tok.text == text

    def accept(self, text):
        if self.at(text):
            return self.next()
        return None

    def expect(self, text, context=None):
        if not self.at(text):
            what = f" in {context}" if context else ""
            self.error(f"expected '{text}'{what}, found {self._describe()}")
        return self.next()

    def expect_ident(self, context):
        tok = self.peek()
        if tok is None or tok.kind != "ident":
            self.error(f"expected identifier in {context}, found {self._describe()}")
        return self.next()

    def _describe(self):
        tok = self.peek()
        if tok is None:
            return "end of input"
        return f"'{tok.text}'"

    def error(self, message, tok=None):
        tok = tok or self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            pos = (last.line, last.col + len(last.text)) if last else (1, 1)
        else:
            pos = tok.pos
        raise ParseError(message, pos)

    # expressions
    def expr(self, level=TOP):
        left = self.prefix()
        while True:
            tok = self.peek()
            if tok is None:
                return left
            op = _canonical(tok)
            if op not in BINARY:
                return left
            lvl, assoc = BINARY[op]
            if lvl > level:
                if op in ("~", ":") and not self.in_function and not self.in_sugar:
                    self.error(f"'{tok.text}' is only allowed inside function definitions")
                return left
            self.next()
            right = self.expr(lvl - 1 if assoc == "left" else lvl)
            if op == ":":
                if isinstance(left, Guard):
                    self.error("nested guard", tok)
                left = Guard(left, right, pos=tok.pos)
            elif op == "~":
                left = Match(left, right, pos=tok.pos)
            else:
                left = Binary(op, left, right, pos=tok.pos)

    def prefix(self):
        tok = self.peek()
        if tok is None:
            self.error("expected expression, found end of input")
        text = tok.text if tok.kind in ("op", "keyword") else None
        if text in BIG and self.at("[", 1):
            return self.big_op(*BIG[text])
        if text in UNARY:
            op, lvl = UNARY[text]
            self.next()
            if op in ("X", "F", "G") and self.at("["):
                return self.sugar(op, tok)
            return Unary(op, self.expr(lvl), pos=tok.pos)
        return self.postfix(self.primary())

    def big_op(self, op, lvl):
        tok = self.next()
        self.expect("[")
        binders = [self.binder()]
        while self.accept(","):
            binders.append(self.binder())
        self.expect("]", "big operator")
        return BigOp(op, tuple(binders), self.expr(lvl), pos=tok.pos)

    def binder(self):
        tok = self.peek()
        e = self.expr(10)
        if isinstance(e, Binary) and e.op == "IN" and isinstance(e.left, Ident):
            return Binder(e.left.name, e.right, pos=e.left.pos)
        if (isinstance(e, Binary) and e.op in ("<", "<=") and isinstance(e.left, Binary)
                and e.left.op in ("<", "<=") and isinstance(e.left.right, Ident)):
            return RangeBinder(e.left.left, e.left.op, e.left.right.name, e.op, e.right,
                               pos=e.left.right.pos)
        self.error("malformed binder: expected 'id IN set' or 'n <= id < m'", tok)

    def sugar(self, op, tok):
        self.expect("[")
        self.in_sugar += 1
        lo = self.expr()
        self.in_sugar -= 1
        hi = None
        if op != "X":
            self.expect(":", f"{op}[n:m]")
            hi = self.expr()
        self.expect("]", f"{op}[...]")
        return Sugar(op, lo, hi, self.expr(11), pos=tok.pos)

    def primary(self):
        tok = self.next()
        if tok.kind == "number":
            return Num(int(tok.text), pos=tok.pos)
        if tok.kind == "keyword" and tok.text in ("true", "false"):
            return BoolLit(tok.text == "true", pos=tok.pos)
        if tok.kind == "keyword" and tok.text == "otherwise":
            if not self.in_function:
                self.error("'otherwise' is only allowed inside function definitions", tok)
            return Otherwise(pos=tok.pos)
        if tok.kind == "ident":
            if self.at("("):
                self.next()
                args = []
                if not self.at(")"):
                    args.append(self.expr())
                    while self.accept(","):
                        args.append(self.expr())
                self.expect(")", f"call of {tok.text}")
                return Call(tok.text, tuple(args), pos=tok.pos)
            return Ident(tok.text, pos=tok.pos)
        if tok.text == "(" and tok.kind == "punct":
            e = self.expr()
            self.expect(")")
            return e
        if tok.text == "{" and tok.kind == "punct":
            return self.set_expr(tok)
        if tok.text == "|" and tok.kind == "op":
            e = self.expr()
            self.expect("|", "size expression")
            return Unary("SIZE", e, pos=tok.pos)
        self.error(f"unexpected {tok.text!r}", tok)

    def set_expr(self, tok):
        if self.accept("}"):
            return SetDisplay((), pos=tok.pos)
        items = [self.expr()]
        if self.accept(","):
            items.append(self.expr())
            if self.accept(".."):
                last = self.expr()
                self.expect("}", "range expression")
                return SetRange(items[0], items[1], last, pos=tok.pos)
            while self.accept(","):
                items.append(self.expr())
        self.expect("}", "set expression")
        return SetDisplay(tuple(items), pos=tok.pos)

    def postfix(self, e):
        while self.at("[") and self.peek().kind == "punct":
            tok = self.next()
            idx = self.expr()
            self.expect("]", "bus index")
            e = Index(e, idx, pos=tok.pos)
        return e

    # specification layout
    def terminator(self, context):
        """A ';' ends an element; it may be omitted right before the closing brace."""
        if self.accept(";"):
            return
        if self.at("}"):
            return
        self.error(f"expected ';' in {context}, found {self._describe()}")

    def block(self, name):
        tok = self.next()
        if tok.text != name:
            self.error(f"expected section {name}", tok)
        self.expect("{", name)
        return tok

    def spec(self):
        info = self.info()
        parameters, definitions = (), ()
        if self.at("GLOBAL"):
            parameters, definitions = self.global_section()
        inputs, outputs, sections = self.main()
        if self.peek() is not None:
            self.error(f"stray tokens after MAIN: {self._describe()}")
        return SpecDocument(info, parameters, definitions, inputs, outputs, sections)

    def info(self):
        self.block("INFO")
        fields = {}
        while not self.accept("}"):
            tok = self.next()
            name = tok.text
            if name not in ("TITLE", "DESCRIPTION", "SEMANTICS", "TARGET", "TAGS"):
                self.error(f"unknown INFO field {name!r}", tok)
            if name in fields:
                self.error(f"duplicate INFO field {name}", tok)
            self.expect(":", f"INFO field {name}")
            if name in ("TITLE", "DESCRIPTION"):
                s = self.next()
                if s.kind != "string":
                    self.error(f"INFO field {name} expects a string literal", s)
                fields[name] = s.text
            elif name == "SEMANTICS":
                model = self.model("SEMANTICS")
                strict = False
                if self.accept(","):
                    s = self.next()
                    if s.text != "Strict":
                        self.error("expected 'Strict'", s)
                    strict = True
                fields[name] = Semantics(model, strict)
            elif name == "TARGET":
                fields[name] = self.model("TARGET")
            else:
                tags = [self.tag()]
                while self.accept(","):
                    tags.append(self.tag())
                fields[name] = tuple(tags)
            self.accept(";")
        for name in ("TITLE", "DESCRIPTION", "SEMANTICS", "TARGET"):
            if name not in fields:
                self.error(f"INFO section lacks the {name} field", self.tokens[self.i - 1])
        return Info(fields["TITLE"], fields["DESCRIPTION"], fields["SEMANTICS"],
                    fields["TARGET"], fields.get("TAGS", ()))

    def model(self, field):
        tok = self.next()
        if tok.text not in ("Mealy", "Moore") or tok.kind != "ident":
            self.error(f"{field} expects Mealy or Moore", tok)
        return tok.text

    def tag(self):
        tok = self.next()
        if tok.kind not in ("string", "ident"):
            self.error("expected a tag", tok)
        return tok.text

    def global_section(self):
        self.block("GLOBAL")
        parameters, definitions = [], []
        seen = set()
        while not self.accept("}"):
            tok = self.peek()
            if tok is None or tok.text not in ("PARAMETERS", "DEFINITIONS"):
                self.error(f"unexpected {self._describe()} in GLOBAL")
            if tok.text in seen:
                self.error(f"duplicate section {tok.text}", tok)
            seen.add(tok.text)
            self.block(tok.text)
            if tok.text == "PARAMETERS":
                while not self.accept("}"):
                    name = self.expect_ident("PARAMETERS")
                    self.expect("=", "parameter binding")
                    parameters.append(Binding(name.text, self.expr(), pos=name.pos))
                    self.terminator("PARAMETERS")
            else:
                while not self.accept("}"):
                    definitions.append(self.definition())
        return tuple(parameters), tuple(definitions)

    def definition(self):
        tok = self.peek()
        if tok is not None and tok.text == "enum" and tok.kind == "keyword":
            return self.enum_decl()
        name = self.expect_ident("DEFINITIONS")
        if self.accept("("):
            params = [self.expect_ident("parameter list").text]
            while self.accept(","):
                params.append(self.expect_ident("parameter list").text)
            self.expect(")", "parameter list")
            self.expect("=", f"definition of {name.text}")
            self.in_function = True
            try:
                bodies = [self.expr(FUNCTION_TOP)]
                while not (self.at(";") or self.at("}")):
                    bodies.append(self.expr(FUNCTION_TOP))
            finally:
                self.in_function = False
            self.terminator(f"definition of {name.text}")
            return FunctionDef(name.text, tuple(params), tuple(bodies), pos=name.pos)
        self.expect("=", f"definition of {name.text}")
        e = self.expr()
        self.terminator(f"definition of {name.text}")
        return Binding(name.text, e, pos=name.pos)

    def enum_decl(self):
        kw = self.next()
        name = self.expect_ident("enum declaration")
        self.expect("=", "enum declaration")
        entries = []
        while self.peek() is not None and self.peek().kind == "ident" and self.at(":", 1):
            entry = self.next()
            self.next()
            patterns = [self.pattern()]
            while self.accept(","):
                patterns.append(self.pattern())
            entries.append((entry.text, tuple(patterns)))
        if not entries:
            self.error(f"enum {name.text} declares no entries")
        self.terminator(f"enum {name.text}")
        return EnumDecl(name.text, tuple(entries), pos=kw.pos)

    def pattern(self):
        first = self.peek()
        if first is None:
            self.error("expected a valuation pattern")
        text, end = "", first.offset
        while True:
            tok = self.peek()
            if tok is None or tok.offset != end or not (
                    tok.kind == "number" or (tok.kind == "op" and tok.text == "*")):
                break
            self.next()
            text += tok.text
            end = tok.end
        if not text or set(text) - set("01*"):
            self.error("valuation patterns consist of 0, 1 and *", first)
        return text

    def main(self):
        self.block("MAIN")
        found = {}
        while not self.accept("}"):
            tok = self.next()
            name = SECTION_ALIASES.get(tok.text, tok.text)
            if name not in SECTIONS and name not in ("INPUTS", "OUTPUTS"):
                self.error(f"unexpected {tok.text!r} in MAIN", tok)
            if name in found:
                self.error(f"duplicate section {name}", tok)
            self.expect("{", name)
            if name in ("INPUTS", "OUTPUTS"):
                found[name] = self.signals(name)
            else:
                items = []
                while not self.accept("}"):
                    items.append(self.expr())
                    self.terminator(name)
                found[name] = tuple(items)
        for name in ("INPUTS", "OUTPUTS"):
            if name not in found:
                self.error(f"MAIN section lacks the mandatory {name} section",
                           self.tokens[self.i - 1])
        sections = tuple((s, found.get(s, ())) for s in SECTIONS)
        return found["INPUTS"], found["OUTPUTS"], sections

    def signals(self, section):
        decls = []
        direction = section
        while not self.accept("}"):
            first = self.expect_ident(direction)
            if self.peek() is not None and self.peek().kind == "ident":
                name = self.next()
                decls.append(SignalDecl(name.text, "enum", enum=first.text, pos=name.pos))
            elif self.accept("["):
                width = self.expr()
                self.expect("]", "bus declaration")
                decls.append(SignalDecl(first.text, "bus", width=width, pos=first.pos))
            else:
                decls.append(SignalDecl(first.text, "single", pos=first.pos))
            self.terminator(direction)
        return tuple(decls)


def _tokens(source):
    return tokenize(source) if isinstance(source, str) else list(source)


def parse_spec(source):
    return Parser(_tokens(source)).spec()


def parse_expr(source, level=TOP, in_function=False):
    p = Parser(_tokens(source))
    p.in_function = in_function
    e = p.expr(level)
    if p.peek() is not None:
        p.error(f"unexpected {p._describe()} after expression")
    return e


__all__ = ["Parser", "parse_spec", "parse_expr", "BINARY", "UNARY", "BIG", "Token"]
