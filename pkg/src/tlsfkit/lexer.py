"""Tokenizer for full and basic TLSF."""

from dataclasses import dataclass

from .errors import LexError

SECTION_KEYWORDS = frozenset({
    "INFO", "TITLE", "DESCRIPTION", "SEMANTICS", "TARGET", "TAGS",
    "GLOBAL", "PARAMETERS", "DEFINITIONS", "MAIN", "INPUTS", "OUTPUTS",
    "INITIALLY", "PRESET", "REQUIRE", "ASSERT", "ASSUME", "GUARANTEE",
    "INVARIANTS", "ASSUMPTIONS", "GUARANTEES",
})

WORD_OPERATORS = frozenset({
    "SUM", "PROD", "SIZE", "MIN", "MAX", "SIZEOF", "MUL", "DIV", "MOD",
    "PLUS", "MINUS", "CAP", "CUP", "SETMINUS", "EQ", "NEQ", "LE", "LEQ",
    "GE", "GEQ", "IN", "ELEM", "NOT", "AND", "FORALL", "OR", "EXISTS",
    "IMPLIES", "EQUIV", "X", "F", "G", "U", "R", "W",
})

KEYWORDS = SECTION_KEYWORDS | WORD_OPERATORS | {"enum", "otherwise", "true", "false"}

# longest spellings first so that greedy matching works
OPERATORS = sorted([
    "<->", "(\\)", "(+)", "(*)", "(-)", "->", "<-", "<=", ">=", "==", "!=",
    "/=", "&&", "||", "..", "+", "-", "*", "/", "%", "<", ">", "!", "~",
    "|", ":", "=",
], key=len, reverse=True)

PUNCTUATION = set("{}()[];,")

MAX_NATURAL = 2 ** 63 - 1


@dataclass(frozen=True)
class Token:
    kind: str  # keyword | ident | number | string | op | punct
    text: str
    line: int
    col: int
    offset: int = 0

    @property
    def pos(self):
        return (self.line, self.col)

    @property
    def end(self):
        return self.offset + len(self.text) + (2 if self.kind == "string" else 0)

    def __repr__(self):
        return f"Token({self.kind} {self.text!r} @{self.line}:{self.col})"


def _ident_start(c):
    return c.isascii() and (c.isalpha() or c in "_@")


def _ident_char(c):
    return c.isascii() and (c.isalnum() or c in "_'@")


def tokenize(text):
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)

    def advance(k):
        nonlocal i, line, col
        for _ in range(k):
            if text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        c = text[i]
        if c in " \t\r\n\f\v":
            advance(1)
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                advance(1)
            continue
        if text.startswith("/*", i):
            start = (line, col)
            depth = 0
            while True:
                if i >= n:
                    raise LexError("unterminated block comment", start)
                if text.startswith("/*", i):
                    depth += 1
                    advance(2)
                elif text.startswith("*/", i):
                    depth -= 1
                    advance(2)
                    if depth == 0:
                        break
                else:
                    advance(1)
            continue
        start, offset = (line, col), i
        if c == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise LexError("unterminated string literal", start)
            tokens.append(Token("string", text[i + 1:j], *start, offset))
            advance(j + 1 - i)
            continue
        if c.isdigit() and c.isascii():
            j = i
            while j < n and text[j].isdigit() and text[j].isascii():
                j += 1
            word = text[i:j]
            if int(word) > MAX_NATURAL:
                raise LexError(f"number {word} exceeds 2^63-1", start)
            tokens.append(Token("number", word, *start, offset))
            advance(j - i)
            continue
        if _ident_start(c):
            j = i + 1
            while j < n and _ident_char(text[j]):
                j += 1
            word = text[i:j]
            kind = "keyword" if word in KEYWORDS else "ident"
            tokens.append(Token(kind, word, *start, offset))
            advance(j - i)
            continue
        if c == "'":
            raise LexError("identifiers must not start with a prime", start)
        for op in OPERATORS:
            if text.startswith(op, i):
                tokens.append(Token("op", op, *start, offset))
                advance(len(op))
                break
        else:
            if c in PUNCTUATION:
                tokens.append(Token("punct", c, *start, offset))
                advance(1)
            else:
                raise LexError(f"unexpected character {c!r}", start)
    return tokens


def detokenize(tokens):
    parts = []
    for t in tokens:
        parts.append(f'"{t.text}"' if t.kind == "string" else t.text)
    return " ".join(parts)
