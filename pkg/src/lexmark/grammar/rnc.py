"""Parser for the compact schema language subset.

Supported: ``name = pattern`` definitions, ``element N { ... }``,
``attribute N { 'v' | 'w' }`` / ``attribute N { text }``, quoted value
literals, ``text``, ``empty``, ``,`` ``&`` ``|`` ``?`` ``*`` ``+``,
parentheses and ``#`` comments.  Operators of different kinds may not be
mixed at one nesting level.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .patterns import (
    Attribute,
    Choice,
    Element,
    Empty,
    Interleave,
    OneOrMore,
    Opt,
    Pair,
    Pattern,
    Ref,
    Schema,
    SchemaSyntaxError,
    Seq,
    Text,
    ValueText,
    ZeroOrMore,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<literal>'[^'\n]*'|"[^"\n]*")
  | (?P<ident>[A-Za-z_][\w.\-]*(?::[A-Za-z_][\w.\-]*)?)
  | (?P<punct>[=,&|?*+{}()])
    """,
    re.VERBOSE,
)

KEYWORDS = {"element", "attribute", "text", "empty"}


class Token(NamedTuple):
    kind: str
    value: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SchemaSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        newlines = m.group().count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + m.group().rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset=1) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return SchemaSyntaxError(message, tok.line, tok.column)

    def expect(self, value) -> Token:
        if self.tok.value != value or self.tok.kind not in ("punct", "ident"):
            raise self.error(f"expected {value!r}, found {self.tok.value or 'end of input'!r}")
        tok = self.tok
        self.i += 1
        return tok

    def schema(self) -> Schema:
        definitions: dict[str, Pattern] = {}
        first = None
        while self.tok.kind != "eof":
            tok = self.tok
            if tok.kind != "ident":
                raise self.error(f"expected a definition name, found {tok.value!r}")
            self.i += 1
            self.expect("=")
            if tok.value in definitions:
                raise self.error(f"duplicate definition {tok.value!r}", tok)
            definitions[tok.value] = self.pattern()
            first = first or tok.value
        if first is None:
            raise self.error("empty schema")
        start = "start" if "start" in definitions else first
        return Schema(definitions, start)

    def pattern(self) -> Pattern:
        items = [self.particle()]
        op = None
        while self.tok.kind == "punct" and self.tok.value in ",&|":
            if op is not None and self.tok.value != op:
                raise self.error(f"cannot mix {op!r} and {self.tok.value!r} without parentheses")
            op = self.tok.value
            self.i += 1
            items.append(self.particle())
        if op is None:
            return items[0]
        if op == "|":
            return _choice(items)
        if op == "&":
            return Interleave(tuple(items))
        return _seq(items)

    def particle(self) -> Pattern:
        p = self.primary()
        if self.tok.kind == "punct" and self.tok.value in "?*+":
            op = self.tok.value
            self.i += 1
            p = {"?": Opt, "*": ZeroOrMore, "+": OneOrMore}[op](p)
        return p

    def name(self) -> str:
        tok = self.tok
        if tok.kind != "ident":
            raise self.error(f"expected a name, found {tok.value!r}")
        self.i += 1
        return tok.value

    def primary(self) -> Pattern:
        tok = self.tok
        if tok.kind == "literal":
            self.i += 1
            return ValueText(frozenset({tok.value[1:-1]}))
        if tok.kind == "punct" and tok.value == "(":
            self.i += 1
            p = self.pattern()
            self.expect(")")
            return p
        if tok.kind != "ident":
            raise self.error(f"unexpected {tok.value or 'end of input'!r}")
        if tok.value == "element" and self.peek().kind == "ident":
            self.i += 1
            name = self.name().split(":")[-1]
            self.expect("{")
            content = self.pattern()
            self.expect("}")
            return Element(name, content)
        if tok.value == "attribute" and self.peek().kind == "ident":
            self.i += 1
            name = self.name()
            if ":" in name and not name.startswith("xml:"):
                raise self.error("only the xml: prefix is supported on attribute names", tok)
            self.expect("{")
            content_tok = self.tok
            content = self.pattern()
            self.expect("}")
            if isinstance(content, Text):
                return Attribute(name, None)
            if isinstance(content, ValueText):
                return Attribute(name, content.allowed)
            raise self.error("attribute content must be text or value literals", content_tok)
        if tok.value == "text":
            self.i += 1
            return Text()
        if tok.value == "empty":
            self.i += 1
            return Empty()
        if self.peek().kind == "punct" and self.peek().value == "=":
            raise self.error(f"unexpected definition {tok.value!r}; missing operator?")
        self.i += 1
        return Ref(tok.value)


def _choice(items: list) -> Pattern:
    if all(isinstance(p, ValueText) for p in items):
        return ValueText(frozenset().union(*(p.allowed for p in items)))
    return Choice(tuple(items))


def _seq(items: list) -> Pattern:
    if len(items) == 2:
        a, b = items
        if isinstance(a, Attribute) and isinstance(b, ValueText):
            return Pair(a, b)
        if isinstance(a, ValueText) and isinstance(b, Attribute):
            return Pair(b, a)
    return Seq(tuple(items))


def load_schema(text: str) -> Schema:
    """Parse schema text into a :class:`Schema` with all references checked."""
    schema = _Parser(text).schema()
    object.__setattr__(schema, "source", text)
    return schema


def load_schema_file(path) -> Schema:
    with open(path, encoding="utf-8") as fh:
        return load_schema(fh.read())
