"""Line-oriented rule language.

One rule per line::

    match NAME[attr=val]* (/ CHILD[attr=val]*)? (when children>=N)? => ACTION (else ACTION)? (priority N)?

Actions are ``recurse``, ``drop`` or ``emit NAME[attr=value|attr=@source]* { ACTION* }``;
an ``emit`` without a body produces an empty element.  ``#`` starts a comment.
"""

from __future__ import annotations

import re

from .engine import ChooseByGuard, CopyAttr, Drop, Emit, MatchPattern, Recurse, Ruleset, TemplateRule

_TOKEN = re.compile(
    r"""\s*(?:
        (?P<string>"[^"]*"|'[^']*')
      | (?P<op>=>|>=|[\[\]{}=/;@])
      | (?P<word>[A-Za-z_][\w.:\-]*|\d+)
    )""",
    re.VERBOSE,
)


class RuleSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


def _tokens(text: str, line: int) -> list[str]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise RuleSyntaxError(f"unexpected input {text[pos:].strip()[:20]!r}", line)
        out.append(m.group(m.lastgroup))
        pos = m.end()
    return out


class _Line:
    def __init__(self, tokens: list[str], line: int):
        self.toks = tokens
        self.i = 0
        self.line = line

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            want = f"{expected!r}" if expected else "more input"
            raise RuleSyntaxError(f"expected {want}, found {tok or 'end of line'!r}", self.line)
        self.i += 1
        return tok

    def word(self):
        tok = self.take()
        if not re.match(r"[A-Za-z_]", tok):
            raise RuleSyntaxError(f"expected a name, found {tok!r}", self.line)
        return tok

    def value(self):
        tok = self.take()
        if tok[0] in "\"'":
            return tok[1:-1]
        return tok

    def predicates(self):
        preds = []
        while self.peek() == "[":
            self.take("[")
            name = self.word()
            self.take("=")
            preds.append((name, self.value()))
            self.take("]")
        return tuple(preds)

    def step(self):
        name = self.word()
        return MatchPattern(name, self.predicates())

    def emit_attrs(self):
        attrs = []
        while self.peek() == "[":
            self.take("[")
            name = self.word()
            self.take("=")
            if self.peek() == "@":
                self.take("@")
                attrs.append((name, CopyAttr(self.word())))
            else:
                attrs.append((name, self.value()))
            self.take("]")
        return tuple(attrs)

    def action(self):
        tok = self.take()
        if tok == "recurse":
            return Recurse()
        if tok == "drop":
            return Drop()
        if tok == "emit":
            name = self.word()
            attrs = self.emit_attrs()
            body = ()
            if self.peek() == "{":
                self.take("{")
                items = []
                while self.peek() != "}":
                    if self.peek() == ";":
                        self.take(";")
                        continue
                    items.append(self.action())
                self.take("}")
                body = tuple(items)
            return Emit(name, attrs, body)
        raise RuleSyntaxError(f"unknown action {tok!r}", self.line)


def compile_rule(text: str, line: int = 1) -> TemplateRule:
    p = _Line(_tokens(text, line), line)
    p.take("match")
    pattern = p.step()
    if p.peek() == "/":
        p.take("/")
        child = p.step()
        pattern = MatchPattern(child.element, child.attr_predicates, pattern)
    guard = None
    if p.peek() == "when":
        p.take("when")
        p.take("children")
        p.take(">=")
        n = p.take()
        if not n.isdigit() or int(n) < 1:
            raise RuleSyntaxError(f"guard needs a positive integer, found {n!r}", line)
        guard = int(n)
        pattern = MatchPattern(pattern.element, pattern.attr_predicates, pattern.parent, guard)
    p.take("=>")
    then = (p.action(),)
    constructor = then
    if p.peek() == "else":
        if guard is None:
            raise RuleSyntaxError("'else' needs a 'when' guard", line)
        p.take("else")
        constructor = (ChooseByGuard(guard, then, (p.action(),)),)
    priority = None
    if p.peek() == "priority":
        p.take("priority")
        n = p.take()
        if not n.lstrip("-").isdigit():
            raise RuleSyntaxError(f"priority must be an integer, found {n!r}", line)
        priority = int(n)
    if p.peek() is not None:
        raise RuleSyntaxError(f"trailing input {p.peek()!r}", line)
    return TemplateRule(pattern, constructor, priority)


def compile_ruleset(dsl: str, name: str = "") -> Ruleset:
    """Compile rule text into a :class:`Ruleset`; rule order is kept for tie-breaking."""
    rules = []
    for lineno, raw in enumerate(dsl.splitlines(), 1):
        text = raw.split("#", 1)[0].strip()
        if text:
            rules.append(compile_rule(text, lineno))
    return Ruleset(tuple(rules), name)
