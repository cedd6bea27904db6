"""Schema patterns as written in the schema language (before compilation)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


class SchemaError(ValueError):
    pass


class SchemaSyntaxError(SchemaError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class DanglingDefinitionError(SchemaError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"reference to undefined pattern {name!r}")


class Pattern:
    __slots__ = ()


@dataclass(frozen=True)
class Empty(Pattern):
    pass


@dataclass(frozen=True)
class Text(Pattern):
    pass


@dataclass(frozen=True)
class Element(Pattern):
    name: str
    content: Pattern


@dataclass(frozen=True)
class Attribute(Pattern):
    name: str
    allowed: Optional[frozenset] = None  # None: any value


@dataclass(frozen=True)
class ValueText(Pattern):
    allowed: frozenset


@dataclass(frozen=True)
class Seq(Pattern):
    items: tuple


@dataclass(frozen=True)
class Choice(Pattern):
    items: tuple


@dataclass(frozen=True)
class Interleave(Pattern):
    items: tuple


@dataclass(frozen=True)
class Opt(Pattern):
    item: Pattern


@dataclass(frozen=True)
class ZeroOrMore(Pattern):
    item: Pattern


@dataclass(frozen=True)
class OneOrMore(Pattern):
    item: Pattern


@dataclass(frozen=True)
class Ref(Pattern):
    name: str


@dataclass(frozen=True)
class Pair(Pattern):
    """An attribute whose value selects the permitted text content."""

    attribute: Attribute
    text: ValueText


@dataclass(frozen=True)
class Schema:
    definitions: dict
    start: str
    source: str = field(default="", compare=False)

    def __post_init__(self):
        if self.start not in self.definitions:
            raise DanglingDefinitionError(self.start)
        for body in self.definitions.values():
            for ref in _refs(body):
                if ref not in self.definitions:
                    raise DanglingDefinitionError(ref)
        for body in self.definitions.values():
            _check_interleave(body, self.definitions)

    def __hash__(self):
        return id(self)


def _children(p: Pattern) -> tuple:
    if isinstance(p, (Seq, Choice, Interleave)):
        return p.items
    if isinstance(p, (Opt, ZeroOrMore, OneOrMore)):
        return (p.item,)
    if isinstance(p, Element):
        return (p.content,)
    if isinstance(p, Pair):
        return (p.attribute, p.text)
    return ()


def _refs(p: Pattern):
    if isinstance(p, Ref):
        yield p.name
    for c in _children(p):
        yield from _refs(c)


def _has_text(p: Pattern, defs: dict, seen: frozenset = frozenset()) -> bool:
    # looks through refs but not into element bodies
    if isinstance(p, (Text, ValueText)):
        return True
    if isinstance(p, Element):
        return False
    if isinstance(p, Ref):
        if p.name in seen:
            return False
        return _has_text(defs[p.name], defs, seen | {p.name})
    return any(_has_text(c, defs, seen) for c in _children(p))


def _check_interleave(p: Pattern, defs: dict):
    if isinstance(p, Interleave):
        for branch in p.items:
            if _has_text(branch, defs):
                raise SchemaError("text inside an interleave branch is not supported")
    for c in _children(p):
        _check_interleave(c, defs)
