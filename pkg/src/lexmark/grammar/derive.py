"""Validation by pattern derivatives.

Schema patterns are compiled into interned nodes; validating an element
repeatedly takes the derivative of the current pattern with respect to
start tags, attributes, text and end tags.  Interleave is handled by the
derivative rule for interleave, so the number of reachable states is bounded
by the combinations of branch states rather than by sibling permutations.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from typing import Optional

from ..xmltree import XML_NS, XmlElement
from . import patterns as ast
from .diagnostics import Diagnostic
from .patterns import SchemaError

EMPTY, NOT_ALLOWED, TEXT, CHOICE, GROUP, INTERLEAVE, ONE_OR_MORE, AFTER, ELEMENT, ATTRIBUTE, VALUE = range(11)


class Node:
    __slots__ = ("tag", "a", "b", "nullable", "__weakref__")

    def __init__(self, tag, a=None, b=None, nullable=False):
        self.tag = tag
        self.a = a
        self.b = b
        self.nullable = nullable

    def __repr__(self):
        names = "EMPTY NOT_ALLOWED TEXT CHOICE GROUP INTERLEAVE ONE_OR_MORE AFTER ELEMENT ATTRIBUTE VALUE".split()
        return f"{names[self.tag]}({self.a!r}, {self.b!r})" if self.tag > TEXT else names[self.tag]


class ElementNode(Node):
    """Element patterns are unique objects so recursive content can be tied later."""

    __slots__ = ()

    def __init__(self, name):
        super().__init__(ELEMENT, name, None, False)

    def __repr__(self):
        return f"element {self.a}"


_EMPTY = Node(EMPTY, nullable=True)
_NOT_ALLOWED = Node(NOT_ALLOWED)
_TEXT = Node(TEXT, nullable=True)

_interned: dict = {}
_intern_lock = threading.Lock()


def _intern(tag, a, b, nullable):
    key = (tag, a, b)
    node = _interned.get(key)
    if node is None:
        with _intern_lock:
            node = _interned.setdefault(key, Node(tag, a, b, nullable))
    return node


def choice(p: Node, q: Node) -> Node:
    if p is _NOT_ALLOWED:
        return q
    if q is _NOT_ALLOWED or p is q:
        return p
    alts = set(p.a) if p.tag == CHOICE else {p}
    alts.update(q.a if q.tag == CHOICE else (q,))
    if len(alts) == 1:
        return next(iter(alts))
    return _intern(CHOICE, frozenset(alts), None, any(x.nullable for x in alts))


def choice_of(nodes) -> Node:
    result = _NOT_ALLOWED
    for n in nodes:
        result = choice(result, n)
    return result


def group(p: Node, q: Node) -> Node:
    if p is _NOT_ALLOWED or q is _NOT_ALLOWED:
        return _NOT_ALLOWED
    if p is _EMPTY:
        return q
    if q is _EMPTY:
        return p
    return _intern(GROUP, p, q, p.nullable and q.nullable)


def interleave(p: Node, q: Node) -> Node:
    if p is _NOT_ALLOWED or q is _NOT_ALLOWED:
        return _NOT_ALLOWED
    if p is _EMPTY:
        return q
    if q is _EMPTY:
        return p
    return _intern(INTERLEAVE, p, q, p.nullable and q.nullable)


def after(p: Node, q: Node) -> Node:
    if p is _NOT_ALLOWED or q is _NOT_ALLOWED:
        return _NOT_ALLOWED
    return _intern(AFTER, p, q, False)


def one_or_more(p: Node) -> Node:
    if p is _NOT_ALLOWED or p is _EMPTY:
        return p
    return _intern(ONE_OR_MORE, p, None, p.nullable)


def attribute(key: tuple, allowed: Optional[frozenset]) -> Node:
    return _intern(ATTRIBUTE, key, allowed, False)


def value(allowed: frozenset) -> Node:
    return _intern(VALUE, allowed, None, False)


def _token(s: str) -> str:
    return " ".join(s.split())


# -- derivatives ------------------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def text_deriv(p: Node, s: str, lenient: bool = False) -> Node:
    t = p.tag
    if t == CHOICE:
        return choice_of(text_deriv(x, s, lenient) for x in p.a)
    if t == INTERLEAVE:
        return choice(interleave(text_deriv(p.a, s, lenient), p.b),
                      interleave(p.a, text_deriv(p.b, s, lenient)))
    if t == GROUP:
        r = group(text_deriv(p.a, s, lenient), p.b)
        return choice(r, text_deriv(p.b, s, lenient)) if p.a.nullable else r
    if t == AFTER:
        return after(text_deriv(p.a, s, lenient), p.b)
    if t == ONE_OR_MORE:
        return group(text_deriv(p.a, s, lenient), choice(p, _EMPTY))
    if t == TEXT:
        return _TEXT
    if t == VALUE:
        return _EMPTY if lenient or _token(s) in p.a else _NOT_ALLOWED
    return _NOT_ALLOWED


def _apply_after(f, p: Node) -> Node:
    if p.tag == AFTER:
        return after(p.a, f(p.b))
    if p.tag == CHOICE:
        return choice_of(_apply_after(f, x) for x in p.a)
    return _NOT_ALLOWED


@lru_cache(maxsize=1 << 16)
def start_tag_open_deriv(p: Node, name: str) -> Node:
    t = p.tag
    if t == CHOICE:
        return choice_of(start_tag_open_deriv(x, name) for x in p.a)
    if t == ELEMENT:
        return after(p.b, _EMPTY) if p.a == name else _NOT_ALLOWED
    if t == INTERLEAVE:
        left = _apply_after(lambda x: interleave(x, p.b), start_tag_open_deriv(p.a, name))
        right = _apply_after(lambda x: interleave(p.a, x), start_tag_open_deriv(p.b, name))
        return choice(left, right)
    if t == ONE_OR_MORE:
        rest = choice(p, _EMPTY)
        return _apply_after(lambda x: group(x, rest), start_tag_open_deriv(p.a, name))
    if t == GROUP:
        x = _apply_after(lambda y: group(y, p.b), start_tag_open_deriv(p.a, name))
        return choice(x, start_tag_open_deriv(p.b, name)) if p.a.nullable else x
    if t == AFTER:
        return _apply_after(lambda y: after(y, p.b), start_tag_open_deriv(p.a, name))
    return _NOT_ALLOWED


@lru_cache(maxsize=1 << 16)
def att_deriv(p: Node, key: tuple, val: str) -> Node:
    t = p.tag
    if t == AFTER:
        return after(att_deriv(p.a, key, val), p.b)
    if t == CHOICE:
        return choice_of(att_deriv(x, key, val) for x in p.a)
    if t == GROUP:
        return choice(group(att_deriv(p.a, key, val), p.b), group(p.a, att_deriv(p.b, key, val)))
    if t == INTERLEAVE:
        return choice(interleave(att_deriv(p.a, key, val), p.b),
                      interleave(p.a, att_deriv(p.b, key, val)))
    if t == ONE_OR_MORE:
        return group(att_deriv(p.a, key, val), choice(p, _EMPTY))
    if t == ATTRIBUTE:
        if p.a == key and (p.b is None or _token(val) in p.b):
            return _EMPTY
        return _NOT_ALLOWED
    return _NOT_ALLOWED


@lru_cache(maxsize=1 << 16)
def start_tag_close_deriv(p: Node, lenient: bool = False) -> Node:
    t = p.tag
    if t == AFTER:
        return after(start_tag_close_deriv(p.a, lenient), p.b)
    if t == CHOICE:
        return choice_of(start_tag_close_deriv(x, lenient) for x in p.a)
    if t == GROUP:
        return group(start_tag_close_deriv(p.a, lenient), start_tag_close_deriv(p.b, lenient))
    if t == INTERLEAVE:
        return interleave(start_tag_close_deriv(p.a, lenient), start_tag_close_deriv(p.b, lenient))
    if t == ONE_OR_MORE:
        return one_or_more(start_tag_close_deriv(p.a, lenient))
    if t == ATTRIBUTE:
        return _EMPTY if lenient else _NOT_ALLOWED
    return p


def end_tag_deriv(p: Node, lenient: bool = False) -> Node:
    if p.tag == CHOICE:
        return choice_of(end_tag_deriv(x, lenient) for x in p.a)
    if p.tag == AFTER:
        return p.b if (lenient or p.a.nullable) else _NOT_ALLOWED
    return _NOT_ALLOWED


# -- hints -----------------------------------------------------------------------------


def expected(p: Node, _seen=None) -> set[str]:
    """Tokens that could come next in ``p``: ``<name>``, ``@attr``, ``'value'``, ``text``."""
    seen = _seen if _seen is not None else set()
    if p in seen:
        return set()
    seen.add(p)
    t = p.tag
    if t == CHOICE:
        return set().union(*(expected(x, seen) for x in p.a))
    if t == GROUP:
        out = expected(p.a, seen)
        return out | expected(p.b, seen) if p.a.nullable else out
    if t == INTERLEAVE:
        return expected(p.a, seen) | expected(p.b, seen)
    if t == ONE_OR_MORE:
        return expected(p.a, seen)
    if t == AFTER:
        out = expected(p.a, seen)
        return out | {"end of element"} if p.a.nullable else out
    if t == ELEMENT:
        return {f"<{p.a}>"}
    if t == ATTRIBUTE:
        name = ("xml:" if p.a[0] == XML_NS else "") + p.a[1]
        if p.b is None:
            return {f"@{name}"}
        return {f"@{name}='{v}'" for v in p.b}
    if t == VALUE:
        return {f"'{v}'" for v in p.a}
    if t == TEXT:
        return {"text"}
    return set()


def _hint(p: Node) -> Optional[str]:
    tokens = expected(p)
    return " | ".join(sorted(tokens)) if tokens else None


# -- compilation --------------------------------------------------------------------------


def _attr_key(name: str) -> tuple:
    if name.startswith("xml:"):
        return (XML_NS, name[4:])
    return ("", name)


class CompiledSchema:
    def __init__(self, schema: ast.Schema):
        self.schema = schema
        self._elements: dict = {}
        self._refs: dict = {}
        self._pending: list = []
        self.start = self.ref(schema.start)

    def ref(self, name: str) -> Node:
        if name not in self._refs:
            self._refs[name] = self._compile_ref(name, frozenset())
        return self._refs[name]

    def _compile_ref(self, name, active):
        if name in active:
            raise SchemaError(f"definition {name!r} refers to itself outside an element")
        if name in self._refs:
            return self._refs[name]
        node = self.compile(self.schema.definitions[name], active | {name})
        self._refs[name] = node
        return node

    def compile(self, p: ast.Pattern, active=frozenset()) -> Node:
        if isinstance(p, ast.Empty):
            return _EMPTY
        if isinstance(p, ast.Text):
            return _TEXT
        if isinstance(p, ast.ValueText):
            return value(p.allowed)
        if isinstance(p, ast.Attribute):
            return attribute(_attr_key(p.name), p.allowed)
        if isinstance(p, ast.Pair):
            return group(self.compile(p.attribute, active), self.compile(p.text, active))
        if isinstance(p, ast.Element):
            node = self._elements.get(p)
            if node is None:
                node = self._elements[p] = ElementNode(p.name)
                # the body is guarded by the element, so recursion is fine here
                node.b = self.compile(p.content, frozenset())
            return node
        if isinstance(p, ast.Ref):
            return self._compile_ref(p.name, active)
        if isinstance(p, ast.Seq):
            out = _EMPTY
            for item in p.items:
                out = group(out, self.compile(item, active))
            return out
        if isinstance(p, ast.Choice):
            return choice_of(self.compile(item, active) for item in p.items)
        if isinstance(p, ast.Interleave):
            out = _EMPTY
            for item in p.items:
                out = interleave(out, self.compile(item, active))
            return out
        if isinstance(p, ast.Opt):
            return choice(self.compile(p.item, active), _EMPTY)
        if isinstance(p, ast.ZeroOrMore):
            return choice(one_or_more(self.compile(p.item, active)), _EMPTY)
        if isinstance(p, ast.OneOrMore):
            return one_or_more(self.compile(p.item, active))
        raise TypeError(f"unknown pattern {p!r}")


def compiled(schema: ast.Schema) -> CompiledSchema:
    cached = schema.__dict__.get("_compiled")
    if cached is None:
        cached = CompiledSchema(schema)
        object.__setattr__(schema, "_compiled", cached)
    return cached


# -- validation ---------------------------------------------------------------------------


def _describe(el: XmlElement) -> str:
    attrs = "".join(f' {n.qualified}="{v}"' for n, v in el.attributes)
    return f"<{el.local}{attrs}>"


class _Validator:
    def __init__(self, source_name: str):
        self.source_name = source_name
        self.diagnostics: list[Diagnostic] = []

    def report(self, el, path, code, message, hint_from: Optional[Node] = None, hint=None):
        if hint is None and hint_from is not None:
            hint = _hint(hint_from)
        self.diagnostics.append(Diagnostic(
            "error", code, message, self.source_name, el.line, el.column, path, hint))

    def text(self, p, s, el, path, failed):
        d = text_deriv(p, s)
        if d is _NOT_ALLOWED:
            if not failed:
                if any(x.tag == VALUE for x in _reachable_values(p)):
                    self.report(el, path, "invalid-value",
                                f"text {_token(s)!r} not in the allowed set for {_describe(el)}", p)
                else:
                    self.report(el, path, "text-not-allowed",
                                f"text {_token(s)!r} not allowed in {_describe(el)}", p)
            d = text_deriv(p, s, True)
            if d is _NOT_ALLOWED:
                d = p
            return d, True
        return d, failed

    def element(self, p: Node, el: XmlElement, path: str) -> Node:
        p1 = start_tag_open_deriv(p, el.local)
        if p1 is _NOT_ALLOWED:
            self.report(el, path, "element-not-allowed", f"element <{el.local}> not allowed here", p)
            return p
        failed = False
        for name, val in el.attributes:
            p2 = att_deriv(p1, (name.namespace_uri, name.local), val)
            if p2 is _NOT_ALLOWED:
                if not failed:
                    self.report(el, path, "attribute-not-allowed",
                                f"attribute {name.qualified}={val!r} not allowed on <{el.local}>",
                                hint=_hint_attrs(p1))
                    failed = True
                continue
            p1 = p2
        p3 = start_tag_close_deriv(p1)
        if p3 is _NOT_ALLOWED:
            if not failed:
                self.report(el, path, "missing-attribute",
                            f"required attribute missing on <{el.local}>", hint=_hint_attrs(p1))
                failed = True
            p3 = start_tag_close_deriv(p1, True)
        children = el.elements()
        if not children:
            s = el.text_content()
            d = text_deriv(p3, s)
            if not s.strip():
                d = choice(p3, d)
            if d is _NOT_ALLOWED:
                d, failed = self.text(p3, s, el, path, failed)
            p3 = d
        else:
            counts: dict[str, int] = {}
            for child in el.children:
                if isinstance(child, str):
                    if child.strip():
                        p3, failed = self.text(p3, child, el, path, failed)
                    continue
                counts[child.local] = counts.get(child.local, 0) + 1
                p3 = self.element(p3, child, f"{path}/{child.local}[{counts[child.local]}]")
        p4 = end_tag_deriv(p3)
        if p4 is _NOT_ALLOWED:
            if not failed:
                self.report(el, path, "incomplete-content",
                            f"content of <{el.local}> is incomplete", p3)
            p4 = end_tag_deriv(p3, True)
        return p4


def _reachable_values(p: Node, seen=None):
    seen = seen if seen is not None else set()
    if p in seen:
        return
    seen.add(p)
    if p.tag == VALUE:
        yield p
    elif p.tag in (CHOICE,):
        for x in p.a:
            yield from _reachable_values(x, seen)
    elif p.tag in (GROUP, INTERLEAVE, AFTER):
        yield from _reachable_values(p.a, seen)
        if p.tag == GROUP and p.a.nullable:
            yield from _reachable_values(p.b, seen)
    elif p.tag == ONE_OR_MORE:
        yield from _reachable_values(p.a, seen)


def _hint_attrs(p: Node) -> Optional[str]:
    tokens = {t for t in _attr_tokens(p, set())}
    return " | ".join(sorted(tokens)) if tokens else None


def _attr_tokens(p: Node, seen):
    if p in seen:
        return
    seen.add(p)
    if p.tag == ATTRIBUTE:
        yield from expected(p)
    elif p.tag == CHOICE:
        for x in p.a:
            yield from _attr_tokens(x, seen)
    elif p.tag in (GROUP, INTERLEAVE, AFTER):
        yield from _attr_tokens(p.a, seen)
        if p.tag != AFTER:
            yield from _attr_tokens(p.b, seen)
    elif p.tag == ONE_OR_MORE:
        yield from _attr_tokens(p.a, seen)


def validate(el: XmlElement, schema: ast.Schema, start: Optional[str] = None,
             source_name: str = "") -> list[Diagnostic]:
    """Validate ``el`` against ``schema``; an empty list means valid."""
    c = compiled(schema)
    p = c.start if start is None else c.ref(start)
    v = _Validator(source_name)
    v.element(p, el, f"/{el.local}[1]")
    return v.diagnostics


def accepts(el: XmlElement, schema: ast.Schema, start: Optional[str] = None) -> bool:
    return not validate(el, schema, start)
