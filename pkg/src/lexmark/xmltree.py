"""Generic ordered XML tree: parse, serialize, look up ``xml:id`` values.

Text children are plain ``str`` objects; element children are
:class:`XmlElement` instances.  Trees are immutable once built.
"""

from __future__ import annotations

import re
import xml.parsers.expat
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Union

XML_NS = "http://www.w3.org/XML/1998/namespace"

_BAD_LOCAL = re.compile(r"[\s<>=\"']")


class WellFormednessError(ValueError):
    """Raised when input is not well-formed XML (or uses rejected features)."""

    def __init__(self, message: str, source_name: str = "", line: int = 0, column: int = 0):
        self.message = message
        self.source_name = source_name
        self.line = line
        self.column = column
        super().__init__(f"{source_name or '<input>'}:{line}:{column}: {message}")


class DuplicateIdError(ValueError):
    def __init__(self, id_value: str, first: "XmlElement", second: "XmlElement"):
        self.id = id_value
        self.first = first
        self.second = second
        super().__init__(
            f"duplicate xml:id {id_value!r} (lines {first.line} and {second.line})"
        )


@dataclass(frozen=True)
class XmlName:
    namespace_uri: str
    prefix: str = field(default="", compare=False)
    local: str = ""

    def __post_init__(self):
        if not self.local or _BAD_LOCAL.search(self.local):
            raise ValueError(f"invalid local name {self.local!r}")
        if self.prefix == "xml" and self.namespace_uri != XML_NS:
            raise ValueError("prefix 'xml' is bound to the XML namespace")

    @property
    def qualified(self) -> str:
        return f"{self.prefix}:{self.local}" if self.prefix else self.local

    def __str__(self):
        return self.qualified


def qname(spec: Union[str, XmlName]) -> XmlName:
    """Build a name from ``local``, ``xml:local`` or ``{uri}local``."""
    if isinstance(spec, XmlName):
        return spec
    if spec.startswith("{"):
        uri, local = spec[1:].split("}", 1)
        return XmlName(uri, "", local)
    if spec.startswith("xml:"):
        return XmlName(XML_NS, "xml", spec[4:])
    return XmlName("", "", spec)


@dataclass(frozen=True, eq=False)
class XmlElement:
    name: XmlName
    attributes: tuple = ()
    children: tuple = ()
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def __post_init__(self):
        seen = set()
        for attr_name, _ in self.attributes:
            key = (attr_name.namespace_uri, attr_name.local)
            if key in seen:
                raise ValueError(f"duplicate attribute {attr_name.qualified!r}")
            seen.add(key)
        object.__setattr__(self, "children", _merge_text(self.children))

    def __eq__(self, other):
        if not isinstance(other, XmlElement):
            return NotImplemented
        # attribute order carries no meaning in XML
        return (
            self.name == other.name
            and frozenset(self.attributes) == frozenset(other.attributes)
            and self.children == other.children
        )

    def __hash__(self):
        return hash((self.name, frozenset(self.attributes), self.children))

    @property
    def local(self) -> str:
        return self.name.local

    def get(self, name: str, default: Optional[str] = None) -> Optional[str]:
        """Attribute lookup by ``local``, ``xml:local`` or ``{uri}local``."""
        want = qname(name)
        for attr_name, value in self.attributes:
            if attr_name == want:
                return value
        return default

    def elements(self) -> list[XmlElement]:
        return [c for c in self.children if isinstance(c, XmlElement)]

    def text_content(self) -> str:
        return "".join(_iter_text(self))

    def iter(self) -> Iterator[XmlElement]:
        """Depth-first, document-order walk over this element and its descendants."""
        yield self
        for child in self.children:
            if isinstance(child, XmlElement):
                yield from child.iter()

    def has_mixed_content(self) -> bool:
        return any(isinstance(c, str) and c.strip() for c in self.children)


XmlNode = Union[XmlElement, str]


def element(tag: str, attrs: Optional[dict] = None, *children: XmlNode) -> XmlElement:
    """Convenience constructor: ``element("sense", {"n": "1"}, "x")``."""
    attributes = tuple((qname(k), v) for k, v in (attrs or {}).items())
    return XmlElement(qname(tag), attributes, tuple(children))


def _merge_text(children: Iterable[XmlNode]) -> tuple:
    out: list = []
    for child in children:
        if isinstance(child, str):
            if not child:
                continue
            if out and isinstance(out[-1], str):
                out[-1] += child
                continue
        out.append(child)
    return tuple(out)


def _iter_text(el: XmlElement) -> Iterator[str]:
    for child in el.children:
        if isinstance(child, str):
            yield child
        else:
            yield from _iter_text(child)


@dataclass(eq=False)
class XmlDocument:
    root: XmlElement
    source_name: str = ""
    namespaces: tuple = ()  # (prefix, uri) declarations seen during parse

    @cached_property
    def id_index(self) -> dict:
        index: dict[str, XmlElement] = {}
        xml_id = XmlName(XML_NS, "xml", "id")
        for el in self.root.iter():
            value = el.get(xml_id)
            if value is None:
                continue
            if value in index:
                raise DuplicateIdError(value, index[value], el)
            index[value] = el
        return index

    def find_by_id(self, id_value: str) -> Optional[XmlElement]:
        return self.id_index.get(id_value)


def find_by_id(doc: XmlDocument, id_value: str) -> Optional[XmlElement]:
    return doc.find_by_id(id_value)


def element_paths(root: XmlElement) -> Iterator[tuple[str, XmlElement]]:
    """Yield ``(path, element)`` pairs, paths like ``/entry[1]/sense[2]``."""

    def walk(el, path):
        yield path, el
        counts: dict[str, int] = {}
        for child in el.elements():
            counts[child.local] = counts.get(child.local, 0) + 1
            yield from walk(child, f"{path}/{child.local}[{counts[child.local]}]")

    yield from walk(root, f"/{root.local}[1]")


# -- parsing -----------------------------------------------------------------


def _split_expat_name(raw: str) -> XmlName:
    parts = raw.split(" ")
    if len(parts) == 1:
        return XmlName("", "", parts[0])
    if len(parts) == 2:
        return XmlName(parts[0], "", parts[1])
    return XmlName(parts[0], parts[2], parts[1])


class _TreeBuilder:
    def __init__(self, parser, source_name):
        self.parser = parser
        self.source_name = source_name
        self.stack: list[tuple[XmlName, tuple, list, int, int]] = []
        self.root: Optional[XmlElement] = None
        self.namespaces: list[tuple[str, str]] = []

    def start(self, raw_name, raw_attrs):
        line = self.parser.CurrentLineNumber
        column = self.parser.CurrentColumnNumber + 1
        attrs = tuple(
            (_split_expat_name(raw_attrs[i]), raw_attrs[i + 1])
            for i in range(0, len(raw_attrs), 2)
        )
        self.stack.append((_split_expat_name(raw_name), attrs, [], line, column))

    def end(self, _raw_name):
        name, attrs, children, line, column = self.stack.pop()
        el = XmlElement(name, attrs, tuple(children), line=line, column=column)
        if self.stack:
            self.stack[-1][2].append(el)
        else:
            self.root = el

    def text(self, data):
        if self.stack:
            self.stack[-1][2].append(data)

    def namespace(self, prefix, uri):
        pair = (prefix or "", uri or "")
        if pair not in self.namespaces:
            self.namespaces.append(pair)

    def doctype(self, *_args):
        raise WellFormednessError(
            "DOCTYPE declarations are not supported",
            self.source_name,
            self.parser.CurrentLineNumber,
            self.parser.CurrentColumnNumber + 1,
        )


def parse(data: Union[bytes, str], source_name: str = "") -> XmlDocument:
    """Parse UTF-8 XML into an :class:`XmlDocument`.

    Comments and processing instructions are dropped, CDATA is folded into
    text, namespace declarations are resolved and removed from attributes.
    """
    if isinstance(data, str):
        data = data.encode("utf-8")
    parser = xml.parsers.expat.ParserCreate("UTF-8", " ")
    parser.namespace_prefixes = True
    parser.ordered_attributes = True
    builder = _TreeBuilder(parser, source_name)
    parser.StartElementHandler = builder.start
    parser.EndElementHandler = builder.end
    parser.CharacterDataHandler = builder.text
    parser.StartNamespaceDeclHandler = builder.namespace
    parser.StartDoctypeDeclHandler = builder.doctype
    try:
        parser.Parse(data, True)
    except xml.parsers.expat.ExpatError as exc:
        message = xml.parsers.expat.errors.messages.get(exc.code, str(exc))
        raise WellFormednessError(message, source_name, exc.lineno, exc.offset + 1) from None
    return XmlDocument(builder.root, source_name, tuple(builder.namespaces))


def parse_file(path) -> XmlDocument:
    with open(path, "rb") as fh:
        return parse(fh.read(), str(path))


# -- serialization -------------------------------------------------------------


def _escape_text(s: str) -> str:
    s = s.replace("&", "&amp;").replace("<", "&lt;").replace("]]>", "]]&gt;")
    return s.replace("\r", "&#13;")


def _escape_attr(s: str) -> str:
    s = s.replace("&", "&amp;").replace("<", "&lt;").replace('"', "&quot;")
    return s.replace("\t", "&#9;").replace("\n", "&#10;").replace("\r", "&#13;")


class _Serializer:
    def __init__(self, pretty: bool, declared: Iterable[tuple[str, str]] = ()):
        self.pretty = pretty
        self.out: list[str] = []
        self.root_decls = list(declared)
        self._auto = 0

    def _names(self, el: XmlElement) -> list[XmlName]:
        return [el.name] + [n for n, _ in el.attributes]

    def _collect_bindings(self, root: XmlElement) -> dict[str, str]:
        bindings: dict[str, str] = {}
        for prefix, uri in self.root_decls:
            bindings.setdefault(prefix, uri)
        for el in root.iter():
            for i, n in enumerate(self._names(el)):
                if n.prefix == "xml" or (i and not n.namespace_uri):
                    continue
                bindings.setdefault(n.prefix, n.namespace_uri)
        return {p: u for p, u in bindings.items() if p or u}

    def _prefix_for(self, n: XmlName, is_attr: bool, scope: dict, local_decls: dict) -> str:
        if n.namespace_uri == XML_NS:
            return "xml"
        if is_attr and not n.namespace_uri:
            return ""
        prefix = n.prefix
        if is_attr and not prefix:
            # attributes cannot use the default namespace
            for p, u in {**scope, **local_decls}.items():
                if p and u == n.namespace_uri:
                    return p
            self._auto += 1
            prefix = f"ns{self._auto}"
        if {**scope, **local_decls}.get(prefix, "") != n.namespace_uri:
            local_decls[prefix] = n.namespace_uri
        return prefix

    def element(self, el: XmlElement, scope: dict, depth: int, decls: Optional[dict] = None):
        local_decls = dict(decls or {})
        tag_prefix = self._prefix_for(el.name, False, {**scope, **local_decls}, local_decls)
        attr_parts = []
        for n, value in el.attributes:
            p = self._prefix_for(n, True, {**scope, **local_decls}, local_decls)
            attr_parts.append((f"{p}:{n.local}" if p else n.local, value))
        tag = f"{tag_prefix}:{el.local}" if tag_prefix else el.local
        out = self.out
        out.append("<" + tag)
        for p, u in local_decls.items():
            out.append(f' xmlns:{p}="{_escape_attr(u)}"' if p else f' xmlns="{_escape_attr(u)}"')
        for name, value in attr_parts:
            out.append(f' {name}="{_escape_attr(value)}"')
        inner_scope = {**scope, **local_decls}
        if not el.children:
            out.append("/>")
            return
        out.append(">")
        element_only = self.pretty and el.elements() and not el.has_mixed_content()
        for child in el.children:
            if isinstance(child, str):
                if not element_only:
                    out.append(_escape_text(child))
                continue
            if element_only:
                out.append("\n" + "  " * (depth + 1))
                self.element(child, inner_scope, depth + 1)
            else:
                self._inline(child, inner_scope)
        if element_only:
            out.append("\n" + "  " * depth)
        out.append(f"</{tag}>")

    def _inline(self, el, scope):
        # mixed content is emitted untouched, including every descendant
        pretty, self.pretty = self.pretty, False
        try:
            self.element(el, scope, 0)
        finally:
            self.pretty = pretty


def serialize(doc: Union[XmlDocument, XmlElement], mode: str = "compact") -> str:
    """Serialize a document or element.

    ``compact`` adds no whitespace; ``pretty`` indents element-only content by
    two spaces per level and leaves mixed content untouched.
    """
    if mode not in ("compact", "pretty"):
        raise ValueError(f"unknown serialization mode {mode!r}")
    if isinstance(doc, XmlDocument):
        root, declared = doc.root, doc.namespaces
    else:
        root, declared = doc, ()
    ser = _Serializer(mode == "pretty", declared)
    ser.element(root, {}, 0, ser._collect_bindings(root))
    text = "".join(ser.out)
    return text + "\n" if mode == "pretty" else text


# -- comparison helpers ----------------------------------------------------------


def normalize_whitespace(el: XmlElement) -> XmlElement:
    """Collapse whitespace runs in text, strip each text node, drop empty ones."""
    children = []
    for child in el.children:
        if isinstance(child, str):
            collapsed = " ".join(child.split())
            if collapsed:
                children.append(collapsed)
        else:
            children.append(normalize_whitespace(child))
    return XmlElement(el.name, el.attributes, tuple(children), el.line, el.column)
