"""Typed view of TEI dictionary entries (``entry``, ``entryFree``, ``hom``).

Every container keeps its children in an ordered ``content`` tuple so that
document order survives binding; the list-valued accessors (``orths``,
``senses``, ...) are filtered views over that tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from ..xmltree import XmlElement, qname
from .errors import MissingHeadwordError, UnknownElementError

TEI_VOCABULARY = frozenset(
    "entry entryFree hom form orth pron gramGrp pos gen gram usg sense def "
    "cit quote q bibl etym ref xr number".split()
)
ROOTS = ("entry", "entryFree", "hom")
TEI_NS = "http://www.tei-c.org/ns/1.0"

STRICT = "strict"
PERMISSIVE = "permissive"


@dataclass(frozen=True)
class Opaque:
    """An element outside the TEI subset, kept verbatim in permissive mode."""

    element: XmlElement


@dataclass(frozen=True)
class Orth:
    text: str
    extent: Optional[str] = None
    rend: Optional[str] = None


@dataclass(frozen=True)
class Pron:
    text: str
    notation: Optional[str] = None


@dataclass(frozen=True)
class Usg:
    usg_type: Optional[str]
    text: str


@dataclass(frozen=True)
class Pos:
    value: Optional[str]
    text: str = ""


@dataclass(frozen=True)
class Gen:
    value: Optional[str]
    surface: str


@dataclass(frozen=True)
class Number:
    # surface forms are undocumented, so the element is stored as-is
    value: Optional[str]
    text: str


@dataclass(frozen=True)
class Gram:
    gram_type: Optional[str]
    text: str


@dataclass(frozen=True)
class GramGrp:
    content: tuple = ()

    def _of(self, kind):
        return [c for c in self.content if isinstance(c, kind)]

    @property
    def pos(self) -> list[Pos]:
        return self._of(Pos)

    @property
    def genders(self) -> list[Gen]:
        return self._of(Gen)

    @property
    def numbers(self) -> list[Number]:
        return self._of(Number)

    @property
    def grams(self) -> list[Gram]:
        return self._of(Gram)

    @property
    def usgs(self) -> list[Usg]:
        return self._of(Usg)

    @property
    def nested(self) -> list[GramGrp]:
        return self._of(GramGrp)


@dataclass(frozen=True)
class Form:
    form_type: Optional[str]
    content: tuple = ()

    @property
    def orths(self) -> list[Orth]:
        return [c for c in self.content if isinstance(c, Orth)]

    @property
    def usgs(self) -> list[Usg]:
        return [c for c in self.content if isinstance(c, Usg)]

    @property
    def gram_grps(self) -> list[GramGrp]:
        return [c for c in self.content if isinstance(c, GramGrp)]

    @property
    def prons(self) -> list[Pron]:
        return [c for c in self.content if isinstance(c, Pron)]


@dataclass(frozen=True)
class Quote:
    text: str
    quote_type: Optional[str] = None
    lang: Optional[str] = None


@dataclass(frozen=True)
class Bibl:
    text: str


@dataclass(frozen=True)
class Cit:
    cit_type: Optional[str]
    content: tuple = ()

    @property
    def quotes(self) -> list[Quote]:
        return [c for c in self.content if isinstance(c, Quote)]

    @property
    def usgs(self) -> list[Usg]:
        return [c for c in self.content if isinstance(c, Usg)]

    @property
    def bibl(self) -> Optional[str]:
        found = [c.text for c in self.content if isinstance(c, Bibl)]
        return found[0] if found else None


@dataclass(frozen=True)
class Def:
    text: str
    id: Optional[str] = None


@dataclass(frozen=True)
class Ref:
    ref_type: Optional[str]
    target: Optional[str]
    text: str


@dataclass(frozen=True)
class Xr:
    xr_type: Optional[str]
    content: tuple = ()


@dataclass(frozen=True)
class Sense:
    id: Optional[str] = None
    level: Optional[int] = None
    n: Optional[str] = None
    content: tuple = ()

    @property
    def defs(self) -> list[str]:
        return [c.text for c in self.content if isinstance(c, Def)]

    @property
    def cits(self) -> list[Cit]:
        return [c for c in self.content if isinstance(c, Cit)]

    @property
    def subsenses(self) -> list[Sense]:
        return [c for c in self.content if isinstance(c, Sense)]

    @property
    def usgs(self) -> list[Usg]:
        return [c for c in self.content if isinstance(c, Usg)]


@dataclass(frozen=True)
class Etym:
    id: Optional[str] = None
    content: tuple = ()  # str | Def | Ref | Opaque, in document order

    @property
    def refs(self) -> list[Ref]:
        return [c for c in self.content if isinstance(c, Ref)]

    @property
    def defs(self) -> list[Def]:
        return [c for c in self.content if isinstance(c, Def)]


@dataclass(frozen=True)
class TeiEntry:
    id: str = ""
    items: tuple = ()
    tag: str = "entry"

    @property
    def free(self) -> bool:
        return self.tag == "entryFree"

    @property
    def forms(self) -> list[Form]:
        if not self.free:
            return [c for c in self.items if isinstance(c, Form)]
        # entryFree: gather the loose form-level atoms into one synthetic form
        atoms = [c for c in self.items if isinstance(c, (Orth, Pron))]
        grams = [c for c in self.items if isinstance(c, (Pos, Gen, Gram, Number))]
        grams += [g for g in self.items if isinstance(g, GramGrp)]
        if grams:
            atoms.append(GramGrp(tuple(grams)))
        forms = [c for c in self.items if isinstance(c, Form)]
        if atoms:
            forms.insert(0, Form("headword", tuple(atoms)))
        return forms

    @property
    def senses(self) -> list[Sense]:
        if not self.free:
            return [c for c in self.items if isinstance(c, Sense)]
        atoms = []
        for c in self.items:
            if isinstance(c, (Def, Cit, Xr)):
                atoms.append(c)
            elif isinstance(c, Quote):
                atoms.append(Cit("example", (c,)))
        senses = [c for c in self.items if isinstance(c, Sense)]
        if atoms:
            senses.insert(0, Sense(content=tuple(atoms)))
        return senses

    @property
    def etym(self) -> Optional[Etym]:
        found = [c for c in self.items if isinstance(c, Etym)]
        return found[0] if found else None

    @property
    def homographs(self) -> list[TeiEntry]:
        return [c for c in self.items if isinstance(c, TeiEntry)]

    def headwords(self) -> list[str]:
        return [o.text for f in self.forms if f.form_type in (None, "headword") for o in f.orths]


TeiNode = Union[Orth, Pron, Usg, Pos, Gen, Number, Gram, GramGrp, Form, Quote, Bibl,
                Cit, Def, Ref, Xr, Sense, Etym, TeiEntry, Opaque, str]


# -- binding ------------------------------------------------------------------------


class _Binder:
    def __init__(self, strictness: str):
        if strictness not in (STRICT, PERMISSIVE):
            raise ValueError(f"strictness must be 'strict' or 'permissive', not {strictness!r}")
        self.strict = strictness == STRICT

    def leaf_text(self, el: XmlElement) -> str:
        if self.strict:
            for child in el.elements():
                raise UnknownElementError(child.local, child.line, child.column, el.local)
        return el.text_content()

    def content(self, el: XmlElement, keep_whitespace: bool = False) -> tuple:
        out: list = []
        for child in el.children:
            if isinstance(child, str):
                if keep_whitespace or child.strip():
                    out.append(child)
            else:
                out.append(self.node(child, el))
        return tuple(out)

    def node(self, el: XmlElement, parent: Optional[XmlElement] = None):
        name = el.local
        if el.name.namespace_uri not in ("", TEI_NS) or name not in TEI_VOCABULARY:
            if self.strict:
                raise UnknownElementError(el.name.qualified, el.line, el.column,
                                          parent.local if parent is not None else "")
            return Opaque(el)
        return getattr(self, "bind_" + name)(el)

    def bind_entry(self, el):
        return TeiEntry(el.get("xml:id") or "", self.content(el), "entry")

    def bind_hom(self, el):
        return TeiEntry(el.get("xml:id") or "", self.content(el), "hom")

    def bind_entryFree(self, el):
        return TeiEntry(el.get("xml:id") or "", self.content(el, keep_whitespace=True), "entryFree")

    def bind_form(self, el):
        form = Form(el.get("type"), self.content(el))
        if form.form_type == "headword" and not form.orths:
            raise MissingHeadwordError(el.line, el.column)
        return form

    def bind_orth(self, el):
        return Orth(self.leaf_text(el), el.get("extent"), el.get("rend"))

    def bind_pron(self, el):
        return Pron(self.leaf_text(el), el.get("notation"))

    def bind_usg(self, el):
        return Usg(el.get("type"), self.leaf_text(el))

    def bind_gramGrp(self, el):
        return GramGrp(self.content(el))

    def bind_pos(self, el):
        return Pos(el.get("value"), self.leaf_text(el))

    def bind_gen(self, el):
        return Gen(el.get("value"), self.leaf_text(el))

    def bind_number(self, el):
        return Number(el.get("value"), self.leaf_text(el))

    def bind_gram(self, el):
        return Gram(el.get("type"), self.leaf_text(el))

    def bind_sense(self, el):
        level = el.get("level")
        return Sense(el.get("xml:id"), int(level) if level is not None else None,
                     el.get("n"), self.content(el))

    def bind_def(self, el):
        return Def(self.leaf_text(el), el.get("xml:id"))

    def bind_cit(self, el):
        return Cit(el.get("type"), self.content(el))

    def bind_quote(self, el):
        return Quote(self.leaf_text(el), el.get("type"), el.get("xml:lang"))

    bind_q = bind_quote

    def bind_bibl(self, el):
        return Bibl(self.leaf_text(el))

    def bind_etym(self, el):
        return Etym(el.get("xml:id"), self.content(el, keep_whitespace=True))

    def bind_ref(self, el):
        return Ref(el.get("type"), el.get("target"), self.leaf_text(el))

    def bind_xr(self, el):
        return Xr(el.get("type"), self.content(el, keep_whitespace=True))


def bind_tei(root: XmlElement, strictness: str = STRICT) -> TeiEntry:
    """Bind an ``entry``, ``entryFree`` or ``hom`` element to a :class:`TeiEntry`."""
    if root.local not in ROOTS:
        raise ValueError(f"expected one of {ROOTS}, got <{root.local}>")
    return _Binder(strictness).node(root)


def find_entries(root: XmlElement) -> list[XmlElement]:
    """Top-level entry elements in a document (the root itself or its descendants)."""
    if root.local in ROOTS:
        return [root]
    found = []
    for child in root.elements():
        found.extend(find_entries(child))
    return found


# -- unbinding ------------------------------------------------------------------------


def _el(tag: str, attrs: list[tuple[str, Optional[str]]], children) -> XmlElement:
    kept = tuple((qname(k), v) for k, v in attrs if v is not None)
    return XmlElement(qname(tag), kept, tuple(children))


def _unbind_seq(items) -> list:
    return [item if isinstance(item, str) else unbind_node(item) for item in items]


def unbind_node(node) -> XmlElement:
    if isinstance(node, TeiEntry):
        return _el(node.tag, [("xml:id", node.id or None)], _unbind_seq(node.items))
    if isinstance(node, Opaque):
        return node.element
    if isinstance(node, Form):
        return _el("form", [("type", node.form_type)], _unbind_seq(node.content))
    if isinstance(node, Orth):
        return _el("orth", [("extent", node.extent), ("rend", node.rend)], [node.text])
    if isinstance(node, Pron):
        return _el("pron", [("notation", node.notation)], [node.text])
    if isinstance(node, Usg):
        return _el("usg", [("type", node.usg_type)], [node.text])
    if isinstance(node, GramGrp):
        return _el("gramGrp", [], _unbind_seq(node.content))
    if isinstance(node, Pos):
        return _el("pos", [("value", node.value)], [node.text])
    if isinstance(node, Gen):
        return _el("gen", [("value", node.value)], [node.surface])
    if isinstance(node, Number):
        return _el("number", [("value", node.value)], [node.text])
    if isinstance(node, Gram):
        return _el("gram", [("type", node.gram_type)], [node.text])
    if isinstance(node, Sense):
        level = str(node.level) if node.level is not None else None
        return _el("sense", [("xml:id", node.id), ("level", level), ("n", node.n)],
                   _unbind_seq(node.content))
    if isinstance(node, Def):
        return _el("def", [("xml:id", node.id)], [node.text])
    if isinstance(node, Cit):
        return _el("cit", [("type", node.cit_type)], _unbind_seq(node.content))
    if isinstance(node, Quote):
        return _el("quote", [("type", node.quote_type), ("xml:lang", node.lang)], [node.text])
    if isinstance(node, Bibl):
        return _el("bibl", [], [node.text])
    if isinstance(node, Etym):
        return _el("etym", [("xml:id", node.id)], _unbind_seq(node.content))
    if isinstance(node, Ref):
        return _el("ref", [("type", node.ref_type), ("target", node.target)], [node.text])
    if isinstance(node, Xr):
        return _el("xr", [("type", node.xr_type)], _unbind_seq(node.content))
    raise TypeError(f"cannot unbind {type(node).__name__}")


def unbind_tei(entry: TeiEntry) -> XmlElement:
    """Turn a :class:`TeiEntry` back into a TEI tree that re-binds to an equal value."""
    return unbind_node(entry)
