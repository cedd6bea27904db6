"""ISO 1951 entries and the compositional-element classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from ..xmltree import XmlElement
from .errors import UnknownElementError


class IsoClass(enum.Enum):
    CONTAINER = "Container"
    BLOCK = "Block"
    GROUP = "Group"
    CATEGORY = "Category"


GROUPS = frozenset({"SenseGrp", "SenseGroup", "HomographGroup", "HomographGrp"})

ISO_VOCABULARY = frozenset({
    "DictionaryEntry", "Headword", "PartOfSpeech", "GrammaticalGender",
    "GrammaticalNumber", "Note", "TemporalUsage", "Register", "GeographicUsage",
    "Definition", "Example", "Gloss", "Etymology", "SeeAlso", "Ptr",
    "Pronunciation", "Inflection", "Translation",
}) | GROUPS


def classify_iso(name: str) -> IsoClass:
    if name.endswith("Ctn"):
        return IsoClass.CONTAINER
    if name.endswith("Block"):
        return IsoClass.BLOCK
    if name in GROUPS:
        return IsoClass.GROUP
    return IsoClass.CATEGORY


@dataclass(frozen=True)
class IsoNode:
    kind: str
    cls: IsoClass
    attrs: tuple = ()
    children: tuple = ()  # IsoNode | str

    def get(self, name: str, default=None):
        return dict(self.attrs).get(name, default)

    def elements(self) -> list[IsoNode]:
        return [c for c in self.children if isinstance(c, IsoNode)]

    def text(self) -> str:
        return "".join(c if isinstance(c, str) else c.text() for c in self.children)


@dataclass(frozen=True)
class IsoEntry:
    headword_ctn: tuple = ()
    sense_grps: tuple = ()
    etymology: Optional[IsoNode] = None


def _known(name: str) -> bool:
    return name in ISO_VOCABULARY or name.endswith(("Ctn", "Block"))


def _node(el: XmlElement) -> IsoNode:
    if not _known(el.local):
        raise UnknownElementError(el.local, el.line, el.column)
    children = []
    for child in el.children:
        if isinstance(child, str):
            if child.strip():
                children.append(child)
        else:
            children.append(_node(child))
    attrs = tuple((n.qualified, v) for n, v in el.attributes)
    return IsoNode(el.local, classify_iso(el.local), attrs, tuple(children))


def bind_iso(root: XmlElement) -> IsoEntry:
    if root.local != "DictionaryEntry":
        raise ValueError(f"expected <DictionaryEntry>, got <{root.local}>")
    top = _node(root)
    headword_ctn: list = []
    sense_grps = []
    etymology = None
    for child in top.elements():
        if child.kind == "HeadwordCtn":
            headword_ctn.extend(child.elements())
        elif child.cls is IsoClass.GROUP:
            sense_grps.append(child)
        elif child.kind == "Etymology" and etymology is None:
            etymology = child
    return IsoEntry(tuple(headword_ctn), tuple(sense_grps), etymology)
