"""LMF lexical entries in the machine-readable-dictionary extension shape."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..xmltree import XmlElement, qname
from .errors import DanglingLinkError, UnknownElementError

Feat = tuple  # (name, value)


@dataclass(frozen=True)
class Etymon:
    id: str
    orth: str = ""
    orth_lang: Optional[str] = None
    pos: Optional[str] = None
    gloss: Optional[str] = None
    note: Optional[str] = None


@dataclass(frozen=True)
class EtymologicalLink:
    source: str
    target: str
    cls: str


@dataclass(frozen=True)
class LmfEtymology:
    etymons: tuple = ()
    links: tuple = ()


@dataclass(frozen=True)
class LmfEntry:
    lemma: tuple = ()  # FormRepresentations, each a tuple of feats
    equivalents: tuple = ()  # feat sets
    etymology: Optional[LmfEtymology] = None
    lemma_id: Optional[str] = None

    def written_forms(self) -> list[str]:
        return [v for rep in self.lemma for k, v in rep if k == "writtenForm"]

    def defined_ids(self) -> set[str]:
        ids = {self.lemma_id} if self.lemma_id else set()
        if self.etymology:
            ids.update(e.id for e in self.etymology.etymons)
        return ids

    def check_links(self):
        if not self.etymology:
            return
        ids = self.defined_ids()
        for link in self.etymology.links:
            for role in ("source", "target"):
                if getattr(link, role) not in ids:
                    raise DanglingLinkError(getattr(link, role), role)


def _feats(el: XmlElement) -> tuple:
    feats = []
    for feat in el.elements():
        if feat.local != "feat":
            raise UnknownElementError(feat.local, feat.line, feat.column, el.local)
        att, val = feat.get("att"), feat.get("val")
        if att is not None and val is not None:
            feats.append((att, val))
        else:
            feats.extend((n.qualified, v) for n, v in feat.attributes)
    return tuple(feats)


def _text(el: Optional[XmlElement]) -> Optional[str]:
    if el is None:
        return None
    return " ".join(el.text_content().split())


def _child(el: XmlElement, name: str) -> Optional[XmlElement]:
    for c in el.elements():
        if c.local == name:
            return c
    return None


def _etymon(el: XmlElement) -> Etymon:
    form = _child(el, "form")
    sense = _child(el, "sense")
    orth = _child(form, "orth") if form is not None else None
    for part in (form, sense):
        if part is None:
            continue
        for c in part.elements():
            if c.local not in ("orth", "pos", "gloss", "note"):
                raise UnknownElementError(c.local, c.line, c.column, part.local)
    return Etymon(
        id=el.get("id") or "",
        orth=_text(orth) or "",
        orth_lang=orth.get("xml:lang") if orth is not None else None,
        pos=_text(_child(form, "pos")) if form is not None else None,
        gloss=_text(_child(sense, "gloss")) if sense is not None else None,
        note=_text(_child(sense, "note")) if sense is not None else None,
    )


def bind_lmf(root: XmlElement) -> LmfEntry:
    if root.local != "LexicalEntry":
        raise ValueError(f"expected <LexicalEntry>, got <{root.local}>")
    lemma, lemma_id, equivalents, etymology = (), None, [], None
    for child in root.elements():
        if child.local == "Lemma":
            lemma_id = child.get("id")
            reps = []
            for rep in child.elements():
                if rep.local != "FormRepresentation":
                    raise UnknownElementError(rep.local, rep.line, rep.column, "Lemma")
                reps.append(_feats(rep))
            lemma = tuple(reps)
        elif child.local == "Equivalent":
            equivalents.append(_feats(child))
        elif child.local == "etymology":
            etymons, links = [], []
            for part in child.elements():
                if part.local == "etymon":
                    etymons.append(_etymon(part))
                elif part.local == "etymologicalLink":
                    links.append(EtymologicalLink(
                        part.get("source") or "", part.get("target") or "",
                        _text(_child(part, "etymologicalClass")) or "",
                    ))
                else:
                    raise UnknownElementError(part.local, part.line, part.column, "etymology")
            etymology = LmfEtymology(tuple(etymons), tuple(links))
        else:
            raise UnknownElementError(child.local, child.line, child.column, "LexicalEntry")
    entry = LmfEntry(lemma, tuple(equivalents), etymology, lemma_id)
    entry.check_links()
    return entry


def _el(tag, attrs=(), children=()):
    return XmlElement(qname(tag), tuple((qname(k), v) for k, v in attrs if v is not None),
                      tuple(children))


def _feat_elements(feats) -> list:
    return [_el("feat", [(name, value)]) for name, value in feats]


def unbind_lmf(entry: LmfEntry) -> XmlElement:
    children = []
    if entry.lemma or entry.lemma_id:
        reps = [_el("FormRepresentation", (), _feat_elements(rep)) for rep in entry.lemma]
        children.append(_el("Lemma", [("id", entry.lemma_id)], reps))
    for eq in entry.equivalents:
        children.append(_el("Equivalent", (), _feat_elements(eq)))
    if entry.etymology is not None:
        parts = []
        for ety in entry.etymology.etymons:
            form = []
            if ety.orth:
                form.append(_el("orth", [("xml:lang", ety.orth_lang)], [ety.orth]))
            if ety.pos is not None:
                form.append(_el("pos", (), [ety.pos]))
            sense = []
            if ety.gloss is not None:
                sense.append(_el("gloss", (), [ety.gloss]))
            if ety.note is not None:
                sense.append(_el("note", (), [ety.note]))
            body = []
            if form:
                body.append(_el("form", (), form))
            if sense:
                body.append(_el("sense", (), sense))
            parts.append(_el("etymon", [("id", ety.id)], body))
        for link in entry.etymology.links:
            parts.append(_el("etymologicalLink", [("source", link.source), ("target", link.target)],
                             [_el("etymologicalClass", (), [link.cls])]))
        children.append(_el("etymology", (), parts))
    return _el("LexicalEntry", (), children)
