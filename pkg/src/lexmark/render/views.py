"""Media-specific views of bound TEI entries.

Print and expanded output are produced as token lists first; the string
forms are plain concatenations, which keeps filtering and label-style
properties checkable on tokens.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from ..entry.tei import (
    Bibl, Cit, Def, Etym, Form, Gen, Gram, GramGrp, Number, Opaque, Orth, Pos, Pron,
    Quote, Ref, Sense, TeiEntry, Usg, Xr,
)
from ..xmltree import XmlElement, element, serialize
from .paradigm import expand_paradigm

MEDIA = ("print", "expanded", "html")
GENDER_STYLES = ("abbreviated", "long")

# token kinds that carry no entry content
SEPARATOR = "sep"


class RenderWarning(UserWarning):
    pass


@dataclass(frozen=True)
class RenderOptions:
    media: str = "print"
    gender_style: str = "abbreviated"
    include_citations: bool = True
    include_etym: bool = True

    def __post_init__(self):
        if self.media not in MEDIA:
            raise ValueError(f"media must be one of {MEDIA}, not {self.media!r}")
        if self.gender_style not in GENDER_STYLES:
            raise ValueError(f"gender_style must be one of {GENDER_STYLES}, not {self.gender_style!r}")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str


def _squash(text: str) -> str:
    return " ".join(text.split())


def _sep(text: str) -> Token:
    return Token(SEPARATOR, text)


def _join(groups, sep: str) -> list[Token]:
    out: list[Token] = []
    for group in groups:
        if not group:
            continue
        if out:
            out.append(_sep(sep))
        out.extend(group)
    return out


def gender_label(gen: Gen, style: str) -> str:
    if style == "long" and gen.value:
        return gen.value
    return _squash(gen.surface) or (gen.value or "")


# -- shared token builders -------------------------------------------------------


def _form_tokens(form: Form) -> list[Token]:
    out: list[Token] = []
    pending = None  # separator owed after the previous item
    for item in form.content:
        if isinstance(item, Orth):
            tok = Token("orth", _squash(item.text))
        elif isinstance(item, Usg):
            tok = Token("usg", _squash(item.text))
        elif isinstance(item, Pron):
            tok = Token("pron", f"[{_squash(item.text)}]")
        else:
            continue
        if out:
            out.append(_sep(pending or " "))
        out.append(tok)
        pending = None
        if isinstance(item, Orth) and item.rend:
            if item.rend == "sep:comma":
                pending = ", "
            else:
                warnings.warn(RenderWarning(f"ignoring rend value {item.rend!r}"), stacklevel=4)
    return out


def _gram_items(grp: GramGrp, style: str) -> list[list[Token]]:
    items = []
    for item in grp.content:
        if isinstance(item, Pos):
            if _squash(item.text):
                items.append([Token("pos", _squash(item.text))])
        elif isinstance(item, Gen):
            items.append([Token("gender", gender_label(item, style))])
        elif isinstance(item, (Gram, Number, Usg)):
            kind = {Gram: "gram", Number: "number", Usg: "usg"}[type(item)]
            items.append([Token(kind, _squash(item.text))])
        elif isinstance(item, GramGrp):
            items.extend(_gram_items(item, style))
        elif isinstance(item, Pron):
            items.append([Token("pron", f"[{_squash(item.text)}]")])
    return [i for i in items if i and i[0].text]


def _cit_tokens(cit: Cit) -> list[Token]:
    parts = []
    for item in cit.content:
        if isinstance(item, Usg):
            parts.append([Token("usg", _squash(item.text))])
        elif isinstance(item, Quote):
            text = _squash(item.text)
            if item.quote_type == "paraphrase":
                parts.append([Token("paraphrase", f"({text})")])
            else:
                parts.append([Token("quote", text)])
        elif isinstance(item, Bibl):
            parts.append([Token("bibl", f"[{_squash(item.text)}]")])
    return _join(parts, " ")


def _ref_tokens(ref: Ref) -> list[Token]:
    return [Token("ref", f"s. {_squash(ref.text)}")]


def _sense_tokens(sense: Sense, opts: RenderOptions) -> list[Token]:
    head = []
    if sense.n:
        head.append([Token("label", f"{sense.n})")])
    cits, subs = [], []
    for item in sense.content:
        if isinstance(item, Usg):
            head.append([Token("usg", _squash(item.text))])
        elif isinstance(item, Def):
            head.append([Token("def", _squash(item.text))])
        elif isinstance(item, Xr):
            head.append(_xr_tokens(item))
        elif isinstance(item, GramGrp):
            head.extend(_gram_items(item, opts.gender_style))
        elif isinstance(item, Cit) and opts.include_citations:
            cits.append(_cit_tokens(item))
        elif isinstance(item, Sense):
            subs.append(_sense_tokens(item, opts))
    out = _join(head, " ")
    if cits:
        if out:
            out.append(_sep(": "))
        out.extend(_join(cits, "; "))
    if subs:
        if out:
            out.append(_sep("; "))
        out.extend(_join(subs, "; "))
    return out


def _xr_tokens(xr: Xr) -> list[Token]:
    parts = []
    for item in xr.content:
        if isinstance(item, Ref):
            parts.append(_ref_tokens(item))
        elif isinstance(item, str) and _squash(item):
            parts.append([Token("xr", _squash(item))])
    return _join(parts, " ")


def _etym_tokens(etym: Etym) -> list[Token]:
    parts = []
    for item in etym.content:
        if isinstance(item, str):
            if _squash(item):
                parts.append([Token("etym", _squash(item))])
        elif isinstance(item, Def):
            parts.append([Token("def", f"‚{_squash(item.text)}‘")])
        elif isinstance(item, Ref):
            parts.append(_ref_tokens(item))
        elif isinstance(item, Opaque):
            parts.append([Token("etym", _squash(item.element.text_content()))])
    return _join(parts, " ")


def _entry_blocks(entry: TeiEntry, opts: RenderOptions) -> list[list[Token]]:
    blocks = []
    for form in entry.forms:
        blocks.append(_form_tokens(form))
    grams = [item for form in entry.forms for g in form.gram_grps
             for item in _gram_items(g, opts.gender_style)]
    blocks.append(_join(grams, " "))
    blocks.append(_join([_sense_tokens(s, opts) for s in entry.senses], "; "))
    if opts.include_etym and entry.etym is not None:
        blocks.append(_etym_tokens(entry.etym))
    for i, hom in enumerate(entry.homographs, 1):
        blocks.append([Token("label", f"{i}."), _sep(" ")] + _join(_entry_blocks(hom, opts), ", "))
    return blocks


# -- print -----------------------------------------------------------------------


def print_tokens(entry: TeiEntry, opts: RenderOptions = RenderOptions()) -> list[Token]:
    return _join(_entry_blocks(entry, opts), ", ")


def render_print(entry: TeiEntry, opts: RenderOptions = RenderOptions()) -> str:
    """One line per entry: form block, grammar, senses, etymology."""
    return "".join(t.text for t in print_tokens(entry, opts))


# -- expanded --------------------------------------------------------------------


def _paradigm_sources(grp: GramGrp, headword: str):
    grams = {g.gram_type: _squash(g.text) for g in grp.grams}
    if "genitive" in grams and "plural" in grams:
        yield expand_paradigm(headword, grams["genitive"], grams["plural"])
    for nested in grp.nested:
        yield from _paradigm_sources(nested, headword)


def expanded_tokens(entry: TeiEntry, opts: RenderOptions = RenderOptions(media="expanded")) -> list[Token]:
    nl = "\n"
    lines = [_form_tokens(f) for f in entry.forms]
    for form in entry.forms:
        for grp in form.gram_grps:
            pos = [p.value or _squash(p.text) for p in grp.pos]
            if pos:
                lines.append([Token("label", "part of speech: ")] + _join([[Token("pos", p)] for p in pos], ", "))
            genders = [[Token("gender", gender_label(g, opts.gender_style))] for g in grp.genders]
            if genders:
                lines.append([Token("label", "gender: ")] + _join(genders, ", "))
            others = [i for i in _gram_items(grp, opts.gender_style)
                      if i[0].kind not in ("pos", "gender")]
            if others:
                lines.append([Token("label", "grammar: ")] + _join(others, " "))
    for n, sense in enumerate(entry.senses, 1):
        lines.append([Token("label", f"{sense.n or n}. ")] + _sense_tokens(
            Sense(sense.id, sense.level, None, sense.content), opts))
    if opts.include_etym and entry.etym is not None:
        lines.append([Token("label", "etymology: ")] + _etym_tokens(entry.etym))
    headwords = entry.headwords()
    if headwords:
        for form in entry.forms:
            for grp in form.gram_grps:
                for table in _paradigm_sources(grp, headwords[0]):
                    lines.append([Token("paradigm", table.format())])
    for i, hom in enumerate(entry.homographs, 1):
        lines.append([Token("label", f"{i}.")])
        lines.append(expanded_tokens(hom, opts))
    return _join(lines, nl)


def render_expanded(entry: TeiEntry, opts: RenderOptions = RenderOptions(media="expanded")) -> str:
    """Multi-line view with labelled grammar, numbered senses and paradigm tables."""
    return "".join(t.text for t in expanded_tokens(entry, opts)) + "\n"


# -- html ------------------------------------------------------------------------


def _span(cls: str, *children) -> XmlElement:
    return element("span", {"class": cls}, *children)


def _with_seps(nodes: list, sep: str) -> list:
    out: list = []
    for node in nodes:
        if out:
            out.append(sep)
        out.append(node)
    return out


def _html_form(form: Form) -> XmlElement:
    children: list = []
    pending = None
    for item in form.content:
        if isinstance(item, Orth):
            node = element("b", {"class": "headword"}, _squash(item.text))
        elif isinstance(item, Usg):
            node = _span("usg", _squash(item.text))
        elif isinstance(item, Pron):
            node = _span("pron", f"[{_squash(item.text)}]")
        else:
            continue
        if children:
            children.append(pending or " ")
        children.append(node)
        pending = ", " if isinstance(item, Orth) and item.rend == "sep:comma" else None
    return _span("form", *children)


def _html_gram(grp: GramGrp, opts: RenderOptions) -> list:
    nodes = []
    for item in grp.content:
        if isinstance(item, Pos):
            label = _squash(item.text) or item.value
            if label:
                nodes.append(element("b", {"class": "pos"}, label))
        elif isinstance(item, Gen):
            nodes.append(_span("gen", gender_label(item, opts.gender_style)))
        elif isinstance(item, (Gram, Number, Usg)):
            nodes.append(_span(type(item).__name__.lower(), _squash(item.text)))
        elif isinstance(item, GramGrp):
            nodes.extend(_html_gram(item, opts))
    return nodes


def _html_cit(cit: Cit) -> XmlElement:
    nodes = []
    for item in cit.content:
        if isinstance(item, Usg):
            nodes.append(_span("usg", _squash(item.text)))
        elif isinstance(item, Quote):
            if item.quote_type == "paraphrase":
                nodes.append(element("i", {"class": "paraphrase"}, _squash(item.text)))
            else:
                nodes.append(_span("quote", _squash(item.text)))
        elif isinstance(item, Bibl):
            nodes.append(_span("bibl", _squash(item.text)))
    return _span("cit", *_with_seps(nodes, " "))


def _html_ref(ref: Ref) -> XmlElement:
    attrs = {"href": f"#{ref.target}"} if ref.target else {}
    return element("a", attrs, _squash(ref.text))


def _html_senses(senses: list[Sense], opts: RenderOptions) -> XmlElement:
    items = []
    for sense in senses:
        body: list = []
        for item in sense.content:
            if isinstance(item, Def):
                body.append(_span("def", _squash(item.text)))
            elif isinstance(item, Usg):
                body.append(_span("usg", _squash(item.text)))
            elif isinstance(item, Cit) and opts.include_citations:
                body.append(_html_cit(item))
            elif isinstance(item, Xr):
                body.append(_span("xr", *[_html_ref(r) for r in item.content if isinstance(r, Ref)]))
        body = _with_seps(body, " ")
        if sense.subsenses:
            body.append(_html_senses(sense.subsenses, opts))
        attrs = {"value": sense.n} if sense.n and sense.n.isdigit() else {}
        items.append(element("li", attrs, *body))
    return element("ol", {"class": "senses"}, *items)


def _html_etym(etym: Etym) -> XmlElement:
    nodes: list = []
    for item in etym.content:
        if isinstance(item, str):
            if _squash(item):
                nodes.append(_squash(item))
        elif isinstance(item, Def):
            nodes.append(_span("def", f"‚{_squash(item.text)}‘"))
        elif isinstance(item, Ref):
            nodes.append("s.")
            nodes.append(_html_ref(item))
        elif isinstance(item, Opaque):
            nodes.append(_squash(item.element.text_content()))
    return _span("etym", *_with_seps(nodes, " "))


def _html_entry(entry: TeiEntry, opts: RenderOptions, anchor: bool) -> XmlElement:
    parts: list = [_html_form(f) for f in entry.forms]
    grams = [n for f in entry.forms for g in f.gram_grps for n in _html_gram(g, opts)]
    if grams:
        parts.append(_span("grammar", *_with_seps(grams, " ")))
    if entry.senses:
        parts.append(_html_senses(entry.senses, opts))
    if opts.include_etym and entry.etym is not None:
        parts.append(_html_etym(entry.etym))
    for hom in entry.homographs:
        parts.append(_html_entry(hom, opts, anchor=False))
    attrs = {"class": "entry" if anchor else "hom"}
    if anchor and entry.id:
        attrs["id"] = entry.id
    return element("div", attrs, *_with_seps(parts, " "))


def html_element(entry: TeiEntry, opts: RenderOptions = RenderOptions(media="html")) -> XmlElement:
    return _html_entry(entry, opts, anchor=True)


def render_html(entry: TeiEntry, opts: RenderOptions = RenderOptions(media="html")) -> str:
    """A single ``div`` per entry, anchored by the entry id."""
    return serialize(html_element(entry, opts), "compact")
