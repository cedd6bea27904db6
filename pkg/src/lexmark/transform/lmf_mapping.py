"""Model-level mapping from bound TEI entries to LMF lexical entries.

There are no node templates for this direction: the mapping works on the
typed entry, and the etymology decomposition is a heuristic.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

from ..entry.lmf import Etymon, EtymologicalLink, LmfEntry, LmfEtymology
from ..entry.tei import Def, Opaque, Ref, TeiEntry

# abbreviations used in German etymologies, mapped to the language names
# written into xml:lang of the etymon orth
LANGUAGE_ABBREVIATIONS = {
    "norw.": "norwegian",
    "anord.": "old norse",
    "schwed.": "swedish",
    "dän.": "danish",
    "engl.": "english",
    "aengl.": "old english",
    "frz.": "french",
    "afrz.": "old french",
    "ital.": "italian",
    "span.": "spanish",
    "lat.": "latin",
    "mlat.": "medieval latin",
    "griech.": "greek",
    "russ.": "russian",
    "niederl.": "dutch",
    "nl.": "dutch",
    "ahd.": "old high german",
    "mhd.": "middle high german",
}

_LANG = re.compile(
    r"(?<!\w)(" + "|".join(re.escape(k) for k in sorted(LANGUAGE_ABBREVIATIONS, key=len, reverse=True))
    + r")\s+([^,;()]+?)\s*(?:,|;|$)"
)

LOAN_MARKER = "Übernahme"


class LmfMappingWarning(UserWarning):
    """The etymology could not be decomposed; its text was kept as one note."""


class LmfHeuristicWarning(UserWarning):
    """A value was inferred heuristically rather than read from markup."""


def _squash(text: str) -> str:
    return " ".join(text.split())


def _flatten(content, keep_defs: bool) -> str:
    parts = []
    for item in content:
        if isinstance(item, str):
            parts.append(item)
        elif isinstance(item, Ref):
            parts.append(item.text)
        elif isinstance(item, Def):
            parts.append(item.text if keep_defs else " ")
        elif isinstance(item, Opaque):
            parts.append(item.element.text_content())
    return "".join(parts)


def _etymology(entry: TeiEntry, lemma_id: str) -> LmfEtymology:
    etym = entry.etym
    if etym is None:
        return LmfEtymology()
    text = _flatten(etym.content, keep_defs=False)
    match = _LANG.search(text)
    if match is None:
        warnings.warn(LmfMappingWarning(
            f"etymology of {entry.id or '(no id)'} has no recognizable etymon; kept as a note"), stacklevel=3)
        etymon = Etymon(id="l2", note=_squash(_flatten(etym.content, keep_defs=True)) or None)
    else:
        pos = next((p.value for f in entry.forms for g in f.gram_grps for p in g.pos if p.value), None)
        gloss = _squash(etym.defs[0].text) if etym.defs else None
        note = _squash(text[match.end():]) or None
        etymon = Etymon(
            id="l2",
            orth=match.group(2).strip(),
            orth_lang=LANGUAGE_ABBREVIATIONS[match.group(1)],
            pos=pos,
            gloss=gloss,
            note=note,
        )
    loan = LOAN_MARKER in _flatten(etym.content, keep_defs=True)
    cls = "loan word" if loan else "unspecified"
    warnings.warn(LmfHeuristicWarning(
        f"etymological class {cls!r} of {entry.id or '(no id)'} inferred from the etymology text"),
        stacklevel=3)
    return LmfEtymology((etymon,), (EtymologicalLink(etymon.id, lemma_id, cls),))


def tei_to_lmf(entry: TeiEntry) -> LmfEntry:
    """Map a bound TEI entry onto an LMF lexical entry.

    Headword orths become form representations, level-0 (or unlevelled)
    sense definitions become equivalents, and the etymology becomes one
    etymon linked to the lemma.
    """
    lemma_id = "l1"
    lemma = tuple((("writtenForm", text),) for text in entry.headwords())
    equivalents = []
    for sense in entry.senses:
        if sense.level in (None, 0):
            equivalents.extend((("writtenForm", _squash(d)),) for d in sense.defs)
    etymology = _etymology(entry, lemma_id) if entry.etym is not None else None
    return LmfEntry(lemma, tuple(equivalents), etymology, lemma_id)


@dataclass(frozen=True)
class ModelMapping:
    """A named entry-to-entry mapping, the model-level analogue of a ruleset."""

    name: str

    def apply(self, entry: TeiEntry) -> LmfEntry:
        return tei_to_lmf(entry)


def ruleset_tei_to_lmf() -> ModelMapping:
    return ModelMapping("tei-to-lmf")
