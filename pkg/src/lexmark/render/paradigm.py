"""German noun paradigms from compressed genitive/plural suffix notation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

CASES = ("nominative", "genitive", "dative", "accusative")
NUMBERS = ("singular", "plural")

_DEUMLAUT = str.maketrans("äöüÄÖÜ", "aouAOU")


def deumlaut(text: str) -> str:
    return text.translate(_DEUMLAUT)


def _key(text: str) -> str:
    return deumlaut(text).casefold()


def overlap(headword: str, pattern: str) -> int:
    """Largest k where the headword's last k characters match the pattern's first k,
    ignoring umlauts and case."""
    p = _key(pattern[1:] if pattern.startswith("-") else pattern)
    h = _key(headword)
    for k in range(min(len(h), len(p)), 0, -1):
        if h[-k:] == p[:k]:
            return k
    return 0


def resolve_suffix(headword: str, pattern: str) -> str:
    """Apply a suffix pattern such as ``-es`` or ``-höfe`` to ``headword``.

    ``""`` leaves the headword uninflected and ``"-"`` is a zero suffix.  A
    pattern without a leading hyphen is taken as an explicit full form.
    """
    if not pattern.startswith("-"):
        return pattern or headword
    p = pattern[1:]
    k = overlap(headword, pattern)
    stem = headword[: len(headword) - k]
    # keep the headword's capitals inside the overlapping stretch
    merged = "".join(
        c.upper() if h.isupper() else c
        for c, h in zip(p[:k], headword[len(headword) - k:])
    )
    return stem + merged + p[k:]


def dative_plural(plural: str) -> str:
    return plural if plural.endswith(("n", "s")) else plural + "n"


@dataclass(frozen=True)
class ParadigmTable:
    headword: str
    cells: tuple  # ((case, number, form), ...) in CASES x NUMBERS order

    def form(self, case: str, number: str) -> str:
        for c, n, f in self.cells:
            if c == case and n == number:
                return f
        raise KeyError((case, number))

    def as_dict(self) -> dict:
        return {(c, n): f for c, n, f in self.cells}

    def format(self) -> str:
        width = max(len(c) for c in CASES)
        sg = max(len("singular"), *(len(self.form(c, "singular")) for c in CASES))
        lines = [f"{'':{width}}  {'singular':{sg}}  plural"]
        for case in CASES:
            lines.append(f"{case:{width}}  {self.form(case, 'singular'):{sg}}  {self.form(case, 'plural')}")
        return "\n".join(lines)


def expand_paradigm(
    headword: str,
    genitive_pattern: str,
    plural_pattern: str,
    dative_plural_form: Optional[str] = None,
) -> ParadigmTable:
    """Build the four-case, two-number table.

    The dative plural adds ``n`` unless the plural already ends in n or s.
    No plural was given when ``plural_pattern`` is empty, so the plural cells
    repeat the headword unchanged.  ``dative_plural_form`` overrides the rule.
    """
    genitive = resolve_suffix(headword, genitive_pattern)
    plural = resolve_suffix(headword, plural_pattern)
    if dative_plural_form is not None:
        dat_pl = dative_plural_form
    elif plural_pattern:
        dat_pl = dative_plural(plural)
    else:
        dat_pl = plural
    singular = {"nominative": headword, "genitive": genitive, "dative": headword, "accusative": headword}
    plurals = {"nominative": plural, "genitive": plural, "dative": dat_pl, "accusative": plural}
    cells = []
    for case in CASES:
        cells.append((case, "singular", singular[case]))
        cells.append((case, "plural", plurals[case]))
    return ParadigmTable(headword, tuple(cells))
