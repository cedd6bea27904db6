"""Document-level ID/IDREF consistency."""

from __future__ import annotations

from typing import Iterable, Optional

from ..xmltree import XmlDocument, element_paths, qname
from .diagnostics import ERROR, WARNING, Diagnostic

DEFAULT_REF_ATTRS = (
    ("ref", "target"),
    ("Ptr", "href"),
    ("etymologicalLink", "source"),
    ("etymologicalLink", "target"),
)


def check_refs(
    doc: XmlDocument,
    id_attr: str = "xml:id",
    ref_attrs: Optional[Iterable[tuple[str, str]]] = None,
    whole_dictionary: bool = False,
    external_ids: Iterable[str] = (),
) -> list[Diagnostic]:
    """Report duplicate ids and references that resolve to no id in ``doc``.

    Unresolved references are warnings unless ``whole_dictionary`` is set, in
    which case the document is taken to be the complete dictionary.
    ``external_ids`` are ids defined elsewhere, e.g. in other files of a batch.
    """
    id_name = qname(id_attr)
    wanted = {}
    for el_name, attr in (DEFAULT_REF_ATTRS if ref_attrs is None else ref_attrs):
        wanted.setdefault(el_name, []).append(qname(attr))
    source = doc.source_name
    diagnostics = []
    ids: dict[str, object] = {}
    refs = []
    for path, el in element_paths(doc.root):
        value = el.get(id_name)
        if value is not None:
            if value in ids:
                diagnostics.append(Diagnostic(
                    ERROR, "duplicate-id", f"duplicate id {value!r}",
                    source, el.line, el.column, path))
            else:
                ids[value] = el
        for attr in wanted.get(el.local, ()):
            target = el.get(attr)
            if target is not None:
                refs.append((path, el, attr, target))
    severity = ERROR if whole_dictionary else WARNING
    known = set(external_ids)
    for path, el, attr, target in refs:
        if target not in ids and target not in known:
            diagnostics.append(Diagnostic(
                severity, "unresolved-ref",
                f"unresolved reference {target!r} in {el.local}/@{attr.qualified}",
                source, el.line, el.column, path))
    return diagnostics
