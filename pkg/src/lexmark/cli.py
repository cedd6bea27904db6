"""Command-line front end: validate, convert, render and inspect dictionary files."""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, TextIO

from .entry import BindingError, MissingHeadwordError, UnknownElementError, bind_tei, find_entries, unbind_lmf, unbind_tei
from .grammar import (
    DEFAULT_REF_ATTRS,
    ERROR,
    WARNING,
    Diagnostic,
    SchemaError,
    check_refs,
    default_schema,
    load_schema_file,
    validate,
)
from .render import RenderOptions, render
from .transform import LmfHeuristicWarning, LmfMappingWarning, apply_to_element, load_ruleset, tei_to_lmf
from .xmltree import WellFormednessError, XmlDocument, element, element_paths, parse, qname, serialize

EXIT_OK, EXIT_ERRORS, EXIT_USAGE = 0, 1, 2
COMMANDS = ("validate", "convert", "render", "inspect")
TARGETS = ("tei", "iso1951", "lmf")
SCHEMA_ENV = "LEXMARK_SCHEMA"


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    inputs: list = field(default_factory=list)  # paths; "-" or empty means stdin
    schema_path: Optional[str] = None
    ruleset: Optional[str] = None
    to: Optional[str] = None
    media: Optional[str] = None
    output: Optional[str] = None
    diag_format: str = "human"
    whole_dictionary: bool = False
    gender_style: str = "abbreviated"
    include_citations: bool = True
    include_etym: bool = True
    report_format: str = "text"

    def check(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.command == "convert" and self.to not in TARGETS:
            raise UsageError("convert requires --to tei|iso1951|lmf")
        if self.command == "render" and self.media is None:
            raise UsageError("render requires --media print|expanded|html")
        if self.diag_format not in ("human", "json"):
            raise UsageError("--diag-format must be human or json")


# -- input handling ------------------------------------------------------------------


def expand_inputs(inputs: list) -> list:
    """Directories become their ``*.xml`` files, recursively, in path order."""
    if not inputs:
        return ["-"]
    out = []
    for item in inputs:
        path = Path(item)
        if item != "-" and path.is_dir():
            out.extend(str(p) for p in sorted(path.rglob("*.xml")))
        else:
            out.append(item)
    return out


def _read(item: str, stdin: Optional[TextIO]) -> bytes:
    if item == "-":
        stream = stdin if stdin is not None else sys.stdin
        data = stream.buffer.read() if hasattr(stream, "buffer") else stream.read()
        return data.encode("utf-8") if isinstance(data, str) else data
    return Path(item).read_bytes()


@dataclass
class _Loaded:
    name: str
    doc: Optional[XmlDocument] = None
    fatal: Optional[Diagnostic] = None


def _load(item: str, stdin) -> _Loaded:
    name = "<stdin>" if item == "-" else item
    try:
        data = _read(item, stdin)
    except OSError as exc:
        return _Loaded(name, fatal=Diagnostic(ERROR, "io-error", str(exc.strerror or exc), name))
    try:
        return _Loaded(name, doc=parse(data, name))
    except WellFormednessError as exc:
        return _Loaded(name, fatal=Diagnostic(
            ERROR, "not-well-formed", exc.message, name, exc.line, exc.column))


def _binding_diagnostic(exc: BindingError, name: str) -> Diagnostic:
    code = {UnknownElementError: "unknown-element", MissingHeadwordError: "missing-headword"}.get(
        type(exc), "binding-error")
    return Diagnostic(ERROR, code, str(exc), name, getattr(exc, "line", 0), getattr(exc, "column", 0))


def _warning_diagnostics(caught, name: str, line: int, column: int) -> list:
    out = []
    for w in caught:
        code = {LmfMappingWarning: "lmf-mapping", LmfHeuristicWarning: "lmf-heuristic"}.get(
            w.category, "render-warning")
        out.append(Diagnostic(WARNING, code, str(w.message), name, line, column))
    return out


# -- commands ------------------------------------------------------------------------


def _ids(doc: XmlDocument) -> set:
    id_name = qname("xml:id")
    return {el.get(id_name) for _, el in element_paths(doc.root) if el.get(id_name) is not None}


def _validate(cfg: CliConfig, loaded: list, schema) -> dict:
    ids_by_file = {f.name: _ids(f.doc) for f in loaded if f.doc is not None}
    results = {}
    for f in loaded:
        if f.doc is None:
            continue
        others = set().union(*(v for k, v in ids_by_file.items() if k != f.name))
        diags = validate(f.doc.root, schema, source_name=f.name)
        diags += check_refs(f.doc, whole_dictionary=cfg.whole_dictionary, external_ids=others)
        results[f.name] = ([], diags)
    return results


def _bind_all(doc: XmlDocument, name: str, diags: list) -> list:
    entries = []
    for el in find_entries(doc.root):
        try:
            entries.append((el, bind_tei(el)))
        except BindingError as exc:
            diags.append(_binding_diagnostic(exc, name))
    return entries


def _convert(cfg: CliConfig, f: _Loaded, ruleset) -> tuple:
    diags: list = []
    if cfg.to == "iso1951":
        tree = apply_to_element(ruleset, f.doc.root, "Dictionary")
        return [serialize(tree, "pretty")], diags
    entries = _bind_all(f.doc, f.name, diags)
    if cfg.to == "tei":
        trees = [unbind_tei(e) for _, e in entries]
        wrapper = "dictionary"
    else:
        trees = []
        for el, entry in entries:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                trees.append(unbind_lmf(tei_to_lmf(entry)))
            diags += _warning_diagnostics(caught, f.name, el.line, el.column)
        wrapper = "Lexicon"
    if len(trees) == 1 and f.doc.root.local in ("entry", "entryFree", "hom"):
        tree = trees[0]
    else:
        tree = element(wrapper, None, *trees)
    return [serialize(tree, "pretty")], diags


def _render(cfg: CliConfig, f: _Loaded, opts: RenderOptions) -> tuple:
    diags: list = []
    out = []
    for el, entry in _bind_all(f.doc, f.name, diags):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            text = render(entry, opts)
        diags += _warning_diagnostics(caught, f.name, el.line, el.column)
        out.append(text if text.endswith("\n") else text + "\n")
    return out, diags


def inspect_document(doc: XmlDocument, external_ids=()) -> dict:
    """Ids, references with resolution status, entry count and element histogram."""
    id_name = qname("xml:id")
    ref_attrs: dict = {}
    for el_name, attr in DEFAULT_REF_ATTRS:
        ref_attrs.setdefault(el_name, []).append(qname(attr))
    ids, refs, histogram = [], [], Counter()
    for _, el in element_paths(doc.root):
        histogram[el.local] += 1
        if el.get(id_name) is not None:
            ids.append(el.get(id_name))
        for attr in ref_attrs.get(el.local, ()):
            target = el.get(attr)
            if target is not None:
                refs.append(target)
    known = set(ids) | set(external_ids)
    return {
        "file": doc.source_name,
        "entries": len(find_entries(doc.root)),
        "ids": ids,
        "refs": [{"target": t, "resolved": t in known} for t in refs],
        "elements": dict(sorted(histogram.items())),
    }


def format_report(report: dict) -> str:
    lines = [f"file: {report['file']}", f"entries: {report['entries']}",
             "ids: " + (", ".join(report["ids"]) or "-"), "refs:"]
    for ref in report["refs"]:
        lines.append(f"  {ref['target']} -> {'resolved' if ref['resolved'] else 'unresolved'}")
    if not report["refs"]:
        lines[-1] = "refs: -"
    lines.append("elements:")
    lines.extend(f"  {name} {count}" for name, count in report["elements"].items())
    return "\n".join(lines) + "\n"


def _inspect(cfg: CliConfig, loaded: list) -> dict:
    ids_by_file = {f.name: _ids(f.doc) for f in loaded if f.doc is not None}
    results = {}
    for f in loaded:
        if f.doc is None:
            continue
        others = set().union(*(v for k, v in ids_by_file.items() if k != f.name))
        report = inspect_document(f.doc, others)
        text = (json.dumps(report, ensure_ascii=False) + "\n" if cfg.report_format == "json"
                else format_report(report))
        results[f.name] = ([text], [])
    return results


# -- driver --------------------------------------------------------------------------


def _emit_diagnostic(d: Diagnostic, fmt: str, stream: TextIO):
    if fmt == "json":
        stream.write(json.dumps(d.to_record(), ensure_ascii=False) + "\n")
    else:
        stream.write(d.format() + "\n")


def _load_schema(cfg: CliConfig):
    path = cfg.schema_path or os.environ.get(SCHEMA_ENV)
    if not path:
        return default_schema()
    try:
        return load_schema_file(path)
    except OSError as exc:
        raise UsageError(f"cannot read schema {path}: {exc.strerror or exc}") from exc
    except SchemaError as exc:
        raise UsageError(f"invalid schema {path}: {exc}") from exc


def run(cfg: CliConfig, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None,
        stdin: Optional[TextIO] = None) -> int:
    """Execute one command over all inputs and return the exit code."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    try:
        cfg.check()
        schema = _load_schema(cfg) if cfg.command == "validate" else None
        ruleset = None
        if cfg.command == "convert" and cfg.to == "iso1951":
            ruleset = load_ruleset(cfg.ruleset or "tei-to-iso1951")
        opts = None
        if cfg.command == "render":
            opts = RenderOptions(cfg.media, cfg.gender_style, cfg.include_citations, cfg.include_etym)
    except (UsageError, ValueError, OSError) as exc:
        stderr.write(f"lexmark: {exc}\n")
        return EXIT_USAGE

    loaded = [_load(item, stdin) for item in expand_inputs(cfg.inputs)]
    if cfg.command == "validate":
        results = _validate(cfg, loaded, schema)
    elif cfg.command == "inspect":
        results = _inspect(cfg, loaded)
    else:
        results = {}
        for f in loaded:
            if f.doc is not None:
                results[f.name] = (_convert(cfg, f, ruleset) if cfg.command == "convert"
                                   else _render(cfg, f, opts))

    payload: list = []
    code = EXIT_OK
    for f in loaded:
        if f.fatal is not None:
            _emit_diagnostic(f.fatal, cfg.diag_format, stderr)
            code = EXIT_USAGE
            continue
        chunks, diags = results[f.name]
        for d in diags:
            _emit_diagnostic(d, cfg.diag_format, stderr)
            if d.is_error and code == EXIT_OK:
                code = EXIT_ERRORS
        payload.extend(chunks)

    if payload:
        text = "".join(c if c.endswith("\n") else c + "\n" for c in payload)
        if cfg.output and cfg.output != "-":
            Path(cfg.output).write_text(text, encoding="utf-8")
        else:
            stdout.write(text)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lexmark", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("inputs", nargs="*", help="XML files or directories; '-' or nothing reads stdin")
    common.add_argument("-o", "--output", help="write the payload to this file instead of stdout")
    common.add_argument("--diag-format", choices=("human", "json"), default="human")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check documents against a schema")
    p.add_argument("--schema", dest="schema_path", help=f"schema file (default: ${SCHEMA_ENV} or built-in)")
    p.add_argument("--whole-dictionary", action="store_true",
                   help="treat unresolved references as errors")

    p = sub.add_parser("convert", parents=[common], help="convert entries to another encoding")
    p.add_argument("--to", choices=TARGETS, required=True)
    p.add_argument("--ruleset", help="built-in ruleset name or rule file (iso1951 only)")

    p = sub.add_parser("render", parents=[common], help="render entries for a medium")
    p.add_argument("--media", choices=("print", "expanded", "html"), required=True)
    p.add_argument("--gender-style", choices=("abbreviated", "long"), default="abbreviated")
    p.add_argument("--no-citations", dest="include_citations", action="store_false")
    p.add_argument("--no-etym", dest="include_etym", action="store_false")

    p = sub.add_parser("inspect", parents=[common], help="list ids, references and element counts")
    p.add_argument("--format", dest="report_format", choices=("text", "json"), default="text")
    return parser


def config_from_args(args: argparse.Namespace) -> CliConfig:
    known = CliConfig.__dataclass_fields__
    return CliConfig(**{k: v for k, v in vars(args).items() if k in known})


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
