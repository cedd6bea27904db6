from importlib import resources

from .derive import accepts, validate
from .diagnostics import ERROR, WARNING, Diagnostic
from .patterns import (
    Attribute,
    Choice,
    DanglingDefinitionError,
    Element,
    Empty,
    Interleave,
    OneOrMore,
    Opt,
    Pair,
    Pattern,
    Ref,
    Schema,
    SchemaError,
    SchemaSyntaxError,
    Seq,
    Text,
    ValueText,
    ZeroOrMore,
)
from .refs import DEFAULT_REF_ATTRS, check_refs
from .rnc import load_schema, load_schema_file


def default_schema_text() -> str:
    return resources.files("lexmark").joinpath("data/wdg.rnc").read_text(encoding="utf-8")


def default_schema() -> Schema:
    return load_schema(default_schema_text())
