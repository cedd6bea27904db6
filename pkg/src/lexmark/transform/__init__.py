from importlib import resources
from pathlib import Path

from .dsl import RuleSyntaxError, compile_rule, compile_ruleset
from .engine import (
    ChooseByGuard,
    CopyAttr,
    Drop,
    Emit,
    MatchPattern,
    Recurse,
    RuleError,
    Ruleset,
    TemplateRule,
    apply,
    apply_to_element,
)
from .lmf_mapping import LmfHeuristicWarning, LmfMappingWarning, ruleset_tei_to_lmf, tei_to_lmf

BUILTIN_RULESETS = ("tei-to-iso1951", "tei-to-lmf")


def ruleset_tei_to_iso() -> Ruleset:
    text = resources.files("lexmark").joinpath("data/tei-to-iso1951.rules").read_text(encoding="utf-8")
    return compile_ruleset(text, "tei-to-iso1951")


def load_ruleset(name_or_path: str) -> Ruleset:
    """Resolve a built-in node-level ruleset by name, or compile a rule file."""
    if name_or_path == "tei-to-iso1951":
        return ruleset_tei_to_iso()
    if name_or_path == "tei-to-lmf":
        raise ValueError("tei-to-lmf is a model-level mapping; use tei_to_lmf()")
    path = Path(name_or_path)
    return compile_ruleset(path.read_text(encoding="utf-8"), path.stem)
