"""Template-rule tree transformation.

Each element is handled by the best matching rule: highest priority wins,
ties go to the earlier rule.  Unmatched elements contribute their processed
children, text is copied through.  Attributes are never copied implicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..xmltree import XmlElement, XmlName, XmlNode, qname


@dataclass(frozen=True)
class MatchPattern:
    element: str
    attr_predicates: tuple = ()  # (name, required value)
    parent: Optional[MatchPattern] = None
    guard: Optional[int] = None  # minimum number of element children

    @property
    def specificity(self) -> int:
        return (len(self.attr_predicates) + 2 * (self.parent is not None)
                + (self.guard is not None))

    def matches(self, el: XmlElement, parent: Optional[XmlElement]) -> bool:
        if el.local != self.element:
            return False
        for name, required in self.attr_predicates:
            if el.get(name) != required:
                return False
        if self.parent is not None:
            if parent is None or not self.parent.matches(parent, None):
                return False
        return True

    def __str__(self):
        preds = "".join(f"[{n}={v}]" for n, v in self.attr_predicates)
        text = f"{self.element}{preds}"
        if self.parent is not None:
            text = f"{self.parent}/{text}"
        if self.guard is not None:
            text += f" when children>={self.guard}"
        return text


@dataclass(frozen=True)
class CopyAttr:
    source: str


@dataclass(frozen=True)
class Recurse:
    pass


@dataclass(frozen=True)
class Drop:
    pass


@dataclass(frozen=True)
class Emit:
    name: str
    attrs: tuple = ()  # (target name, literal str | CopyAttr)
    body: tuple = ()


@dataclass(frozen=True)
class ChooseByGuard:
    min_children: int
    then: tuple
    otherwise: tuple


Action = Union[Emit, Recurse, Drop, ChooseByGuard]


class RuleError(ValueError):
    pass


def _recurse_count(actions: tuple) -> int:
    total = 0
    for a in actions:
        if isinstance(a, Recurse):
            total += 1
        elif isinstance(a, Emit):
            total += _recurse_count(a.body)
        elif isinstance(a, ChooseByGuard):
            total += max(_recurse_count(a.then), _recurse_count(a.otherwise))
    return total


def _check_branches(actions: tuple):
    for a in actions:
        if isinstance(a, ChooseByGuard):
            for branch in (a.then, a.otherwise):
                if _recurse_count(branch) > 1:
                    raise RuleError("a constructor may recurse at most once")
                _check_branches(branch)
        elif isinstance(a, Emit):
            _check_branches(a.body)


@dataclass(frozen=True)
class TemplateRule:
    pattern: MatchPattern
    constructor: tuple
    priority: Optional[int] = None

    def __post_init__(self):
        if _recurse_count(self.constructor) > 1:
            raise RuleError(f"rule for {self.pattern} recurses more than once")
        _check_branches(self.constructor)
        if self.priority is None:
            object.__setattr__(self, "priority", self.pattern.specificity)

    def applies(self, el: XmlElement, parent: Optional[XmlElement]) -> bool:
        if not self.pattern.matches(el, parent):
            return False
        guard = self.pattern.guard
        if guard is None:
            return True
        # a guarded choose handles both outcomes itself
        if len(self.constructor) == 1 and isinstance(self.constructor[0], ChooseByGuard):
            return True
        return len(el.elements()) >= guard


@dataclass(frozen=True)
class Ruleset:
    rules: tuple = ()
    name: str = field(default="", compare=False)

    def select(self, el: XmlElement, parent: Optional[XmlElement]) -> Optional[TemplateRule]:
        best = None
        for rule in self.rules:
            if rule.applies(el, parent) and (best is None or rule.priority > best.priority):
                best = rule
        return best


def _build(actions: tuple, el: XmlElement, apply_children) -> list:
    out: list = []
    for action in actions:
        if isinstance(action, Recurse):
            out.extend(apply_children())
        elif isinstance(action, Drop):
            continue
        elif isinstance(action, ChooseByGuard):
            branch = action.then if len(el.elements()) >= action.min_children else action.otherwise
            out.extend(_build(branch, el, apply_children))
        elif isinstance(action, Emit):
            attrs = []
            for target, source in action.attrs:
                v = el.get(source.source) if isinstance(source, CopyAttr) else source
                if v is not None:
                    attrs.append((qname(target), v))
            body = _build(action.body, el, apply_children)
            out.append(XmlElement(XmlName("", "", action.name), tuple(attrs), tuple(body)))
        else:
            raise TypeError(f"unknown action {action!r}")
    return out


def apply(ruleset: Ruleset, source: XmlElement) -> list[XmlNode]:
    """Transform ``source`` top-down and return the resulting forest."""
    return list(XmlElement(XmlName("", "", "_"), (), tuple(_apply(ruleset, source, None))).children)


def _apply(ruleset: Ruleset, el: XmlElement, parent: Optional[XmlElement]) -> list:
    def children():
        out: list = []
        for child in el.children:
            if isinstance(child, str):
                out.append(child)
            else:
                out.extend(_apply(ruleset, child, el))
        return out

    rule = ruleset.select(el, parent)
    if rule is None:
        return children()
    return _build(rule.constructor, el, children)


def apply_to_element(ruleset: Ruleset, source: XmlElement, wrapper: str) -> XmlElement:
    """Apply and return a single element, wrapping the forest unless it already is one."""
    forest = apply(ruleset, source)
    elements = [n for n in forest if isinstance(n, XmlElement)]
    stray = [n for n in forest if isinstance(n, str) and n.strip()]
    if len(elements) == 1 and not stray:
        return elements[0]
    return XmlElement(XmlName("", "", wrapper), (), tuple(forest))
