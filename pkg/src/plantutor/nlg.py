"""Template-based natural language rendering of actions, literals, and
explanations.

Templates use positional slots `{0}`, `{1}`, ... for action/predicate
arguments; object names may carry display aliases.  A fallback renderer keeps
every operation total when a template is missing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .pddl import Domain, GroundAction, Literal
from .explain import Explanation, ExplanationKind

_SLOT_RE = re.compile(r"\{(\d+)\}")


@dataclass(frozen=True)
class TemplateSet:
    action_templates: dict[str, str] = field(default_factory=dict)
    predicate_templates: dict[str, str] = field(default_factory=dict)
    negative_templates: dict[str, str] = field(default_factory=dict)
    object_aliases: dict[str, str] = field(default_factory=dict)

    def alias(self, obj: str) -> str:
        return self.object_aliases.get(obj, obj)


def parse_templates(text: str) -> TemplateSet:
    """Parse the per-domain template file.

    Line formats: `action <name> = <template>`, `pred <name> = <template>`,
    `pred-neg <name> = <template>`, `alias <object> = <phrase>`; `#` comments.
    """
    actions: dict[str, str] = {}
    preds: dict[str, str] = {}
    negs: dict[str, str] = {}
    aliases: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        name, eq, template = rest.partition("=")
        if not eq:
            raise ValueError(f"template line {lineno}: missing '='")
        name = name.strip().lower()
        template = template.strip()
        table = {
            "action": actions, "pred": preds, "pred-neg": negs, "alias": aliases
        }.get(head)
        if table is None:
            raise ValueError(f"template line {lineno}: unknown kind {head!r}")
        table[name] = template
    return TemplateSet(actions, preds, negs, aliases)


def _fill(template: str, args: tuple[str, ...], t: TemplateSet) -> str:
    return _SLOT_RE.sub(lambda m: t.alias(args[int(m.group(1))]), template)


def render_action(a: GroundAction, t: TemplateSet) -> str:
    template = t.action_templates.get(a.name)
    if template is None:
        arglist = ", ".join(t.alias(x) for x in a.args)
        return f"do {a.name} with ({arglist})"
    return _fill(template, a.args, t)


def render_literal(lit: Literal, t: TemplateSet) -> str:
    positive = t.predicate_templates.get(lit.predicate)
    if lit.positive:
        if positive is None:
            return str(lit)
        return _fill(positive, lit.args, t)
    negative = t.negative_templates.get(lit.predicate)
    if negative is not None:
        return _fill(negative, lit.args, t)
    if positive is not None:
        return "it is not the case that " + _fill(positive, lit.args, t)
    return str(lit)


def render_literals(ls: frozenset[Literal] | set[Literal], t: TemplateSet) -> str:
    """Deterministic conjunction: sorted by predicate then args, oxford-free."""
    ordered = sorted(ls, key=lambda l: (l.predicate, l.args, not l.positive))
    if not ordered:
        return "nothing"
    parts = [render_literal(l, t) for l in ordered]
    if len(parts) == 1:
        return parts[0]
    return ", ".join(parts[:-1]) + " and " + parts[-1]


def render_explanation(e: Explanation, dom: Domain, t: TemplateSet) -> str:
    if e.kind == ExplanationKind.PRECONDITION:
        assert e.action is not None and e.fact is not None
        assert e.step_index is not None and e.violated_ground_literal is not None
        schema = dom.action(e.fact.schema_name)
        binding = schema.param_binding(e.action.args)
        required = e.fact.literal.substitute(binding)
        sentences = [
            f"Step {e.step_index + 1} ({render_action(e.action, t)}) cannot be executed.",
            f"The action {schema.name} requires that {render_literal(required, t)}.",
            f"At that point, {render_literal(e.violated_ground_literal.negated(), t)}.",
        ]
    else:
        sentences = [
            "The plan does not achieve the goal.",
            f"Still required: {render_literals(e.unmet_goals, t)}.",
        ]
    if e.contrast:
        names = ", ".join(sorted(e.contrast))
        sentences.append(f"This condition can be made true by: {names}.")
    return " ".join(sentences)
