"""User-model estimation and single-error selection.

From a failed plan we infer which precondition facts the user apparently does
not know (they acted as if the fact did not exist), then pick exactly one
error to explain, minimizing a per-predicate understandability cost.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .pddl import Domain, GroundAction, Literal, holds
from .validation import Plan, ValidationReport, Verdict, scan_plan


class ExplanationKind(str, Enum):
    PRECONDITION = "precondition"
    GOAL = "goal"


@dataclass(frozen=True, order=True)
class ModelFact:
    """One schema-level precondition the true model contains."""

    schema_name: str
    literal: Literal  # over the schema's parameter variables


@dataclass(frozen=True)
class UserModelEstimate:
    unknown_facts: frozenset[ModelFact]
    known_facts: frozenset[ModelFact]


@dataclass(frozen=True)
class ConceptCostTable:
    """Per-predicate difficulty weights; lower cost explains first."""

    costs: dict[str, float]
    default_cost: float = 1.0

    def __post_init__(self):
        if self.default_cost <= 0 or any(c <= 0 for c in self.costs.values()):
            raise ValueError("concept costs must be positive")

    def cost(self, predicate: str) -> float:
        return self.costs.get(predicate, self.default_cost)


@dataclass(frozen=True)
class Explanation:
    kind: ExplanationKind
    fact: ModelFact | None = None
    step_index: int | None = None
    action: GroundAction | None = None
    violated_ground_literal: Literal | None = None
    unmet_goals: frozenset[Literal] = frozenset()
    contrast: frozenset[str] = frozenset()  # schemas able to establish the literal


def parse_cost_table(text: str) -> ConceptCostTable:
    """Parse `predicate cost` lines; a `default <value>` line sets the default."""
    costs: dict[str, float] = {}
    default = 1.0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"cost table line {lineno}: expected 'name value'")
        name, value = parts[0].lower(), float(parts[1])
        if name == "default":
            default = value
        else:
            costs[name] = value
    return ConceptCostTable(costs, default)


def all_model_facts(dom: Domain) -> frozenset[ModelFact]:
    """Every (schema, precondition-literal) pair of the domain."""
    return frozenset(
        ModelFact(a.name, lit) for a in dom.actions for lit in a.preconditions
    )


def facts_of_error(dom: Domain, action: GroundAction, violated: Literal) -> list[ModelFact]:
    """Schema-level precondition facts whose grounding is `violated`."""
    schema = dom.action(action.name)
    binding = schema.param_binding(action.args)
    return sorted(
        ModelFact(schema.name, lit)
        for lit in schema.preconditions
        if lit.substitute(binding) == violated
    )


def estimate_user_model(report: ValidationReport, dom: Domain) -> UserModelEstimate:
    """Most knowledgeable user model still consistent with the submitted plan.

    A fact is unknown iff some error in the report grounds it; everything
    else stays known.
    """
    unknown: set[ModelFact] = set()
    plan = report.plan
    for step, violated in report.all_errors:
        unknown.update(facts_of_error(dom, plan.steps[step], violated))
    return UserModelEstimate(
        unknown_facts=frozenset(unknown),
        known_facts=all_model_facts(dom) - unknown,
    )


def merge_session_estimate(
    prior_unknown: frozenset[ModelFact],
    report: ValidationReport,
    dom: Domain,
    prob,
) -> frozenset[ModelFact]:
    """Carry unknown facts across submissions within one session.

    New errors add facts; a fact is removed only when the latest plan
    satisfies it at the point the owning action is applied.
    """
    unknown = set(prior_unknown) | set(
        estimate_user_model(report, dom).unknown_facts
    )
    for step, state, _ in scan_plan(report.plan, dom, prob):
        action = report.plan.steps[step]
        schema = dom.action(action.name)
        binding = schema.param_binding(action.args)
        for lit in schema.preconditions:
            if holds(state, lit.substitute(binding)):
                unknown.discard(ModelFact(schema.name, lit))
    return frozenset(unknown)


def achievers(dom: Domain, lit: Literal) -> frozenset[str]:
    """Schemas with an effect able to establish `lit`'s predicate (same polarity)."""
    return frozenset(
        a.name
        for a in dom.actions
        if any(
            e.predicate == lit.predicate and e.positive == lit.positive
            for e in a.effects
        )
    )


def select_explanation(
    report: ValidationReport,
    est: UserModelEstimate,
    costs: ConceptCostTable,
    dom: Domain,
) -> Explanation:
    """Pick exactly one error to explain; goal failures report all unmet goals."""
    if report.verdict == Verdict.VALID:
        raise ValueError("cannot explain a valid plan")

    plan = report.plan
    candidates = [
        (step, lit)
        for step, lit in report.all_errors
        if any(f in est.unknown_facts for f in facts_of_error(dom, plan.steps[step], lit))
    ]
    if not candidates:
        candidates = list(report.all_errors)

    if candidates:
        step, lit = min(
            candidates,
            key=lambda c: (costs.cost(c[1].predicate), c[0], c[1].predicate, c[1].args),
        )
        action = plan.steps[step]
        fact = facts_of_error(dom, action, lit)[0]
        return Explanation(
            kind=ExplanationKind.PRECONDITION,
            fact=fact,
            step_index=step,
            action=action,
            violated_ground_literal=lit,
            contrast=achievers(dom, lit),
        )

    contrast = frozenset().union(
        *(achievers(dom, g) for g in report.unmet_goals)
    ) if report.unmet_goals else frozenset()
    return Explanation(
        kind=ExplanationKind.GOAL,
        unmet_goals=report.unmet_goals,
        contrast=contrast,
    )
