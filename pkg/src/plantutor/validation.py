"""Step-by-step plan simulation with a complete error report.

The official verdict stops at the first inapplicable step.  A second
continue-on-failure pass (pretend violated preconditions held, apply the
effects anyway) collects every error in the plan so the explainer can choose
among them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .pddl import (
    Domain,
    GroundAction,
    Literal,
    PddlError,
    Problem,
    State,
    applicable,
    apply_effects,
    check_ground_action,
    holds,
)


class Verdict(str, Enum):
    VALID = "valid"
    PRECONDITION_FAILURE = "precondition-failure"
    GOAL_FAILURE = "goal-failure"


@dataclass(frozen=True)
class Plan:
    steps: tuple[GroundAction, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def to_text(self) -> str:
        return "\n".join(str(s) for s in self.steps) + ("\n" if self.steps else "")


@dataclass(frozen=True)
class ValidationReport:
    verdict: Verdict
    plan: Plan
    states: tuple[State, ...]  # official prefix: executed steps + 1
    failing_step: int | None = None
    violated_preconditions: frozenset[Literal] = frozenset()
    unmet_goals: frozenset[Literal] = frozenset()
    all_errors: tuple[tuple[int, Literal], ...] = ()


def parse_plan(text: str, dom: Domain) -> Plan:
    """Parse the line-per-step plan format: `(action-name arg1 arg2 ...)`."""
    steps: list[GroundAction] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        if not (line.startswith("(") and line.endswith(")")):
            raise PddlError("syntax", f"plan step must be parenthesized: {raw!r}", lineno)
        parts = line[1:-1].split()
        if not parts:
            raise PddlError("syntax", "empty plan step", lineno)
        name, *args = (p.lower() for p in parts)
        if not dom.has_action(name):
            raise PddlError("unknown-schema", f"no action named {name!r}", lineno)
        steps.append(GroundAction(name, tuple(args)))
    return Plan(tuple(steps))


def validate(plan: Plan, dom: Domain, prob: Problem) -> ValidationReport:
    """Simulate `plan` from the initial state and report the outcome."""
    for step in plan.steps:
        check_ground_action(dom, prob, step)  # malformed plan, not a mistake

    states: list[State] = [prob.init]
    failing_step: int | None = None
    violated_at_failure: frozenset[Literal] = frozenset()
    for i, step in enumerate(plan.steps):
        ok, violated = applicable(states[-1], step, dom)
        if not ok:
            failing_step = i
            violated_at_failure = violated
            break
        states.append(apply_effects(states[-1], step, dom))

    all_errors = tuple(
        (i, lit) for i, _, violated in scan_plan(plan, dom, prob)
        for lit in sorted(violated)
    )

    if failing_step is not None:
        return ValidationReport(
            verdict=Verdict.PRECONDITION_FAILURE,
            plan=plan,
            states=tuple(states),
            failing_step=failing_step,
            violated_preconditions=violated_at_failure,
            all_errors=all_errors,
        )

    unmet = frozenset(g for g in prob.goal if not holds(states[-1], g))
    if unmet:
        return ValidationReport(
            verdict=Verdict.GOAL_FAILURE,
            plan=plan,
            states=tuple(states),
            unmet_goals=unmet,
            all_errors=all_errors,
        )
    return ValidationReport(verdict=Verdict.VALID, plan=plan, states=tuple(states))


def scan_plan(
    plan: Plan, dom: Domain, prob: Problem
) -> list[tuple[int, State, frozenset[Literal]]]:
    """Continue-on-failure pass.

    Returns, per step, the state the step was attempted in and the set of
    violated precondition literals (empty when the step applied cleanly).
    Effects are applied even when preconditions fail.
    """
    out: list[tuple[int, State, frozenset[Literal]]] = []
    state = prob.init
    for i, step in enumerate(plan.steps):
        _, violated = applicable(state, step, dom)
        out.append((i, state, violated))
        state = apply_effects(state, step, dom)
    return out


def scan_state_before(plan: Plan, dom: Domain, prob: Problem, step: int) -> State:
    """State in which `step` is attempted under continue-on-failure replay."""
    state = prob.init
    for s in plan.steps[:step]:
        state = apply_effects(state, s, dom)
    return state
