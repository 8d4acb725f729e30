"""JSON-friendly views of engine values, shared by the CLI and the service
so both surfaces emit identical structures."""

from __future__ import annotations

from .explain import Explanation, ExplanationKind
from .pddl import Literal
from .validation import ValidationReport


def literal_to_dict(lit: Literal) -> dict:
    return {"predicate": lit.predicate, "args": list(lit.args), "positive": lit.positive}


def report_to_dict(report: ValidationReport) -> dict:
    return {
        "verdict": report.verdict.value,
        "steps": [str(s) for s in report.plan.steps],
        "failing_step": report.failing_step,
        "violated_preconditions": [
            literal_to_dict(l) for l in sorted(report.violated_preconditions)
        ],
        "unmet_goals": [literal_to_dict(l) for l in sorted(report.unmet_goals)],
        "all_errors": [
            {"step": step, "literal": literal_to_dict(lit)}
            for step, lit in report.all_errors
        ],
    }


def explanation_to_dict(e: Explanation) -> dict:
    out: dict = {"kind": e.kind.value, "contrast": sorted(e.contrast)}
    if e.kind == ExplanationKind.PRECONDITION:
        out.update(
            {
                "step_index": e.step_index,
                "action": str(e.action),
                "fact": {
                    "schema": e.fact.schema_name,
                    "literal": literal_to_dict(e.fact.literal),
                },
                "violated": literal_to_dict(e.violated_ground_literal),
            }
        )
    else:
        out["unmet_goals"] = [literal_to_dict(l) for l in sorted(e.unmet_goals)]
    return out
