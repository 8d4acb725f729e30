"""Batch front end: validate, explain, and refine plans without the service.

Exit codes: 0 valid / success, 1 usage or parse error, 2 precondition
failure, 3 goal failure, 4 refinement failure.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .bundles import default_bundle_dir
from .explain import (
    ConceptCostTable,
    estimate_user_model,
    parse_cost_table,
    select_explanation,
)
from .motion import GRID, RRT, PlannerConfig
from .nlg import TemplateSet, parse_templates, render_explanation, render_literals
from .pddl import PddlError, parse_domain, parse_problem
from .serialize import explanation_to_dict, report_to_dict
from .tamp import (
    COMPLETE,
    WorkspaceError,
    bind_geometry,
    load_workspace,
    refine_plan,
    trajectory_to_dict,
)
from .validation import Verdict, parse_plan, validate

EXIT_VALID = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_GOAL = 3
EXIT_REFINEMENT = 4

_VERDICT_EXIT = {
    Verdict.VALID: EXIT_VALID,
    Verdict.PRECONDITION_FAILURE: EXIT_PRECONDITION,
    Verdict.GOAL_FAILURE: EXIT_GOAL,
}


def _load(domain_file: str, problem_file: str, plan_file: str):
    try:
        dom = parse_domain(Path(domain_file).read_text())
        prob = parse_problem(Path(problem_file).read_text(), dom)
        plan = parse_plan(Path(plan_file).read_text(), dom)
    except (PddlError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    return dom, prob, plan


def _dump(payload: dict) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


@click.group()
def main():
    """Plan tutoring engine."""


@main.command("validate")
@click.argument("domain_file")
@click.argument("problem_file")
@click.argument("plan_file")
@click.option("--json", "as_json", is_flag=True, help="machine-readable report")
def cmd_validate(domain_file, problem_file, plan_file, as_json):
    """Simulate a plan and report its verdict."""
    dom, prob, plan = _load(domain_file, problem_file, plan_file)
    report = validate(plan, dom, prob)
    if as_json:
        _dump(report_to_dict(report))
    else:
        click.echo(f"verdict: {report.verdict.value}")
        if report.failing_step is not None:
            lits = ", ".join(str(l) for l in sorted(report.violated_preconditions))
            click.echo(f"step {report.failing_step + 1} failed; violated: {lits}")
        if report.unmet_goals:
            lits = ", ".join(str(l) for l in sorted(report.unmet_goals))
            click.echo(f"unmet goals: {lits}")
    sys.exit(_VERDICT_EXIT[report.verdict])


@main.command("explain")
@click.argument("domain_file")
@click.argument("problem_file")
@click.argument("plan_file")
@click.option("--costs", "costs_file", default=None, help="concept cost table file")
@click.option("--templates", "templates_file", default=None, help="NL template file")
@click.option("--json", "as_json", is_flag=True, help="emit the structured explanation")
def cmd_explain(domain_file, problem_file, plan_file, costs_file, templates_file, as_json):
    """Explain the single most approachable error in a flawed plan."""
    dom, prob, plan = _load(domain_file, problem_file, plan_file)
    try:
        costs = (
            parse_cost_table(Path(costs_file).read_text())
            if costs_file
            else ConceptCostTable({})
        )
        templates = (
            parse_templates(Path(templates_file).read_text())
            if templates_file
            else TemplateSet()
        )
    except (ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)

    report = validate(plan, dom, prob)
    if report.verdict == Verdict.VALID:
        if as_json:
            _dump({"verdict": "valid"})
        else:
            click.echo("plan is valid")
        sys.exit(EXIT_VALID)

    est = estimate_user_model(report, dom)
    explanation = select_explanation(report, est, costs, dom)
    if as_json:
        _dump(
            {
                "verdict": report.verdict.value,
                "explanation": explanation_to_dict(explanation),
            }
        )
    else:
        click.echo(render_explanation(explanation, dom, templates))
    sys.exit(_VERDICT_EXIT[report.verdict])


@main.command("refine")
@click.argument("domain_file")
@click.argument("problem_file")
@click.argument("plan_file")
@click.argument("workspace_file")
@click.option("--mode", type=click.Choice([GRID, RRT]), default=GRID)
@click.option("--seed", type=int, default=0, help="RRT random seed")
@click.option("--trace", "trace_file", default=None, help="write trace JSON here")
def cmd_refine(domain_file, problem_file, plan_file, workspace_file, mode, seed, trace_file):
    """Refine a valid plan into collision-free 2D trajectories."""
    dom, prob, plan = _load(domain_file, problem_file, plan_file)
    try:
        ws = bind_geometry(prob, load_workspace(Path(workspace_file).read_text()))
    except (WorkspaceError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)

    report = validate(plan, dom, prob)
    if report.verdict != Verdict.VALID:
        click.echo(f"error: plan is not valid ({report.verdict.value})", err=True)
        sys.exit(_VERDICT_EXIT[report.verdict])

    cfg = PlannerConfig(mode=mode, rrt_seed=seed)
    try:
        traj = refine_plan(plan, report, ws, cfg, dom)
    except WorkspaceError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)

    payload = trajectory_to_dict(traj)
    text = json.dumps(payload, indent=2, sort_keys=True)
    if trace_file:
        Path(trace_file).write_text(text + "\n")
    else:
        click.echo(text)
    if traj.status != COMPLETE:
        click.echo(
            f"refinement failed at step {traj.failed_step + 1}: {traj.failure_reason}",
            err=True,
        )
        sys.exit(EXIT_REFINEMENT)
    sys.exit(EXIT_VALID)


@main.command("serve")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
@click.option("--bundles", "bundle_dir", default=None, help="bundle directory")
@click.option("--workers", type=int, default=2, help="refinement worker count")
@click.option("--mode", type=click.Choice([GRID, RRT]), default=GRID)
def cmd_serve(host, port, bundle_dir, workers, mode):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    app = create_app(
        bundle_dir=Path(bundle_dir) if bundle_dir else default_bundle_dir(),
        workers=workers,
        planner_mode=mode,
    )
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
