"""HTTP/JSON boundary.

Serves domain bundles, holds anonymous in-memory sessions with their evolving
user-model estimates, and runs refinement jobs on a bounded worker pool.
Sessions are mutated only under their own lock; everything else is a pure
function of the bundle files.
"""

from __future__ import annotations

import os
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .bundles import DomainBundle, default_bundle_dir, load_bundles
from .explain import (
    ModelFact,
    UserModelEstimate,
    all_model_facts,
    merge_session_estimate,
    select_explanation,
)
from .motion import PlannerConfig
from .nlg import render_action, render_explanation, render_literals
from .pddl import PddlError, ground_choices
from .serialize import explanation_to_dict, report_to_dict
from .tamp import FAILED, Trajectory, refine_plan, trajectory_to_dict, workspace_to_dict
from .validation import Verdict, parse_plan, validate


# ── Response schemas (the published wire contract) ──────────────────────────

class ProblemSummary(BaseModel):
    id: str
    goal: str


class DomainSummary(BaseModel):
    id: str
    title: str
    blurb: str
    problems: list[ProblemSummary]


class ActionParam(BaseModel):
    name: str
    type: str


class ActionDetail(BaseModel):
    name: str
    display: str
    params: list[ActionParam]


class ProblemChoices(BaseModel):
    id: str
    goal: str
    choices: dict[str, list[list[str]]]  # action -> per-parameter object lists


class DomainDetail(BaseModel):
    id: str
    title: str
    blurb: str
    actions: list[ActionDetail]
    problems: list[ProblemChoices]
    aliases: dict[str, str] = {}


class ProblemDetail(BaseModel):
    id: str
    domain: str
    goal: str
    objects: list[ActionParam]
    workspace: dict
    choices: dict[str, list[list[str]]]


class SessionOut(BaseModel):
    session_id: str
    created_at: str


class SubmissionOut(BaseModel):
    verdict: str
    report: dict
    explanation: dict | None = None
    paragraph: str | None = None
    repeat: bool = False
    job_id: str | None = None


class JobOut(BaseModel):
    id: str
    state: str
    trace: dict | None = None
    message: str | None = None


class PlanBody(BaseModel):
    domain: str
    plan: str


class ErrorBody(BaseModel):
    code: str
    message: str
    details: dict = {}


# ── Server state ─────────────────────────────────────────────────────────────

@dataclass
class Session:
    id: str
    created_at: str
    unknown_facts: dict[tuple[str, str], frozenset[ModelFact]] = field(default_factory=dict)
    explained_facts: dict[tuple[str, str], set[ModelFact]] = field(default_factory=dict)
    history: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


@dataclass
class Job:
    id: str
    state: str = "queued"  # queued -> running -> done | failed
    trace: dict | None = None
    message: str | None = None


class ApiError(HTTPException):
    def __init__(self, status: int, code: str, message: str, details: dict | None = None):
        super().__init__(status_code=status, detail={
            "code": code, "message": message, "details": details or {}
        })


def create_app(
    bundle_dir: Path | None = None,
    workers: int = 2,
    planner_mode: str = "grid",
) -> FastAPI:
    bundle_dir = bundle_dir or Path(
        os.environ.get("PLANTUTOR_BUNDLES", default_bundle_dir())
    )
    bundles, load_errors = load_bundles(bundle_dir)
    planner_cfg = PlannerConfig(mode=planner_mode)

    app = FastAPI(title="plantutor", version="0.1.0")
    app.state.bundles = bundles
    app.state.bundle_errors = load_errors
    app.state.sessions: dict[str, Session] = {}
    app.state.jobs: dict[str, Job] = {}
    app.state.executor = ThreadPoolExecutor(max_workers=workers)

    @app.exception_handler(HTTPException)
    async def handle_http_error(request: Request, exc: HTTPException):
        detail = exc.detail
        if not isinstance(detail, dict):
            detail = {"code": "error", "message": str(detail), "details": {}}
        return JSONResponse(status_code=exc.status_code, content=detail)

    def get_bundle(domain_id: str) -> DomainBundle:
        bundle = bundles.get(domain_id)
        if bundle is None:
            raise ApiError(404, "unknown-domain", f"no domain {domain_id!r}")
        return bundle

    def problem_choices(bundle: DomainBundle, problem_id: str) -> dict[str, list[list[str]]]:
        prob = bundle.problems[problem_id].problem
        return {
            a.name: [
                ground_choices(bundle.domain, prob, a.name, i)
                for i in range(a.arity)
            ]
            for a in bundle.domain.actions
        }

    @app.get("/api/domains", response_model=list[DomainSummary])
    def list_domains():
        return [
            DomainSummary(
                id=b.id,
                title=b.title,
                blurb=b.blurb,
                problems=[
                    ProblemSummary(
                        id=pid,
                        goal=render_literals(entry.problem.goal, b.templates),
                    )
                    for pid, entry in sorted(b.problems.items())
                ],
            )
            for _, b in sorted(bundles.items())
        ]

    @app.get("/api/domains/{domain_id}", response_model=DomainDetail)
    def get_domain(domain_id: str):
        b = get_bundle(domain_id)
        return DomainDetail(
            id=b.id,
            title=b.title,
            blurb=b.blurb,
            actions=[
                ActionDetail(
                    name=a.name,
                    display=b.templates.action_templates.get(a.name, a.name),
                    params=[ActionParam(name=v, type=t) for v, t in a.params],
                )
                for a in b.domain.actions
            ],
            problems=[
                ProblemChoices(
                    id=pid,
                    goal=render_literals(entry.problem.goal, b.templates),
                    choices=problem_choices(b, pid),
                )
                for pid, entry in sorted(b.problems.items())
            ],
            aliases=dict(b.templates.object_aliases),
        )

    @app.get("/api/domains/{domain_id}/problems/{problem_id}", response_model=ProblemDetail)
    def get_problem(domain_id: str, problem_id: str):
        b = get_bundle(domain_id)
        if problem_id not in b.problems:
            raise ApiError(404, "unknown-problem", f"no problem {problem_id!r}")
        entry = b.problems[problem_id]
        return ProblemDetail(
            id=problem_id,
            domain=domain_id,
            goal=render_literals(entry.problem.goal, b.templates),
            objects=[ActionParam(name=o, type=t) for o, t in entry.problem.objects],
            workspace=workspace_to_dict(b.bound_workspace(problem_id)),
            choices=problem_choices(b, problem_id),
        )

    @app.post("/api/sessions", response_model=SessionOut, status_code=201)
    def create_session():
        session = Session(
            id=uuid.uuid4().hex,
            created_at=datetime.now(timezone.utc).isoformat(),
        )
        app.state.sessions[session.id] = session
        return SessionOut(session_id=session.id, created_at=session.created_at)

    def run_refinement(job: Job, bundle: DomainBundle, problem_id: str, report):
        job.state = "running"
        try:
            ws = bundle.bound_workspace(problem_id)
            traj = refine_plan(report.plan, report, ws, planner_cfg, bundle.domain)
            job.trace = trajectory_to_dict(traj)
            if traj.status == FAILED:
                action = report.plan.steps[traj.failed_step]
                job.message = (
                    f"Step {traj.failed_step + 1} "
                    f"({render_action(action, bundle.templates)}) could not be "
                    f"turned into a motion: {traj.failure_reason}."
                )
                job.state = "failed"
            else:
                job.state = "done"
        except Exception as exc:
            job.message = str(exc)
            job.state = "failed"

    @app.post(
        "/api/sessions/{session_id}/problems/{problem_id}/plans",
        response_model=SubmissionOut,
    )
    def submit_plan(session_id: str, problem_id: str, body: PlanBody):
        session = app.state.sessions.get(session_id)
        if session is None:
            raise ApiError(404, "unknown-session", f"no session {session_id!r}")
        bundle = get_bundle(body.domain)
        if problem_id not in bundle.problems:
            raise ApiError(404, "unknown-problem", f"no problem {problem_id!r}")
        entry = bundle.problems[problem_id]
        try:
            plan = parse_plan(body.plan, bundle.domain)
            report = validate(plan, bundle.domain, entry.problem)
        except PddlError as exc:
            raise ApiError(
                400, "malformed-plan", str(exc), {"code": exc.code, "line": exc.line}
            )

        key = (body.domain, problem_id)
        with session.lock:
            if report.verdict == Verdict.VALID:
                job = Job(id=uuid.uuid4().hex)
                app.state.jobs[job.id] = job
                session.history.append(
                    {"problem": key, "verdict": report.verdict.value, "job": job.id}
                )
                app.state.executor.submit(
                    run_refinement, job, bundle, problem_id, report
                )
                return SubmissionOut(
                    verdict=report.verdict.value,
                    report=report_to_dict(report),
                    job_id=job.id,
                )

            prior = session.unknown_facts.get(key, frozenset())
            unknown = merge_session_estimate(
                prior, report, bundle.domain, entry.problem
            )
            session.unknown_facts[key] = unknown
            est = UserModelEstimate(
                unknown_facts=unknown,
                known_facts=all_model_facts(bundle.domain) - unknown,
            )
            explanation = select_explanation(report, est, bundle.costs, bundle.domain)
            explained = session.explained_facts.setdefault(key, set())
            repeat = explanation.fact is not None and explanation.fact in explained
            if explanation.fact is not None:
                explained.add(explanation.fact)
            session.history.append(
                {"problem": key, "verdict": report.verdict.value, "repeat": repeat}
            )
            return SubmissionOut(
                verdict=report.verdict.value,
                report=report_to_dict(report),
                explanation=explanation_to_dict(explanation),
                paragraph=render_explanation(explanation, bundle.domain, bundle.templates),
                repeat=repeat,
            )

    @app.get("/api/jobs/{job_id}", response_model=JobOut)
    def get_job(job_id: str):
        job = app.state.jobs.get(job_id)
        if job is None:
            raise ApiError(404, "unknown-job", f"no job {job_id!r}")
        return JobOut(id=job.id, state=job.state, trace=job.trace, message=job.message)

    return app
