"""Domain bundles: packaged unit of domain, problems, geometry, NL templates,
and concept costs.  Bundles load at startup; a broken bundle is reported and
skipped without blocking the others."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .explain import ConceptCostTable, parse_cost_table
from .nlg import TemplateSet, parse_templates, _SLOT_RE
from .pddl import Domain, PddlError, Problem, parse_domain, parse_problem
from .tamp import Workspace, WorkspaceError, bind_geometry, load_workspace


class BundleError(Exception):
    pass


@dataclass(frozen=True)
class ProblemEntry:
    id: str
    problem: Problem
    workspace: Workspace       # unbound template geometry
    good_plan_text: str | None  # reference solution, when shipped


@dataclass(frozen=True)
class DomainBundle:
    id: str
    title: str
    blurb: str
    domain: Domain
    problems: dict[str, ProblemEntry]
    templates: TemplateSet
    costs: ConceptCostTable

    def bound_workspace(self, problem_id: str) -> Workspace:
        entry = self.problems[problem_id]
        return bind_geometry(entry.problem, entry.workspace)


def default_bundle_dir() -> Path:
    return Path(__file__).parent / "data" / "bundles"


def load_bundle(path: Path) -> DomainBundle:
    """Load one bundle directory and check every cross-reference."""
    manifest_path = path / "bundle.json"
    if not manifest_path.exists():
        raise BundleError(f"{path}: missing bundle.json")
    manifest = json.loads(manifest_path.read_text())
    try:
        domain = parse_domain((path / manifest["domain"]).read_text())
        templates = parse_templates((path / manifest["templates"]).read_text())
        costs = parse_cost_table((path / manifest["costs"]).read_text())
    except (PddlError, ValueError, OSError, KeyError) as exc:
        raise BundleError(f"{path}: {exc}") from exc

    _check_templates(domain, templates, path)

    problems: dict[str, ProblemEntry] = {}
    for entry in manifest.get("problems", []):
        pid = entry["id"]
        try:
            problem = parse_problem((path / entry["problem"]).read_text(), domain)
            workspace = load_workspace((path / entry["workspace"]).read_text())
            bind_geometry(problem, workspace)  # fail at load, not at submit time
        except (PddlError, WorkspaceError, OSError) as exc:
            raise BundleError(f"{path} problem {pid!r}: {exc}") from exc
        for action in domain.actions:
            ann = workspace.annotations.get(action.name)
            if ann is None:
                raise BundleError(
                    f"{path} problem {pid!r}: no annotation for action {action.name!r}"
                )
            declared = {v for v, _ in action.params}
            for var in (ann.mover, ann.target, ann.attach, ann.detach):
                if var is not None and var not in declared:
                    raise BundleError(
                        f"{path} problem {pid!r}: annotation of {action.name!r} "
                        f"names unknown parameter {var!r}"
                    )
        plan_text = None
        if "plan" in entry:
            plan_text = (path / entry["plan"]).read_text()
        problems[pid] = ProblemEntry(pid, problem, workspace, plan_text)

    return DomainBundle(
        id=manifest.get("id", path.name),
        title=manifest.get("title", path.name),
        blurb=manifest.get("blurb", ""),
        domain=domain,
        problems=problems,
        templates=templates,
        costs=costs,
    )


def _check_templates(domain: Domain, templates: TemplateSet, path: Path) -> None:
    arities = {a.name: a.arity for a in domain.actions}
    arities.update({p.name: p.arity for p in domain.predicates})
    tables = [
        templates.action_templates,
        templates.predicate_templates,
        templates.negative_templates,
    ]
    for table in tables:
        for name, template in table.items():
            if name not in arities:
                raise BundleError(f"{path}: template for unknown symbol {name!r}")
            for m in _SLOT_RE.finditer(template):
                if int(m.group(1)) >= arities[name]:
                    raise BundleError(
                        f"{path}: slot {m.group(0)} out of range in template "
                        f"for {name!r}"
                    )


def load_bundles(directory: Path) -> tuple[dict[str, DomainBundle], dict[str, str]]:
    """Load every bundle under `directory`; returns (bundles, load errors)."""
    bundles: dict[str, DomainBundle] = {}
    errors: dict[str, str] = {}
    for child in sorted(directory.iterdir()):
        if not child.is_dir():
            continue
        try:
            bundle = load_bundle(child)
            bundles[bundle.id] = bundle
        except Exception as exc:  # one bad bundle never blocks others
            errors[child.name] = str(exc)
    return bundles, errors
