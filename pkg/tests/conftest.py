import json
from pathlib import Path

import pytest

from plantutor.bundles import load_bundles, default_bundle_dir
from plantutor.validation import parse_plan

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def bundles():
    loaded, errors = load_bundles(default_bundle_dir())
    assert not errors, f"bundle load errors: {errors}"
    return loaded


@pytest.fixture(scope="session")
def tabletop(bundles):
    return bundles["tabletop"]


@pytest.fixture(scope="session")
def tabletop_p1(tabletop):
    return tabletop.problems["p1"].problem


@pytest.fixture(scope="session")
def walled_workspace_text():
    return (FIXTURES / "walled_p1.json").read_text()


@pytest.fixture(scope="session")
def flawed_corpus(bundles):
    """(bundle, problem-entry, plan) triples for every hand-authored bad plan."""
    raw = json.loads((FIXTURES / "flawed_plans.json").read_text())
    out = []
    for domain_id, problem_id, lines in raw:
        bundle = bundles[domain_id]
        entry = bundle.problems[problem_id]
        plan = parse_plan("\n".join(lines), bundle.domain)
        out.append((bundle, entry, plan))
    return out
