import pytest
from hypothesis import given, strategies as st

from plantutor.explain import (
    ConceptCostTable,
    ExplanationKind,
    ModelFact,
    UserModelEstimate,
    all_model_facts,
    estimate_user_model,
    merge_session_estimate,
    parse_cost_table,
    select_explanation,
)
from plantutor.pddl import Literal, holds, parse_domain, parse_problem
from plantutor.validation import Verdict, parse_plan, scan_state_before, validate

SYNTH_DOMAIN = parse_domain(
    """
    (define (domain synth)
      (:predicates (p ?x) (q ?x) (r ?x))
      (:action ap :parameters (?x) :precondition (and (p ?x)) :effect (and (r ?x)))
      (:action aq :parameters (?x) :precondition (and (q ?x)) :effect (and (r ?x)))
      (:action an :parameters (?x) :precondition (and) :effect (and (r ?x))))
    """
)
SYNTH_PROBLEM = parse_problem(
    "(define (problem sp) (:domain synth) (:objects o1 - object)"
    " (:init) (:goal (and (p o1))))",
    SYNTH_DOMAIN,
)


def test_cost_table_parsing_and_default():
    table = parse_cost_table("# comment\nholding 2.0\ndefault 0.5\n")
    assert table.cost("holding") == 2.0
    assert table.cost("anything-else") == 0.5
    with pytest.raises(ValueError):
        parse_cost_table("holding -1\n")


def test_valid_plan_yields_all_known(tabletop, tabletop_p1):
    plan = parse_plan("(pickup b1 gl l1)\n(place b1 gl l3)", tabletop.domain)
    report = validate(plan, tabletop.domain, tabletop_p1)
    est = estimate_user_model(report, tabletop.domain)
    assert est.unknown_facts == frozenset()
    assert est.known_facts == all_model_facts(tabletop.domain)


def test_place_first_marks_holding_unknown(tabletop, tabletop_p1):
    plan = parse_plan("(place b1 gl l3)", tabletop.domain)
    report = validate(plan, tabletop.domain, tabletop_p1)
    est = estimate_user_model(report, tabletop.domain)
    assert est.unknown_facts == {
        ModelFact("place", Literal("holding", ("?g", "?b")))
    }


def test_two_errors_mark_two_facts(tabletop, tabletop_p1):
    plan = parse_plan("(place b1 gl l3)\n(place b2 gr l1)", tabletop.domain)
    report = validate(plan, tabletop.domain, tabletop_p1)
    est = estimate_user_model(report, tabletop.domain)
    assert ModelFact("place", Literal("holding", ("?g", "?b"))) in est.unknown_facts
    assert ModelFact("place", Literal("clear", ("?l",))) in est.unknown_facts


def test_single_error_is_selected(tabletop, tabletop_p1):
    plan = parse_plan("(place b1 gl l3)", tabletop.domain)
    report = validate(plan, tabletop.domain, tabletop_p1)
    est = estimate_user_model(report, tabletop.domain)
    explanation = select_explanation(report, est, tabletop.costs, tabletop.domain)
    assert explanation.kind == ExplanationKind.PRECONDITION
    assert explanation.step_index == 0
    assert explanation.violated_ground_literal == Literal("holding", ("gl", "b1"))
    assert explanation.contrast == {"pickup"}


def _synth_report():
    plan = parse_plan("(ap o1)\n(an o1)\n(aq o1)", SYNTH_DOMAIN)
    return validate(plan, SYNTH_DOMAIN, SYNTH_PROBLEM)


def test_cheaper_concept_wins_even_later():
    report = _synth_report()
    est = estimate_user_model(report, SYNTH_DOMAIN)
    costs = ConceptCostTable({"p": 5.0, "q": 1.0})
    explanation = select_explanation(report, est, costs, SYNTH_DOMAIN)
    assert explanation.violated_ground_literal.predicate == "q"
    assert explanation.step_index == 2


def test_equal_cost_breaks_to_earlier_step():
    report = _synth_report()
    est = estimate_user_model(report, SYNTH_DOMAIN)
    costs = ConceptCostTable({"p": 1.0, "q": 1.0})
    explanation = select_explanation(report, est, costs, SYNTH_DOMAIN)
    assert explanation.step_index == 0
    assert explanation.violated_ground_literal.predicate == "p"


def test_goal_failure_reports_all_unmet_goals(tabletop, tabletop_p1):
    plan = parse_plan("(pickup b1 gl l1)", tabletop.domain)
    report = validate(plan, tabletop.domain, tabletop_p1)
    est = estimate_user_model(report, tabletop.domain)
    explanation = select_explanation(report, est, tabletop.costs, tabletop.domain)
    assert explanation.kind == ExplanationKind.GOAL
    assert explanation.unmet_goals == {Literal("at", ("b1", "l3"))}
    assert "place" in explanation.contrast


def test_select_on_valid_plan_rejected(tabletop, tabletop_p1):
    plan = parse_plan("(pickup b1 gl l1)\n(place b1 gl l3)", tabletop.domain)
    report = validate(plan, tabletop.domain, tabletop_p1)
    est = estimate_user_model(report, tabletop.domain)
    with pytest.raises(ValueError):
        select_explanation(report, est, tabletop.costs, tabletop.domain)


def test_corpus_soundness_and_singleton(flawed_corpus):
    for bundle, entry, plan in flawed_corpus:
        report = validate(plan, bundle.domain, entry.problem)
        assert report.verdict != Verdict.VALID
        est = estimate_user_model(report, bundle.domain)
        explanation = select_explanation(report, est, bundle.costs, bundle.domain)
        if explanation.kind != ExplanationKind.PRECONDITION:
            assert explanation.unmet_goals
            continue
        # exactly one fact, housed in the true domain
        schema = bundle.domain.action(explanation.fact.schema_name)
        assert explanation.fact.literal in schema.preconditions
        # the cited literal is truly false where the step was attempted
        state = scan_state_before(plan, bundle.domain, entry.problem, explanation.step_index)
        assert not holds(state, explanation.violated_ground_literal)


def test_corpus_scaling_invariance(flawed_corpus):
    for bundle, entry, plan in flawed_corpus:
        report = validate(plan, bundle.domain, entry.problem)
        est = estimate_user_model(report, bundle.domain)
        base = select_explanation(report, est, bundle.costs, bundle.domain)
        for scale in (0.25, 3.0, 1000.0):
            scaled = ConceptCostTable(
                {k: v * scale for k, v in bundle.costs.costs.items()},
                bundle.costs.default_cost * scale,
            )
            assert select_explanation(report, est, scaled, bundle.domain) == base


@given(scale=st.floats(min_value=1e-3, max_value=1e6, allow_nan=False))
def test_scaling_invariance_property(scale):
    report = _synth_report()
    est = estimate_user_model(report, SYNTH_DOMAIN)
    costs = ConceptCostTable({"p": 5.0, "q": 1.0})
    scaled = ConceptCostTable({"p": 5.0 * scale, "q": 1.0 * scale})
    assert select_explanation(report, est, costs, SYNTH_DOMAIN) == select_explanation(
        report, est, scaled, SYNTH_DOMAIN
    )


def test_determinism(tabletop, tabletop_p1):
    plan = parse_plan("(place b1 gl l3)\n(place b2 gr l1)", tabletop.domain)
    report = validate(plan, tabletop.domain, tabletop_p1)
    est = estimate_user_model(report, tabletop.domain)
    first = select_explanation(report, est, tabletop.costs, tabletop.domain)
    for _ in range(5):
        assert select_explanation(report, est, tabletop.costs, tabletop.domain) == first


def test_session_merge_accumulates_and_clears(tabletop, tabletop_p1):
    dom, prob = tabletop.domain, tabletop_p1
    holding_fact = ModelFact("place", Literal("holding", ("?g", "?b")))

    bad = parse_plan("(place b1 gl l3)", dom)
    report = validate(bad, dom, prob)
    unknown = merge_session_estimate(frozenset(), report, dom, prob)
    assert holding_fact in unknown

    # an unrelated new mistake keeps the old fact on record
    other = parse_plan("(pickup b1 gl l2)", dom)
    report2 = validate(other, dom, prob)
    unknown = merge_session_estimate(unknown, report2, dom, prob)
    assert holding_fact in unknown

    # a plan that satisfies holding at its application point clears it
    good = parse_plan("(pickup b1 gl l1)\n(place b1 gl l3)", dom)
    report3 = validate(good, dom, prob)
    unknown = merge_session_estimate(unknown, report3, dom, prob)
    assert holding_fact not in unknown
