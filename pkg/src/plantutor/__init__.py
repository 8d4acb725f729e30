"""Plan tutoring engine.

Users author high-level robot plans; the engine validates them against a
typed-STRIPS model, explains exactly one error in templated natural language
when the plan is wrong, and refines the plan into collision-free 2D motion
trajectories when it is right.
"""

from .pddl import (
    Domain,
    GroundAction,
    Literal,
    PddlError,
    Problem,
    State,
    applicable,
    apply,
    ground_choices,
    parse_domain,
    parse_problem,
)
from .validation import Plan, ValidationReport, Verdict, parse_plan, validate
from .explain import (
    ConceptCostTable,
    Explanation,
    ModelFact,
    UserModelEstimate,
    estimate_user_model,
    select_explanation,
)
from .nlg import TemplateSet, parse_templates, render_action, render_explanation, render_literals
from .motion import MotionQuery, PlannerConfig, plan_motion
from .tamp import Trajectory, Workspace, bind_geometry, load_workspace, refine_plan
from .bundles import DomainBundle, default_bundle_dir, load_bundle, load_bundles

__version__ = "0.1.0"
