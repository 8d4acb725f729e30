"""Refinement of validated symbolic plans into 2D trajectories.

The workspace is an overhead-gantry model: an empty gripper flies over
movable objects and only avoids static obstacles; while carrying an object it
must also keep the carried disc clear of every other movable object.  Each
action schema carries a semantic annotation naming its mover parameter, its
motion target, and any attach/detach effect.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .geometry import Disc, Point, Rect, dist, path_length
from .pddl import Domain, GroundAction, Problem
from .validation import Plan, ValidationReport, Verdict
from .motion import MotionQuery, MotionResult, PlannerConfig, plan_motion

COMPLETE = "complete"
FAILED = "failed"

PLAYBACK_SPEED = 0.5  # m/s, fixes trace timestamps


class WorkspaceError(Exception):
    """Configuration problem: bad workspace file, unbound object, overlap,
    or a schema without a semantic annotation."""


@dataclass(frozen=True)
class ActionAnnotation:
    mover: str           # gripper-typed parameter variable
    target: str          # parameter variable naming a location or an object
    attach: str | None = None   # object parameter picked up on success
    detach: str | None = None   # object parameter put down on success


@dataclass(frozen=True)
class GripperState:
    position: Point
    radius: float


@dataclass(frozen=True)
class ObjectState:
    position: Point | None
    radius: float


@dataclass(frozen=True)
class Workspace:
    bounds: Rect
    obstacles: tuple[Disc, ...]
    objects: dict[str, ObjectState]
    locations: dict[str, Point]
    grippers: dict[str, GripperState]
    annotations: dict[str, ActionAnnotation]
    attachments: dict[str, str] = field(default_factory=dict)  # gripper -> object
    at_predicate: str = "at"
    holding_predicate: str = "holding"


@dataclass(frozen=True)
class Segment:
    step_index: int
    action: GroundAction
    mover: str
    attached: str | None
    waypoints: tuple[Point, ...]


@dataclass(frozen=True)
class Trajectory:
    segments: tuple[Segment, ...]
    status: str  # complete | failed
    failed_step: int | None = None
    failure_reason: str | None = None


def load_workspace(text: str) -> Workspace:
    """Parse the per-problem workspace file (JSON)."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkspaceError(f"workspace is not valid JSON: {exc}") from exc
    try:
        bounds = Rect(*raw["bounds"])
        obstacles = tuple(Disc(*o) for o in raw.get("obstacles", []))
        objects = {
            name.lower(): ObjectState(None, float(r))
            for name, r in raw.get("objects", {}).items()
        }
        locations = {
            name.lower(): (float(p[0]), float(p[1]))
            for name, p in raw.get("locations", {}).items()
        }
        grippers = {
            name.lower(): GripperState(
                (float(g["home"][0]), float(g["home"][1])), float(g["radius"])
            )
            for name, g in raw.get("grippers", {}).items()
        }
        annotations = {
            name.lower(): ActionAnnotation(
                mover=ann["mover"].lower(),
                target=ann["target"].lower(),
                attach=ann.get("attach", "").lower() or None,
                detach=ann.get("detach", "").lower() or None,
            )
            for name, ann in raw.get("annotations", {}).items()
        }
        binding = raw.get("binding", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise WorkspaceError(f"malformed workspace file: {exc}") from exc
    ws = Workspace(
        bounds=bounds,
        obstacles=obstacles,
        objects=objects,
        locations=locations,
        grippers=grippers,
        annotations=annotations,
        at_predicate=binding.get("at", "at").lower(),
        holding_predicate=binding.get("holding", "holding").lower(),
    )
    for o in obstacles:
        if not bounds.contains(o.center):
            raise WorkspaceError(f"obstacle at {o.center} outside bounds")
    for name, g in ws.grippers.items():
        if not bounds.contains(g.position):
            raise WorkspaceError(f"gripper {name!r} home outside bounds")
    for name, p in ws.locations.items():
        if not bounds.contains(p):
            raise WorkspaceError(f"location {name!r} outside bounds")
    return ws


def bind_geometry(prob: Problem, ws: Workspace) -> Workspace:
    """Place movable objects at their init locations; grippers at their homes."""
    objects = dict(ws.objects)
    attachments: dict[str, str] = {}
    for pred, args in sorted(prob.init):
        if pred == ws.at_predicate:
            obj, loc = args
            if obj not in objects:
                continue  # at-atom over a non-geometric object (e.g. a gripper)
            if loc not in ws.locations:
                raise WorkspaceError(f"object {obj!r} bound to unknown location {loc!r}")
            objects[obj] = replace(objects[obj], position=ws.locations[loc])
        elif pred == ws.holding_predicate:
            grip, obj = args
            if grip not in ws.grippers:
                raise WorkspaceError(f"holding-atom names unknown gripper {grip!r}")
            if obj not in objects:
                raise WorkspaceError(f"holding-atom names unknown object {obj!r}")
            objects[obj] = replace(objects[obj], position=ws.grippers[grip].position)
            attachments[grip] = obj
    for name, st in objects.items():
        if st.position is None:
            raise WorkspaceError(f"object {name!r} has no initial placement")
    placed = sorted(objects.items())
    for i, (n1, s1) in enumerate(placed):
        for n2, s2 in placed[i + 1:]:
            if dist(s1.position, s2.position) < s1.radius + s2.radius:
                raise WorkspaceError(f"objects {n1!r} and {n2!r} overlap after placement")
    return replace(ws, objects=objects, attachments=attachments)


def _annotation(ws: Workspace, action: GroundAction) -> ActionAnnotation:
    ann = ws.annotations.get(action.name)
    if ann is None:
        raise WorkspaceError(f"action schema {action.name!r} has no semantic annotation")
    return ann


def _target_point(ws: Workspace, name: str) -> Point:
    if name in ws.locations:
        return ws.locations[name]
    st = ws.objects.get(name)
    if st is None or st.position is None:
        raise WorkspaceError(f"motion target {name!r} is neither a location nor a placed object")
    return st.position


def build_query(
    ws: Workspace, action: GroundAction, dom: Domain
) -> tuple[MotionQuery, ActionAnnotation, str]:
    """Derive the motion query for one step from the current geometry."""
    ann = _annotation(ws, action)
    schema = dom.action(action.name)
    binding = schema.param_binding(action.args)
    try:
        mover = binding[ann.mover]
        target_name = binding[ann.target]
    except KeyError as exc:
        raise WorkspaceError(
            f"annotation of {action.name!r} names unknown parameter {exc}"
        ) from exc
    if mover not in ws.grippers:
        raise WorkspaceError(f"mover {mover!r} is not a gripper in the workspace")
    gripper = ws.grippers[mover]
    carried = ws.attachments.get(mover)
    if carried is not None:
        # a carried object hangs at its own gripper's height: it clears other
        # carried objects but must avoid every object resting on the surface
        held = set(ws.attachments.values())
        clearance = max(gripper.radius, ws.objects[carried].radius)
        # objects already under the gripper are lifted over vertically, so a
        # resting object overlapping the start point is not an obstacle
        active = ws.obstacles + tuple(
            Disc(st.position[0], st.position[1], st.radius)
            for name, st in sorted(ws.objects.items())
            if name not in held
            and st.position is not None
            and dist(gripper.position, st.position) >= st.radius + clearance
        )
    else:
        # empty gripper travels above the objects: static obstacles only
        clearance = gripper.radius
        active = ws.obstacles
    q = MotionQuery(
        mover=mover,
        start=gripper.position,
        target=_target_point(ws, target_name),
        clearance=clearance,
        obstacles=active,
        bounds=ws.bounds,
    )
    return q, ann, target_name


def _apply_segment(
    ws: Workspace, action: GroundAction, ann: ActionAnnotation, dom: Domain,
    endpoint: Point,
) -> Workspace:
    """Advance geometry after a successful segment: move, attach, detach."""
    schema = dom.action(action.name)
    binding = schema.param_binding(action.args)
    mover = binding[ann.mover]
    grippers = dict(ws.grippers)
    objects = dict(ws.objects)
    attachments = dict(ws.attachments)
    grippers[mover] = replace(grippers[mover], position=endpoint)
    carried = attachments.get(mover)
    if carried is not None:
        objects[carried] = replace(objects[carried], position=endpoint)
    if ann.attach is not None:
        obj = binding[ann.attach]
        attachments[mover] = obj
        objects[obj] = replace(objects[obj], position=endpoint)
    if ann.detach is not None:
        obj = binding[ann.detach]
        attachments.pop(mover, None)
        objects[obj] = replace(objects[obj], position=endpoint)
    return replace(ws, grippers=grippers, objects=objects, attachments=attachments)


def refine_plan(
    plan: Plan,
    report: ValidationReport,
    ws: Workspace,
    cfg: PlannerConfig,
    dom: Domain,
) -> Trajectory:
    """Refine a valid plan step by step; stop at the first geometric failure.

    `ws` must already be bound (see `bind_geometry`).
    """
    if report.verdict != Verdict.VALID:
        raise ValueError("refine_plan requires a valid plan")
    segments: list[Segment] = []
    current = ws
    for i, action in enumerate(plan.steps):
        q, ann, _ = build_query(current, action, dom)
        result = plan_motion(q, cfg)
        if not result.ok:
            return Trajectory(
                segments=tuple(segments),
                status=FAILED,
                failed_step=i,
                failure_reason=result.failure,
            )
        segments.append(
            Segment(
                step_index=i,
                action=action,
                mover=q.mover,
                attached=current.attachments.get(q.mover),
                waypoints=result.waypoints,
            )
        )
        current = _apply_segment(current, action, ann, dom, result.waypoints[-1])
    return Trajectory(segments=tuple(segments), status=COMPLETE)


def trajectory_to_dict(traj: Trajectory) -> dict:
    """Serialize with per-waypoint timestamps at constant playback speed."""
    t = 0.0
    segments = []
    for seg in traj.segments:
        records = []
        prev: Point | None = None
        for p in seg.waypoints:
            if prev is not None:
                t += dist(prev, p) / PLAYBACK_SPEED
            records.append({"x": round(p[0], 6), "y": round(p[1], 6), "t": round(t, 6)})
            prev = p
        segments.append(
            {
                "step": seg.step_index,
                "action": str(seg.action),
                "mover": seg.mover,
                "attached": seg.attached,
                "waypoints": records,
            }
        )
    out = {"status": traj.status, "speed": PLAYBACK_SPEED, "segments": segments}
    if traj.status == FAILED:
        out["failed_step"] = traj.failed_step
        out["reason"] = traj.failure_reason
    return out


def workspace_to_dict(ws: Workspace) -> dict:
    """Scene description for rendering (positions as currently bound)."""
    return {
        "bounds": [ws.bounds.xmin, ws.bounds.ymin, ws.bounds.xmax, ws.bounds.ymax],
        "obstacles": [[o.x, o.y, o.r] for o in ws.obstacles],
        "objects": {
            name: {
                "radius": st.radius,
                "position": list(st.position) if st.position else None,
            }
            for name, st in sorted(ws.objects.items())
        },
        "locations": {name: list(p) for name, p in sorted(ws.locations.items())},
        "grippers": {
            name: {"radius": g.radius, "position": list(g.position)}
            for name, g in sorted(ws.grippers.items())
        },
    }
