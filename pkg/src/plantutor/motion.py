"""Single-query 2D motion planning: deterministic grid A* and seeded RRT.

Both planners share the exact swept-disc collision test from `geometry`, so
an emitted path is collision-free along its entire length, not just at
waypoints.  Grid cells are inflated by half a cell diagonal so that any
segment between free-cell centers is provably clear.
"""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass, field

from .geometry import Disc, Point, Rect, dist, point_clear, segment_clear

GRID = "grid"
RRT = "rrt"

START_IN_COLLISION = "start-in-collision"
TARGET_IN_COLLISION = "target-in-collision"
NO_PATH = "no-path"


@dataclass(frozen=True)
class PlannerConfig:
    mode: str = GRID
    grid_resolution: float = 0.05
    rrt_seed: int = 0
    rrt_max_iterations: int = 5000
    rrt_step_size: float = 0.1
    goal_tolerance: float = 0.05
    interpolation_delta: float = 0.01

    def __post_init__(self):
        if self.mode not in (GRID, RRT):
            raise ValueError(f"unknown planner mode {self.mode!r}")
        for name in ("grid_resolution", "rrt_step_size", "goal_tolerance",
                     "interpolation_delta"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class MotionQuery:
    mover: str
    start: Point
    target: Point
    clearance: float
    obstacles: tuple[Disc, ...]
    bounds: Rect


@dataclass(frozen=True)
class MotionResult:
    waypoints: tuple[Point, ...] | None
    failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.waypoints is not None


class GridIndex:
    """Blocked-cell grid over a query's bounds; shared with the test oracle."""

    def __init__(self, q: MotionQuery, resolution: float):
        self.res = resolution
        self.bounds = q.bounds
        self.nx = max(1, math.ceil(q.bounds.width / resolution))
        self.ny = max(1, math.ceil(q.bounds.height / resolution))
        # inflate by half a diagonal: every point of a free cell is clear
        margin = q.clearance + resolution * math.sqrt(2) / 2
        self._blocked = [
            [
                not point_clear(self.center((i, j)), q.obstacles, margin)
                for j in range(self.ny)
            ]
            for i in range(self.nx)
        ]

    def center(self, cell: tuple[int, int]) -> Point:
        i, j = cell
        return (
            self.bounds.xmin + (i + 0.5) * self.res,
            self.bounds.ymin + (j + 0.5) * self.res,
        )

    def cell_of(self, p: Point) -> tuple[int, int]:
        i = int((p[0] - self.bounds.xmin) / self.res)
        j = int((p[1] - self.bounds.ymin) / self.res)
        return (min(max(i, 0), self.nx - 1), min(max(j, 0), self.ny - 1))

    def blocked(self, cell: tuple[int, int]) -> bool:
        return self._blocked[cell[0]][cell[1]]

    def neighbors(self, cell: tuple[int, int]):
        i, j = cell
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                if di == 0 and dj == 0:
                    continue
                ni, nj = i + di, j + dj
                if 0 <= ni < self.nx and 0 <= nj < self.ny and not self._blocked[ni][nj]:
                    yield (ni, nj), math.hypot(di, dj)


def plan_motion(q: MotionQuery, cfg: PlannerConfig) -> MotionResult:
    """Plan a collision-free path from q.start to q.target."""
    if not point_clear(q.start, q.obstacles, q.clearance):
        return MotionResult(None, START_IN_COLLISION)
    if not point_clear(q.target, q.obstacles, q.clearance):
        return MotionResult(None, TARGET_IN_COLLISION)
    if cfg.mode == GRID:
        return _plan_grid(q, cfg)
    return _plan_rrt(q, cfg)


def _shortcut(
    waypoints: list[Point], obstacles: tuple[Disc, ...], clearance: float
) -> tuple[Point, ...]:
    """Greedy shortcutting: jump to the farthest waypoint reachable straight."""
    out = [waypoints[0]]
    i = 0
    while i < len(waypoints) - 1:
        j = len(waypoints) - 1
        while j > i + 1 and not segment_clear(
            waypoints[i], waypoints[j], obstacles, clearance
        ):
            j -= 1
        out.append(waypoints[j])
        i = j
    return tuple(out)


def _dedupe(waypoints: list[Point]) -> list[Point]:
    out = [waypoints[0]]
    for p in waypoints[1:]:
        if p != out[-1]:
            out.append(p)
    return out if len(out) > 1 else [waypoints[0], waypoints[-1]]


def _plan_grid(q: MotionQuery, cfg: PlannerConfig) -> MotionResult:
    grid = GridIndex(q, cfg.grid_resolution)
    start_cell = grid.cell_of(q.start)
    goal_cell = grid.cell_of(q.target)
    if grid.blocked(start_cell) or grid.blocked(goal_cell):
        return MotionResult(None, NO_PATH)
    if start_cell == goal_cell:
        return MotionResult(tuple(_dedupe([q.start, q.target])))

    goal_center = grid.center(goal_cell)

    def heuristic(cell: tuple[int, int]) -> float:
        return dist(grid.center(cell), goal_center)

    open_heap: list[tuple[float, int, tuple[int, int]]] = []
    counter = 0
    heapq.heappush(open_heap, (heuristic(start_cell), counter, start_cell))
    g_cost = {start_cell: 0.0}
    came_from: dict[tuple[int, int], tuple[int, int]] = {}
    closed: set[tuple[int, int]] = set()

    while open_heap:
        _, _, cur = heapq.heappop(open_heap)
        if cur in closed:
            continue
        if cur == goal_cell:
            cells = [cur]
            while cells[-1] in came_from:
                cells.append(came_from[cells[-1]])
            cells.reverse()
            raw = _dedupe([q.start] + [grid.center(c) for c in cells] + [q.target])
            return MotionResult(_shortcut(raw, q.obstacles, q.clearance))
        closed.add(cur)
        for nxt, step in grid.neighbors(cur):
            if nxt in closed:
                continue
            ng = g_cost[cur] + step * grid.res
            if ng < g_cost.get(nxt, math.inf):
                g_cost[nxt] = ng
                came_from[nxt] = cur
                counter += 1
                heapq.heappush(open_heap, (ng + heuristic(nxt), counter, nxt))
    return MotionResult(None, NO_PATH)


def _plan_rrt(q: MotionQuery, cfg: PlannerConfig) -> MotionResult:
    rng = random.Random(cfg.rrt_seed)
    if dist(q.start, q.target) <= cfg.goal_tolerance and segment_clear(
        q.start, q.target, q.obstacles, q.clearance
    ):
        return MotionResult(tuple(_dedupe([q.start, q.target])))

    nodes: list[Point] = [q.start]
    parent: list[int] = [-1]
    for _ in range(cfg.rrt_max_iterations):
        if rng.random() < 0.05:  # goal bias
            sample = q.target
        else:
            sample = (
                rng.uniform(q.bounds.xmin, q.bounds.xmax),
                rng.uniform(q.bounds.ymin, q.bounds.ymax),
            )
        near_idx = min(range(len(nodes)), key=lambda i: dist(nodes[i], sample))
        near = nodes[near_idx]
        d = dist(near, sample)
        if d == 0.0:
            continue
        step = min(cfg.rrt_step_size, d)
        new = (
            near[0] + (sample[0] - near[0]) * step / d,
            near[1] + (sample[1] - near[1]) * step / d,
        )
        if not segment_clear(near, new, q.obstacles, q.clearance):
            continue
        nodes.append(new)
        parent.append(near_idx)
        if dist(new, q.target) <= cfg.goal_tolerance and segment_clear(
            new, q.target, q.obstacles, q.clearance
        ):
            path = [q.target, new]
            idx = near_idx
            while idx != -1:
                path.append(nodes[idx])
                idx = parent[idx]
            path.reverse()
            raw = _dedupe(path)
            return MotionResult(_shortcut(raw, q.obstacles, q.clearance))
    return MotionResult(None, NO_PATH)
