"""2D primitives shared by the motion planners and the refinement layer."""

from __future__ import annotations

import math
from dataclasses import dataclass

Point = tuple[float, float]


@dataclass(frozen=True)
class Disc:
    x: float
    y: float
    r: float

    @property
    def center(self) -> Point:
        return (self.x, self.y)


@dataclass(frozen=True)
class Rect:
    xmin: float
    ymin: float
    xmax: float
    ymax: float

    def contains(self, p: Point) -> bool:
        return self.xmin <= p[0] <= self.xmax and self.ymin <= p[1] <= self.ymax

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin


def dist(p: Point, q: Point) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def point_segment_distance(c: Point, p: Point, q: Point) -> float:
    """Distance from point `c` to segment `pq`."""
    vx, vy = q[0] - p[0], q[1] - p[1]
    wx, wy = c[0] - p[0], c[1] - p[1]
    seg_len2 = vx * vx + vy * vy
    if seg_len2 == 0.0:
        return math.hypot(wx, wy)
    t = max(0.0, min(1.0, (wx * vx + wy * vy) / seg_len2))
    return math.hypot(wx - t * vx, wy - t * vy)


def point_clear(p: Point, obstacles: tuple[Disc, ...], clearance: float) -> bool:
    """True iff a disc of radius `clearance` at `p` overlaps no obstacle."""
    return all(dist(p, o.center) >= o.r + clearance for o in obstacles)


def segment_clear(
    p: Point, q: Point, obstacles: tuple[Disc, ...], clearance: float
) -> bool:
    """Exact swept-disc check: the whole segment keeps `clearance` distance."""
    return all(
        point_segment_distance(o.center, p, q) >= o.r + clearance
        for o in obstacles
    )


def path_length(waypoints: list[Point]) -> float:
    return sum(dist(a, b) for a, b in zip(waypoints, waypoints[1:]))
