"""2D primitives: hulls, areas, box tests, polyline simplification.

Canvas coordinate system: origin top-left, x rightward, y downward, in
abstract resolution-independent units. All comparisons use doubles with a
1e-9 absolute tolerance unless a caller states otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from infogen import kernels


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point components must be finite, got ({self.x}, {self.y})")


@dataclass(frozen=True)
class BBox:
    x: float
    y: float
    w: float
    h: float

    def __post_init__(self):
        if self.w < 0 or self.h < 0:
            raise ValueError(f"bbox extents must be >= 0, got w={self.w} h={self.h}")

    @property
    def center(self) -> Point:
        return Point(self.x + self.w / 2, self.y + self.h / 2)


@dataclass(frozen=True)
class Polyline:
    """Ordered point sequence; consecutive duplicates are collapsed."""

    points: tuple[Point, ...]

    def __init__(self, points):
        normalized = []
        for p in points:
            if normalized and p == normalized[-1]:
                continue
            normalized.append(p)
        if len(normalized) < 2:
            raise ValueError("polyline needs at least 2 distinct consecutive points")
        object.__setattr__(self, "points", tuple(normalized))

    def __len__(self) -> int:
        return len(self.points)


def _as_array(points) -> np.ndarray:
    arr = np.empty((len(points), 2), dtype=np.float64)
    for i, p in enumerate(points):
        arr[i, 0] = p.x
        arr[i, 1] = p.y
    return arr


def convex_hull(points: list[Point]) -> list[Point]:
    """Convex hull vertices in counter-clockwise order.

    Monotone chain; collinear boundary points are dropped. Fewer than three
    non-collinear input points yield the deduplicated degenerate hull.
    """
    if not points:
        raise ValueError("empty point set")
    arr = _as_array(points)
    return [points[i] for i in kernels.hull_indices(arr)]


def polygon_area(polygon: list[Point]) -> float:
    """Absolute shoelace area; degenerate polygons return 0."""
    if len(polygon) < 3:
        return 0.0
    return float(kernels.polygon_area(_as_array(polygon)))


def hull_area(points: list[Point]) -> float:
    """Area of the convex hull of `points`."""
    return polygon_area(convex_hull(points))


def point_in_bbox(p: Point, b: BBox) -> bool:
    """Boundary-inclusive containment test."""
    return b.x <= p.x <= b.x + b.w and b.y <= p.y <= b.y + b.h


def dominant_points(stroke: Polyline, epsilon: float) -> list[Point]:
    """Corner/extreme points of a stroke via Ramer-Douglas-Peucker.

    Keeps both endpoints; interior points survive while their perpendicular
    distance to the simplified span exceeds `epsilon`. Output is an ordered
    subset of the input points.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be > 0")
    arr = _as_array(stroke.points)
    keep = kernels.rdp_keep(arr, float(epsilon))
    return [p for p, k in zip(stroke.points, keep) if k]
