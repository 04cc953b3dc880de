"""Flow-layout scoring and retrieval (pipeline stage 1).

A layout is scored by

    e_l = e_o * (alpha * e_c + (1 - alpha) * u)

where e_o is 1 unless any layout point overlaps the pivot box, e_c is the
convex-hull share of the canvas, and u maps the spread of point-to-center
distances into (0, 1] so that more uniform layouts score higher:
u = 1 / (1 + sigma / mean). Sketch retrieval reduces a freehand stroke to
its dominant points and ranks layouts by direction-agnostic mean point
distance in a normalized frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from infogen import kernels
from infogen.errors import LayoutError
from infogen.geometry import BBox, Point, Polyline, dominant_points

# Dominant-point tolerance: fraction of the stroke bbox diagonal.
SKETCH_EPSILON_FRACTION = 0.02

MAX_LAYOUT_POINTS = 12


@dataclass(frozen=True)
class Canvas:
    width: float
    height: float

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise LayoutError(f"canvas extents must be > 0, got {self.width}x{self.height}")

    @property
    def center(self) -> Point:
        return Point(self.width / 2, self.height / 2)


@dataclass(frozen=True)
class PivotGraphic:
    bbox: BBox
    graphic: Optional[str] = None  # id of an SVG fragment, resolved at render

    @property
    def center(self) -> Point:
        return Point(self.bbox.x + self.bbox.w / 2, self.bbox.y + self.bbox.h / 2)


@dataclass(frozen=True)
class VifLayout:
    """Ordered VG positions in the unit square; order is the reading flow."""

    id: str
    points: tuple[Point, ...]
    cluster_id: Optional[int] = None
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        n = len(self.points)
        if not 2 <= n <= MAX_LAYOUT_POINTS:
            raise LayoutError(f"layout '{self.id}' must have 2..{MAX_LAYOUT_POINTS} points, got {n}")
        for p in self.points:
            if not (0 <= p.x <= 1 and 0 <= p.y <= 1):
                raise LayoutError(f"layout '{self.id}' point ({p.x}, {p.y}) outside unit square")
        if self.cluster_id is not None and not 0 <= self.cluster_id <= 11:
            raise LayoutError(f"layout '{self.id}' cluster_id {self.cluster_id} outside [0, 11]")


@dataclass(frozen=True)
class LayoutScore:
    e_o: int
    e_c: float
    e_u_raw: float
    u: float
    alpha: float
    e_l: float


def denormalize(layout: VifLayout, canvas: Canvas) -> np.ndarray:
    """Layout points scaled to canvas units, as an (n, 2) array."""
    arr = np.empty((len(layout.points), 2), dtype=np.float64)
    for i, p in enumerate(layout.points):
        arr[i, 0] = p.x * canvas.width
        arr[i, 1] = p.y * canvas.height
    return arr


def score_layout(
    layout: VifLayout,
    canvas: Canvas,
    pivot: Optional[PivotGraphic] = None,
    alpha: float = 0.5,
) -> LayoutScore:
    """Score one layout against canvas and optional pivot."""
    if len(layout.points) < 2:
        raise LayoutError("layout must have at least 2 points")
    if not 0.0 <= alpha <= 1.0:
        raise LayoutError(f"alpha must be in [0, 1], got {alpha}")
    pts = denormalize(layout, canvas)

    e_o = 1
    if pivot is not None:
        b = pivot.bbox
        if kernels.any_in_bbox(pts, b.x, b.y, b.w, b.h):
            e_o = 0

    hull = kernels.hull_indices(pts)
    area = kernels.polygon_area(pts[hull]) if len(hull) >= 3 else 0.0
    e_c = float(area) / (canvas.width * canvas.height)

    center = pivot.center if pivot is not None else canvas.center
    mean_d, std_d = kernels.distance_stats(pts, center.x, center.y)
    u = 1.0 if mean_d == 0.0 else 1.0 / (1.0 + std_d / mean_d)

    e_l = e_o * (alpha * e_c + (1.0 - alpha) * u)
    return LayoutScore(e_o=e_o, e_c=e_c, e_u_raw=float(std_d), u=u, alpha=alpha, e_l=e_l)


def _filter_by_count(
    dataset: list[VifLayout], n_vgs: int, relax: bool
) -> list[VifLayout]:
    if not 1 <= n_vgs <= MAX_LAYOUT_POINTS:
        raise LayoutError(f"n_vgs must be in [1, {MAX_LAYOUT_POINTS}], got {n_vgs}")
    exact = [l for l in dataset if len(l.points) == n_vgs]
    if exact or not relax:
        if not exact:
            raise LayoutError(f"no layouts for {n_vgs} visual groups", code="no_layouts")
        return exact
    relaxed = []
    for l in dataset:
        if len(l.points) > n_vgs:
            relaxed.append(
                VifLayout(
                    id=l.id,
                    points=l.points[:n_vgs],
                    cluster_id=l.cluster_id,
                    source=l.source,
                )
            )
    if not relaxed:
        raise LayoutError(f"no layouts for {n_vgs} visual groups", code="no_layouts")
    return relaxed


def rank_layouts(
    dataset: list[VifLayout],
    n_vgs: int,
    canvas: Canvas,
    pivot: Optional[PivotGraphic] = None,
    alpha: float = 0.5,
    top_k: int = 8,
    relax_count: bool = False,
) -> list[tuple[VifLayout, LayoutScore]]:
    """Rank layouts with exactly `n_vgs` points by descending e_l.

    Ties break by ascending layout id. With `relax_count`, layouts with more
    points are truncated to the first `n_vgs` in flow order when no exact
    match exists.
    """
    if not dataset:
        raise LayoutError("empty layout dataset")
    candidates = _filter_by_count(dataset, n_vgs, relax_count)
    scored = [(l, score_layout(l, canvas, pivot, alpha)) for l in candidates]
    scored.sort(key=lambda pair: (-pair[1].e_l, pair[0].id))
    return scored[:top_k]


def _normalize_like(arr: np.ndarray, frame: np.ndarray) -> np.ndarray:
    """Stretch `arr` into the unit square by the bounding box of `frame`."""
    min_x = float(frame[:, 0].min())
    max_x = float(frame[:, 0].max())
    min_y = float(frame[:, 1].min())
    max_y = float(frame[:, 1].max())
    w = max_x - min_x
    h = max_y - min_y
    if w == 0.0 and h == 0.0:
        raise LayoutError("degenerate sketch", code="degenerate_sketch")
    floor = 0.05 * max(w, h)
    out = np.empty_like(arr)
    if w <= floor:
        out[:, 0] = 0.5
    else:
        out[:, 0] = (arr[:, 0] - min_x) / w
    if h <= floor:
        out[:, 1] = 0.5
    else:
        out[:, 1] = (arr[:, 1] - min_y) / h
    return out


def _normalize_unit(arr: np.ndarray) -> np.ndarray:
    """Stretch points into the unit square by their own bounding box.

    Per-axis stretch makes the comparison frame independent of canvas
    extents (a layout drawn on any canvas normalizes back to its stored
    shape). An axis whose extent is negligible next to the other (below
    5%, e.g. a straight horizontal stroke plus hand jitter) collapses to
    the 0.5 centerline instead of amplifying noise to full range; a fully
    zero-extent bbox cannot be normalized.
    """
    return _normalize_like(arr, arr)


def _points_array(points) -> np.ndarray:
    arr = np.empty((len(points), 2), dtype=np.float64)
    for i, p in enumerate(points):
        arr[i, 0] = p.x
        arr[i, 1] = p.y
    return arr


def sketch_from_points(pairs) -> Polyline:
    """Build a sketch stroke from raw (x, y) pairs.

    Raises the degenerate-sketch error when the points cannot form a
    stroke (fewer than two distinct consecutive positions).
    """
    try:
        return Polyline([Point(float(x), float(y)) for x, y in pairs])
    except ValueError as exc:
        raise LayoutError("degenerate sketch", code="degenerate_sketch") from exc


def match_sketch(
    stroke: Polyline,
    dataset: list[VifLayout],
    n_vgs: int,
    top_k: int = 8,
) -> list[tuple[VifLayout, float]]:
    """Rank layouts with `n_vgs` points by distance to a freehand stroke.

    The stroke is reduced to its dominant points (tolerance 2% of the
    stroke bbox diagonal), normalized to the unit square by the stroke's
    bounding box, and resampled to `n_vgs` points by arc length when
    counts differ. Candidates are compared in the same normalized frame;
    the distance ignores drawing direction (the stroke is canonicalized
    before simplification and the point-wise cost takes the minimum over
    forward and reversed order), so reversed strokes rank identically.
    """
    points = list(stroke.points)
    forward = [(p.x, p.y) for p in points]
    if forward[::-1] < forward:
        points.reverse()
        stroke = Polyline(points)
    raw = _points_array(points)
    w = float(raw[:, 0].max() - raw[:, 0].min())
    h = float(raw[:, 1].max() - raw[:, 1].min())
    diag = math.sqrt(w * w + h * h)
    if diag == 0.0:
        raise LayoutError("degenerate sketch", code="degenerate_sketch")
    dom = dominant_points(stroke, SKETCH_EPSILON_FRACTION * diag)
    query = _normalize_like(_points_array(dom), raw)
    if query.shape[0] != n_vgs:
        resampled = np.empty((n_vgs, 2), dtype=np.float64)
        kernels.resample(query, resampled)
        query = resampled

    candidates = _filter_by_count(dataset, n_vgs, relax=False)
    ranked = []
    for layout in candidates:
        try:
            pts = _normalize_unit(_points_array(layout.points))
        except LayoutError:
            continue  # all-coincident candidate cannot be compared
        ranked.append((layout, float(kernels.match_cost(query, pts))))
    ranked.sort(key=lambda pair: (pair[1], pair[0].id))
    return ranked[:top_k]
