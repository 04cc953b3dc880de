import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infogen.geometry import (
    BBox,
    Point,
    Polyline,
    convex_hull,
    dominant_points,
    point_in_bbox,
    polygon_area,
)

# ---------------------------------------------------------------- oracles


def brute_force_hull(points):
    """O(n^3) hull: (a, b) is a CCW hull edge iff all others lie strictly left.

    Assumes points in general position (no exact collinear triples), which
    holds for random floats.
    """
    edges = {}
    n = len(points)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            a, b = points[i], points[j]
            if all(
                (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) > 0
                for k, p in enumerate(points)
                if k != i and k != j
            ):
                edges[i] = j
    if not edges:
        return []
    start = min(edges, key=lambda i: (points[i].x, points[i].y))
    order = [start]
    cur = edges[start]
    while cur != start:
        order.append(cur)
        cur = edges[cur]
    return [points[i] for i in order]


def rdp_oracle(points, eps):
    """Textbook recursive Ramer-Douglas-Peucker (split while dmax > eps)."""
    if len(points) < 3:
        return list(points)
    a, b = points[0], points[-1]
    seg = math.hypot(b.x - a.x, b.y - a.y)
    dmax, imax = -1.0, 0
    for i in range(1, len(points) - 1):
        p = points[i]
        if seg == 0:
            d = math.hypot(p.x - a.x, p.y - a.y)
        else:
            d = abs((b.x - a.x) * (a.y - p.y) - (a.x - p.x) * (b.y - a.y)) / seg
        if d > dmax:
            dmax, imax = d, i
    if dmax > eps:
        left = rdp_oracle(points[: imax + 1], eps)
        right = rdp_oracle(points[imax:], eps)
        return left[:-1] + right
    return [points[0], points[-1]]


# ---------------------------------------------------------------- convex_hull


def test_hull_triangle_is_itself():
    pts = [Point(0, 0), Point(4, 0), Point(0, 3)]
    assert convex_hull(pts) == [Point(0, 0), Point(4, 0), Point(0, 3)]


def test_hull_drops_interior_point():
    pts = [Point(0, 0), Point(2, 0), Point(2, 2), Point(0, 2), Point(1, 1)]
    hull = convex_hull(pts)
    assert set(hull) == {Point(0, 0), Point(2, 0), Point(2, 2), Point(0, 2)}
    assert Point(1, 1) not in hull


def test_hull_empty_input():
    with pytest.raises(ValueError, match="empty point set"):
        convex_hull([])


def test_hull_degenerate_inputs():
    assert convex_hull([Point(1, 1)]) == [Point(1, 1)]
    assert convex_hull([Point(1, 1), Point(1, 1)]) == [Point(1, 1)]
    assert convex_hull([Point(0, 0), Point(2, 2)]) == [Point(0, 0), Point(2, 2)]
    # Collinear set reduces to its extremes.
    assert convex_hull([Point(0, 0), Point(1, 1), Point(2, 2)]) == [
        Point(0, 0),
        Point(2, 2),
    ]


def test_hull_matches_brute_force_oracle():
    rng = random.Random(1234)
    for _ in range(200):
        pts = [Point(rng.random(), rng.random()) for _ in range(50)]
        assert convex_hull(pts) == brute_force_hull(pts)


def test_hull_is_ccw():
    rng = random.Random(7)
    for _ in range(50):
        hull = convex_hull([Point(rng.random(), rng.random()) for _ in range(20)])
        # Signed shoelace > 0 for counter-clockwise vertex order.
        signed = sum(
            hull[i].x * hull[(i + 1) % len(hull)].y - hull[(i + 1) % len(hull)].x * hull[i].y
            for i in range(len(hull))
        )
        assert signed > 0


# ---------------------------------------------------------------- polygon_area


def test_area_unit_square():
    assert polygon_area([Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)]) == 1.0


def test_area_degenerate():
    assert polygon_area([Point(0, 0), Point(1, 1), Point(2, 2)]) == 0.0
    assert polygon_area([Point(0, 0), Point(1, 1)]) == 0.0


def test_area_matches_monte_carlo():
    rng = np.random.default_rng(99)
    pts = [Point(x, y) for x, y in rng.random((12, 2))]
    hull = convex_hull(pts)
    area = polygon_area(hull)

    xs = np.array([p.x for p in hull])
    ys = np.array([p.y for p in hull])
    lo = np.array([xs.min(), ys.min()])
    hi = np.array([xs.max(), ys.max()])
    samples = rng.random((1_000_000, 2)) * (hi - lo) + lo
    inside = np.ones(len(samples), dtype=bool)
    for i in range(len(hull)):
        a = hull[i]
        b = hull[(i + 1) % len(hull)]
        cross = (b.x - a.x) * (samples[:, 1] - a.y) - (b.y - a.y) * (samples[:, 0] - a.x)
        inside &= cross >= 0
    estimate = inside.mean() * float((hi - lo).prod())
    assert abs(estimate - area) / area < 0.01


# ---------------------------------------------------------------- point_in_bbox


def test_point_in_bbox_inside():
    assert point_in_bbox(Point(5, 5), BBox(0, 0, 10, 10))


def test_point_in_bbox_boundary_counts():
    assert point_in_bbox(Point(10, 10), BBox(0, 0, 10, 10))
    assert point_in_bbox(Point(0, 0), BBox(0, 0, 10, 10))


def test_point_in_bbox_outside():
    assert not point_in_bbox(Point(10.001, 5), BBox(0, 0, 10, 10))


# ---------------------------------------------------------------- dominant_points


def _sample_segment(a: Point, b: Point, n: int) -> list[Point]:
    return [
        Point(a.x + (b.x - a.x) * i / (n - 1), a.y + (b.y - a.y) * i / (n - 1))
        for i in range(n)
    ]


def test_dominant_points_straight_segment():
    stroke = Polyline(_sample_segment(Point(0, 0), Point(10, 0), 20))
    assert dominant_points(stroke, 0.5) == [Point(0, 0), Point(10, 0)]


def test_dominant_points_l_path():
    pts = _sample_segment(Point(0, 0), Point(0, 10), 15)
    pts += _sample_segment(Point(0, 10), Point(10, 10), 16)[1:]
    stroke = Polyline(pts)
    got = dominant_points(stroke, 0.5)
    assert got == rdp_oracle(list(stroke.points), 0.5)
    assert got == [Point(0, 0), Point(0, 10), Point(10, 10)]


def test_dominant_points_circle_vs_oracle():
    pts = [
        Point(math.cos(2 * math.pi * i / 64), math.sin(2 * math.pi * i / 64))
        for i in range(64)
    ]
    stroke = Polyline(pts)
    got = dominant_points(stroke, 0.1)
    oracle = rdp_oracle(list(stroke.points), 0.1)
    assert got == oracle
    assert len(got) >= 8


def test_dominant_points_epsilon_validation():
    stroke = Polyline([Point(0, 0), Point(1, 1)])
    with pytest.raises(ValueError):
        dominant_points(stroke, 0.0)
    with pytest.raises(ValueError):
        dominant_points(stroke, -1.0)


def test_dominant_points_random_vs_oracle():
    rng = random.Random(5)
    for _ in range(100):
        pts = [Point(rng.random() * 10, rng.random() * 10) for _ in range(30)]
        stroke = Polyline(pts)
        eps = rng.random() * 2 + 0.01
        assert dominant_points(stroke, eps) == rdp_oracle(list(stroke.points), eps)


# ---------------------------------------------------------------- properties

finite = st.floats(min_value=-1000, max_value=1000, allow_nan=False, allow_infinity=False)
points_strategy = st.lists(
    st.builds(Point, finite, finite), min_size=1, max_size=40
)


@given(points_strategy)
def test_hull_idempotent(pts):
    hull = convex_hull(pts)
    assert convex_hull(hull) == hull


@given(points_strategy)
def test_hull_contains_all_inputs(pts):
    hull = convex_hull(pts)
    if len(hull) < 3:
        return
    for p in pts:
        for i in range(len(hull)):
            a = hull[i]
            b = hull[(i + 1) % len(hull)]
            cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
            assert cross >= -1e-9 * max(1.0, abs(a.x), abs(a.y), abs(b.x), abs(b.y)) ** 2


@given(st.lists(st.builds(Point, finite, finite), min_size=3, max_size=30))
@settings(max_examples=50)
def test_shoelace_equals_fan_decomposition(pts):
    hull = convex_hull(pts)
    if len(hull) < 3:
        return
    area = polygon_area(hull)
    fan = 0.0
    o = hull[0]
    for i in range(1, len(hull) - 1):
        a, b = hull[i], hull[i + 1]
        fan += abs((a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)) / 2
    assert area == pytest.approx(fan, rel=1e-9, abs=1e-12)


stroke_strategy = st.lists(st.builds(Point, finite, finite), min_size=2, max_size=25).filter(
    lambda pts: len({(p.x, p.y) for p in pts}) >= 2
)


@given(stroke_strategy, st.sampled_from([0.25, 0.5, 2.0, 4.0, 8.0, 64.0]))
@settings(max_examples=100)
def test_dominant_points_scale_covariant(pts, s):
    """Power-of-two scales keep every comparison exact."""
    stroke = Polyline(pts)
    eps = 0.5
    base = dominant_points(stroke, eps)
    scaled_stroke = Polyline([Point(p.x * s, p.y * s) for p in stroke.points])
    scaled = dominant_points(scaled_stroke, eps * s)
    assert scaled == [Point(p.x * s, p.y * s) for p in base]


@given(stroke_strategy, st.floats(min_value=0.01, max_value=10))
@settings(max_examples=100)
def test_dominant_points_subset_order_endpoints(pts, eps):
    stroke = Polyline(pts)
    got = dominant_points(stroke, eps)
    assert got[0] == stroke.points[0]
    assert got[-1] == stroke.points[-1]
    # Ordered subset of the input.
    idx = []
    pool = list(stroke.points)
    j = 0
    for p in got:
        while pool[j] != p:
            j += 1
        idx.append(j)
    assert idx == sorted(idx)
    assert len(got) <= len(stroke.points)
