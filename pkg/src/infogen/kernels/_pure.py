"""Pure-Python kernel implementations.

Reference semantics for the native extension: `_native.pyx` mirrors these
functions operation-for-operation so both backends produce bit-identical
doubles. All point arrays are float64 numpy arrays of shape (n, 2).
"""

from __future__ import annotations

import math

BACKEND = "pure"


def hull_indices(pts):
    """Indices of the convex hull of `pts`, counter-clockwise.

    Andrew's monotone chain over lexicographically sorted points; collinear
    boundary points are dropped. Starts at the lexicographically smallest
    point. Degenerate inputs (all points equal / collinear) yield one or two
    indices.
    """
    n = pts.shape[0]
    keys = [(pts[i, 0], pts[i, 1], i) for i in range(n)]
    keys.sort()
    order = [k[2] for k in keys]
    # Deduplicate exactly equal points.
    uniq = []
    for i in order:
        if uniq:
            j = uniq[-1]
            if pts[i, 0] == pts[j, 0] and pts[i, 1] == pts[j, 1]:
                continue
        uniq.append(i)
    m = len(uniq)
    if m <= 2:
        return uniq

    def cross(o, a, b):
        return (pts[a, 0] - pts[o, 0]) * (pts[b, 1] - pts[o, 1]) - (
            pts[a, 1] - pts[o, 1]
        ) * (pts[b, 0] - pts[o, 0])

    lower = []
    for i in uniq:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], i) <= 0.0:
            lower.pop()
        lower.append(i)
    upper = []
    for i in reversed(uniq):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], i) <= 0.0:
            upper.pop()
        upper.append(i)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        # Fully collinear: keep the two extreme points.
        return [uniq[0], uniq[-1]]
    return hull


def polygon_area(pts):
    """Absolute shoelace area of the polygon `pts`; < 3 vertices -> 0."""
    n = pts.shape[0]
    if n < 3:
        return 0.0
    acc = 0.0
    for i in range(n):
        j = i + 1
        if j == n:
            j = 0
        acc += pts[i, 0] * pts[j, 1] - pts[j, 0] * pts[i, 1]
    return abs(acc) * 0.5


def rdp_keep(pts, eps):
    """Boolean keep-list for Ramer-Douglas-Peucker at tolerance `eps`.

    Endpoints always kept; a span is split at its farthest point while that
    perpendicular distance exceeds `eps`. Iterative (explicit stack).
    """
    n = pts.shape[0]
    keep = [False] * n
    keep[0] = True
    keep[n - 1] = True
    stack = [(0, n - 1)]
    while stack:
        lo, hi = stack.pop()
        if hi - lo < 2:
            continue
        ax = pts[lo, 0]
        ay = pts[lo, 1]
        bx = pts[hi, 0]
        by = pts[hi, 1]
        dx = bx - ax
        dy = by - ay
        seg = math.sqrt(dx * dx + dy * dy)
        dmax = -1.0
        imax = lo
        for i in range(lo + 1, hi):
            px = pts[i, 0]
            py = pts[i, 1]
            if seg == 0.0:
                ex = px - ax
                ey = py - ay
                d = math.sqrt(ex * ex + ey * ey)
            else:
                d = abs(dx * (ay - py) - (ax - px) * dy) / seg
            if d > dmax:
                dmax = d
                imax = i
        if dmax > eps:
            keep[imax] = True
            stack.append((lo, imax))
            stack.append((imax, hi))
    return keep


def distance_stats(pts, cx, cy):
    """(mean, population std) of Euclidean distances from `pts` to (cx, cy)."""
    n = pts.shape[0]
    total = 0.0
    for i in range(n):
        dx = pts[i, 0] - cx
        dy = pts[i, 1] - cy
        total += math.sqrt(dx * dx + dy * dy)
    mean = total / n
    ss = 0.0
    for i in range(n):
        dx = pts[i, 0] - cx
        dy = pts[i, 1] - cy
        dev = math.sqrt(dx * dx + dy * dy) - mean
        ss += dev * dev
    return mean, math.sqrt(ss / n)


def any_in_bbox(pts, x, y, w, h):
    """True iff any point lies in the box (boundary inclusive)."""
    n = pts.shape[0]
    for i in range(n):
        px = pts[i, 0]
        py = pts[i, 1]
        if x <= px <= x + w and y <= py <= y + h:
            return True
    return False


def match_cost(a, b):
    """Mean point-wise distance between equal-length sequences.

    Minimum over forward and reversed order of `b`, so the cost ignores
    drawing direction.
    """
    n = a.shape[0]
    fwd = 0.0
    rev = 0.0
    for i in range(n):
        dx = a[i, 0] - b[i, 0]
        dy = a[i, 1] - b[i, 1]
        fwd += math.sqrt(dx * dx + dy * dy)
        j = n - 1 - i
        dx = a[i, 0] - b[j, 0]
        dy = a[i, 1] - b[j, 1]
        rev += math.sqrt(dx * dx + dy * dy)
    if rev < fwd:
        fwd = rev
    return fwd / n


def rasterize(pts, out):
    """Stroke the unit-square polyline `pts` onto binary grid `out` (size x size).

    One-cell-wide stroke: every supersampled position along each segment marks
    the cell it falls in. Coordinates are clamped to the grid.
    """
    size = out.shape[0]
    n = pts.shape[0]
    for i in range(n - 1):
        x0 = pts[i, 0]
        y0 = pts[i, 1]
        x1 = pts[i + 1, 0]
        y1 = pts[i + 1, 1]
        span = abs(x1 - x0)
        dy = abs(y1 - y0)
        if dy > span:
            span = dy
        steps = int(span * size) * 2 + 1
        for s in range(steps + 1):
            t = s / steps
            x = x0 + (x1 - x0) * t
            y = y0 + (y1 - y0) * t
            ix = int(x * size)
            iy = int(y * size)
            if ix < 0:
                ix = 0
            elif ix >= size:
                ix = size - 1
            if iy < 0:
                iy = 0
            elif iy >= size:
                iy = size - 1
            out[iy, ix] = 1
    if n == 1:
        ix = min(max(int(pts[0, 0] * size), 0), size - 1)
        iy = min(max(int(pts[0, 1] * size), 0), size - 1)
        out[iy, ix] = 1


def resample(pts, out):
    """Resample polyline `pts` to out.shape[0] points, uniform in arc length."""
    n = pts.shape[0]
    m = out.shape[0]
    cum = [0.0] * n
    total = 0.0
    for i in range(1, n):
        dx = pts[i, 0] - pts[i - 1, 0]
        dy = pts[i, 1] - pts[i - 1, 1]
        total += math.sqrt(dx * dx + dy * dy)
        cum[i] = total
    if total == 0.0:
        for j in range(m):
            out[j, 0] = pts[0, 0]
            out[j, 1] = pts[0, 1]
        return
    seg = 1
    for j in range(m):
        if m == 1:
            target = 0.0
        else:
            target = total * j / (m - 1)
        while seg < n - 1 and cum[seg] < target:
            seg += 1
        span = cum[seg] - cum[seg - 1]
        if span == 0.0:
            frac = 0.0
        else:
            frac = (target - cum[seg - 1]) / span
        out[j, 0] = pts[seg - 1, 0] + (pts[seg, 0] - pts[seg - 1, 0]) * frac
        out[j, 1] = pts[seg - 1, 1] + (pts[seg, 1] - pts[seg - 1, 1]) * frac
