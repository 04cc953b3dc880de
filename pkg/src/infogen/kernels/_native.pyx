# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Native kernel implementations.

Mirrors `_pure.py` operation-for-operation: identical arithmetic order so
both backends return bit-identical doubles. Keep the two files in sync.
"""

from libc.math cimport fabs, sqrt
from libc.stdlib cimport free, malloc

BACKEND = "native"


def hull_indices(double[:, ::1] pts):
    cdef Py_ssize_t n = pts.shape[0]
    cdef list keys = []
    cdef Py_ssize_t i, j
    for i in range(n):
        keys.append((pts[i, 0], pts[i, 1], i))
    keys.sort()
    cdef list uniq = []
    for k_obj in keys:
        i = <Py_ssize_t> k_obj[2]
        if uniq:
            j = uniq[len(uniq) - 1]
            if pts[i, 0] == pts[j, 0] and pts[i, 1] == pts[j, 1]:
                continue
        uniq.append(i)
    cdef Py_ssize_t m = len(uniq)
    if m <= 2:
        return uniq

    cdef Py_ssize_t *idx = <Py_ssize_t *> malloc(m * sizeof(Py_ssize_t))
    cdef Py_ssize_t *stack = <Py_ssize_t *> malloc(2 * m * sizeof(Py_ssize_t))
    if idx == NULL or stack == NULL:
        free(idx)
        free(stack)
        raise MemoryError()
    for i in range(m):
        idx[i] = uniq[i]

    cdef Py_ssize_t top = 0, k, o, a
    cdef double cr
    cdef list lower, upper
    try:
        # Lower hull.
        for k in range(m):
            i = idx[k]
            while top >= 2:
                o = stack[top - 2]
                a = stack[top - 1]
                cr = (pts[a, 0] - pts[o, 0]) * (pts[i, 1] - pts[o, 1]) - (
                    pts[a, 1] - pts[o, 1]
                ) * (pts[i, 0] - pts[o, 0])
                if cr <= 0.0:
                    top -= 1
                else:
                    break
            stack[top] = i
            top += 1
        lower = [stack[k] for k in range(top)]
        # Upper hull.
        top = 0
        for k in range(m - 1, -1, -1):
            i = idx[k]
            while top >= 2:
                o = stack[top - 2]
                a = stack[top - 1]
                cr = (pts[a, 0] - pts[o, 0]) * (pts[i, 1] - pts[o, 1]) - (
                    pts[a, 1] - pts[o, 1]
                ) * (pts[i, 0] - pts[o, 0])
                if cr <= 0.0:
                    top -= 1
                else:
                    break
            stack[top] = i
            top += 1
        upper = [stack[k] for k in range(top)]
    finally:
        free(idx)
        free(stack)
    hull = lower[: len(lower) - 1] + upper[: len(upper) - 1]
    if len(hull) < 3:
        return [uniq[0], uniq[len(uniq) - 1]]
    return hull


def polygon_area(double[:, ::1] pts):
    cdef Py_ssize_t n = pts.shape[0]
    if n < 3:
        return 0.0
    cdef double acc = 0.0
    cdef Py_ssize_t i, j
    for i in range(n):
        j = i + 1
        if j == n:
            j = 0
        acc += pts[i, 0] * pts[j, 1] - pts[j, 0] * pts[i, 1]
    return fabs(acc) * 0.5


def rdp_keep(double[:, ::1] pts, double eps):
    cdef Py_ssize_t n = pts.shape[0]
    keep = [False] * n
    keep[0] = True
    keep[n - 1] = True
    cdef list work = [(0, n - 1)]
    cdef Py_ssize_t lo, hi, i, imax
    cdef double ax, ay, bx, by, dx, dy, seg, dmax, d, px, py, ex, ey
    while work:
        lo, hi = work.pop()
        if hi - lo < 2:
            continue
        ax = pts[lo, 0]
        ay = pts[lo, 1]
        bx = pts[hi, 0]
        by = pts[hi, 1]
        dx = bx - ax
        dy = by - ay
        seg = sqrt(dx * dx + dy * dy)
        dmax = -1.0
        imax = lo
        for i in range(lo + 1, hi):
            px = pts[i, 0]
            py = pts[i, 1]
            if seg == 0.0:
                ex = px - ax
                ey = py - ay
                d = sqrt(ex * ex + ey * ey)
            else:
                d = fabs(dx * (ay - py) - (ax - px) * dy) / seg
            if d > dmax:
                dmax = d
                imax = i
        if dmax > eps:
            keep[imax] = True
            work.append((lo, imax))
            work.append((imax, hi))
    return keep


def distance_stats(double[:, ::1] pts, double cx, double cy):
    cdef Py_ssize_t n = pts.shape[0]
    cdef double total = 0.0, ss = 0.0, dx, dy, dev, mean
    cdef Py_ssize_t i
    for i in range(n):
        dx = pts[i, 0] - cx
        dy = pts[i, 1] - cy
        total += sqrt(dx * dx + dy * dy)
    mean = total / n
    for i in range(n):
        dx = pts[i, 0] - cx
        dy = pts[i, 1] - cy
        dev = sqrt(dx * dx + dy * dy) - mean
        ss += dev * dev
    return mean, sqrt(ss / n)


def any_in_bbox(double[:, ::1] pts, double x, double y, double w, double h):
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t i
    cdef double px, py
    for i in range(n):
        px = pts[i, 0]
        py = pts[i, 1]
        if x <= px <= x + w and y <= py <= y + h:
            return True
    return False


def match_cost(double[:, ::1] a, double[:, ::1] b):
    cdef Py_ssize_t n = a.shape[0]
    cdef double fwd = 0.0, rev = 0.0, dx, dy
    cdef Py_ssize_t i, j
    for i in range(n):
        dx = a[i, 0] - b[i, 0]
        dy = a[i, 1] - b[i, 1]
        fwd += sqrt(dx * dx + dy * dy)
        j = n - 1 - i
        dx = a[i, 0] - b[j, 0]
        dy = a[i, 1] - b[j, 1]
        rev += sqrt(dx * dx + dy * dy)
    if rev < fwd:
        fwd = rev
    return fwd / n


def rasterize(double[:, ::1] pts, unsigned char[:, ::1] out):
    cdef Py_ssize_t size = out.shape[0]
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t i, s, steps, ix, iy
    cdef double x0, y0, x1, y1, span, dy, t, x, y
    for i in range(n - 1):
        x0 = pts[i, 0]
        y0 = pts[i, 1]
        x1 = pts[i + 1, 0]
        y1 = pts[i + 1, 1]
        span = fabs(x1 - x0)
        dy = fabs(y1 - y0)
        if dy > span:
            span = dy
        steps = <Py_ssize_t> (span * size) * 2 + 1
        for s in range(steps + 1):
            t = (<double> s) / steps
            x = x0 + (x1 - x0) * t
            y = y0 + (y1 - y0) * t
            ix = <Py_ssize_t> (x * size)
            iy = <Py_ssize_t> (y * size)
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
        ix = <Py_ssize_t> (pts[0, 0] * size)
        iy = <Py_ssize_t> (pts[0, 1] * size)
        if ix < 0:
            ix = 0
        elif ix >= size:
            ix = size - 1
        if iy < 0:
            iy = 0
        elif iy >= size:
            iy = size - 1
        out[iy, ix] = 1


def resample(double[:, ::1] pts, double[:, ::1] out):
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t m = out.shape[0]
    cdef double *cum = <double *> malloc(n * sizeof(double))
    if cum == NULL:
        raise MemoryError()
    cdef double total = 0.0, dx, dy, target, span, frac
    cdef Py_ssize_t i, j, seg
    try:
        cum[0] = 0.0
        for i in range(1, n):
            dx = pts[i, 0] - pts[i - 1, 0]
            dy = pts[i, 1] - pts[i - 1, 1]
            total += sqrt(dx * dx + dy * dy)
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
    finally:
        free(cum)
