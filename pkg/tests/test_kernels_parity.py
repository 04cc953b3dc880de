"""The native extension must be bit-identical to the pure-Python kernels."""

import numpy as np
import pytest

from infogen.kernels import _pure

native = pytest.importorskip("infogen.kernels._native")


def _cases(seed=0, count=300):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(2, 40))
        yield rng, np.ascontiguousarray(rng.random((n, 2)) * rng.uniform(0.5, 500))


def test_hull_indices_parity():
    for rng, pts in _cases(1):
        assert native.hull_indices(pts) == _pure.hull_indices(pts)


def test_hull_with_duplicates_and_collinear():
    grid = np.array(
        [[float(x), float(y)] for x in range(4) for y in range(4)] * 2, dtype=np.float64
    )
    assert native.hull_indices(grid) == _pure.hull_indices(grid)
    line = np.array([[float(i), float(2 * i)] for i in range(10)])
    assert native.hull_indices(line) == _pure.hull_indices(line)


def test_polygon_area_parity():
    for rng, pts in _cases(2):
        assert native.polygon_area(pts) == _pure.polygon_area(pts)


def test_rdp_keep_parity():
    for rng, pts in _cases(3):
        eps = float(rng.uniform(1e-6, 50))
        assert native.rdp_keep(pts, eps) == _pure.rdp_keep(pts, eps)


def test_distance_stats_parity():
    for rng, pts in _cases(4):
        cx, cy = float(rng.uniform(-10, 10)), float(rng.uniform(-10, 10))
        assert native.distance_stats(pts, cx, cy) == _pure.distance_stats(pts, cx, cy)


def test_any_in_bbox_parity():
    for rng, pts in _cases(5):
        x, y = float(rng.uniform(0, 100)), float(rng.uniform(0, 100))
        w, h = float(rng.uniform(0, 200)), float(rng.uniform(0, 200))
        assert native.any_in_bbox(pts, x, y, w, h) == _pure.any_in_bbox(pts, x, y, w, h)


def test_match_cost_parity():
    rng = np.random.default_rng(6)
    for _ in range(300):
        n = int(rng.integers(2, 13))
        a = np.ascontiguousarray(rng.random((n, 2)))
        b = np.ascontiguousarray(rng.random((n, 2)))
        assert native.match_cost(a, b) == _pure.match_cost(a, b)


def test_rasterize_parity():
    rng = np.random.default_rng(7)
    for _ in range(200):
        n = int(rng.integers(1, 13))
        pts = np.ascontiguousarray(rng.random((n, 2)))
        g1 = np.zeros((32, 32), dtype=np.uint8)
        g2 = np.zeros((32, 32), dtype=np.uint8)
        native.rasterize(pts, g1)
        _pure.rasterize(pts, g2)
        assert np.array_equal(g1, g2)


def test_resample_parity():
    rng = np.random.default_rng(8)
    for _ in range(300):
        n = int(rng.integers(2, 40))
        m = int(rng.integers(1, 13))
        pts = np.ascontiguousarray(rng.random((n, 2)) * 100)
        o1 = np.empty((m, 2))
        o2 = np.empty((m, 2))
        native.resample(pts, o1)
        _pure.resample(pts, o2)
        assert np.array_equal(o1, o2)
