"""Shared fixtures: sample dataset access and synthetic layout shapes."""

from __future__ import annotations

import math

import pytest

from infogen.dataset import load_manifest, sample_dataset_path
from infogen.geometry import Point
from infogen.layout import VifLayout


@pytest.fixture(scope="session")
def sample_manifest():
    return load_manifest(sample_dataset_path())


def _linspace(a, b, n):
    return [a + (b - a) * i / (n - 1) for i in range(n)]


def shape_points(kind: str, n: int = 5) -> tuple[Point, ...]:
    """Twelve mutually distinct polyline shapes in the unit square."""
    if kind == "line-h":
        pts = [(x, 0.5) for x in _linspace(0.1, 0.9, n)]
    elif kind == "line-v":
        pts = [(0.5, y) for y in _linspace(0.1, 0.9, n)]
    elif kind == "diag":
        pts = [(t, t) for t in _linspace(0.1, 0.9, n)]
    elif kind == "anti-diag":
        pts = [(t, 1.0 - t) for t in _linspace(0.1, 0.9, n)]
    elif kind == "zigzag-h":
        pts = [(x, 0.25 if i % 2 == 0 else 0.75) for i, x in enumerate(_linspace(0.1, 0.9, n))]
    elif kind == "zigzag-v":
        pts = [(0.25 if i % 2 == 0 else 0.75, y) for i, y in enumerate(_linspace(0.1, 0.9, n))]
    elif kind == "arc-up":
        pts = [(0.1 + 0.8 * t, 0.2 + 0.6 * (1 - (2 * t - 1) ** 2)) for t in _linspace(0, 1, n)]
    elif kind == "arc-down":
        pts = [(0.1 + 0.8 * t, 0.8 - 0.6 * (1 - (2 * t - 1) ** 2)) for t in _linspace(0, 1, n)]
    elif kind == "ring":
        pts = [
            (
                0.5 + 0.38 * math.cos(math.radians(-90 + 360 * i / n)),
                0.5 + 0.38 * math.sin(math.radians(-90 + 360 * i / n)),
            )
            for i in range(n)
        ]
    elif kind == "ell":
        path = [(0.15, 0.1), (0.15, 0.85), (0.9, 0.85)]
        pts = _along_path(path, n)
    elif kind == "vee":
        path = [(0.1, 0.1), (0.5, 0.9), (0.9, 0.1)]
        pts = _along_path(path, n)
    elif kind == "corner-tr":
        path = [(0.1, 0.15), (0.85, 0.15), (0.85, 0.9)]
        pts = _along_path(path, n)
    else:
        raise ValueError(kind)
    return tuple(Point(x, y) for x, y in pts)


SHAPE_KINDS = [
    "line-h",
    "line-v",
    "diag",
    "anti-diag",
    "zigzag-h",
    "zigzag-v",
    "arc-up",
    "arc-down",
    "ring",
    "ell",
    "vee",
    "corner-tr",
]


def _along_path(path, n):
    lengths = [math.dist(a, b) for a, b in zip(path, path[1:])]
    total = sum(lengths)
    out = []
    for i in range(n):
        target = total * i / (n - 1)
        acc = 0.0
        for (a, b), d in zip(zip(path, path[1:]), lengths):
            if acc + d >= target or (a, b) == (path[-2], path[-1]):
                f = 0.0 if d == 0 else min(max((target - acc) / d, 0.0), 1.0)
                out.append((a[0] + (b[0] - a[0]) * f, a[1] + (b[1] - a[1]) * f))
                break
            acc += d
    return out


def jittered_copies(seed: int = 0, amount: float = 0.004) -> list[VifLayout]:
    """12 shapes x 2 jittered copies; jitter < half a 32-grid cell."""
    import random

    rng = random.Random(seed)
    layouts = []
    for kind in SHAPE_KINDS:
        base = shape_points(kind, 5)
        for copy in range(2):
            pts = tuple(
                Point(
                    min(max(p.x + rng.uniform(-amount, amount), 0.0), 1.0),
                    min(max(p.y + rng.uniform(-amount, amount), 0.0), 1.0),
                )
                for p in base
            )
            layouts.append(VifLayout(id=f"{kind}/{copy}", points=pts, source="fixture"))
    return layouts
