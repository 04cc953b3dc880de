"""Regenerate the bundled sample dataset.

Writes src/infogen/data/sample/ from the shape/template definitions below,
then clusters and indexes it with seed 0. Output is deterministic; run
after changing any definition and commit the result.
"""

from __future__ import annotations

import math
from pathlib import Path

from infogen.compose import ConnectionStyle
from infogen.dataset import (
    ConnectionShape,
    DatasetManifest,
    Palette,
    save_manifest,
    validate_vg_template,
)
from infogen.geometry import Point
from infogen.layout import VifLayout
from infogen.pipeline import build_indices

OUT = Path(__file__).resolve().parents[1] / "src" / "infogen" / "data" / "sample"


def _pts(pairs):
    return tuple(Point(round(x, 4), round(y, 4)) for x, y in pairs)


def _linspace(a, b, n):
    if n == 1:
        return [a]
    return [a + (b - a) * i / (n - 1) for i in range(n)]


def line_h(n):
    return _pts((x, 0.5) for x in _linspace(0.08, 0.92, n))


def line_v(n):
    return _pts((0.5, y) for y in _linspace(0.08, 0.92, n))


def diag(n):
    return _pts((t, t) for t in _linspace(0.1, 0.9, n))


def zigzag_h(n):
    return _pts((x, 0.3 if i % 2 == 0 else 0.7) for i, x in enumerate(_linspace(0.08, 0.92, n)))


def zigzag_v(n):
    return _pts((0.3 if i % 2 == 0 else 0.7, y) for i, y in enumerate(_linspace(0.08, 0.92, n)))


def _curve(fn, n):
    """Sample a parametric curve at n points, evenly spaced by arc length."""
    dense = [fn(t) for t in _linspace(0.0, 1.0, 400)]
    return _along(dense, n)


def arc_up(n):
    return _curve(lambda t: (0.1 + 0.8 * t, 0.25 + 0.55 * (1 - (2 * t - 1) ** 2)), n)


def arc_down(n):
    return _curve(lambda t: (0.1 + 0.8 * t, 0.75 - 0.55 * (1 - (2 * t - 1) ** 2)), n)


def ring(n):
    out = []
    for i in range(n):
        a = math.radians(-90 + 360 * i / n)
        out.append((0.5 + 0.38 * math.cos(a), 0.5 + 0.38 * math.sin(a)))
    return _pts(out)


def s_curve(n):
    return _curve(lambda t: (0.1 + 0.8 * t, 0.5 - 0.38 * math.sin(math.pi * (2 * t - 1))), n)


def _along(path, n):
    """n points evenly spaced (by arc length) along a corner path."""
    lengths = []
    total = 0.0
    for a, b in zip(path, path[1:]):
        d = math.dist(a, b)
        lengths.append(d)
        total += d
    out = []
    for i in range(n):
        target = total * i / (n - 1)
        acc = 0.0
        for (a, b), d in zip(zip(path, path[1:]), lengths):
            if acc + d >= target or (a, b) == (path[-2], path[-1]):
                f = 0.0 if d == 0 else (target - acc) / d
                f = min(max(f, 0.0), 1.0)
                out.append((a[0] + (b[0] - a[0]) * f, a[1] + (b[1] - a[1]) * f))
                break
            acc += d
    return _pts(out)


def ell(n):
    return _along([(0.15, 0.1), (0.15, 0.85), (0.9, 0.85)], n)


def vee(n):
    return _along([(0.1, 0.15), (0.5, 0.85), (0.9, 0.15)], n)


def serpentine(n):
    rows = n // 2
    ys = _linspace(0.14, 0.86, rows)
    out = []
    for r, y in enumerate(ys):
        xs = (0.2, 0.8) if r % 2 == 0 else (0.8, 0.2)
        out.append((xs[0], y))
        out.append((xs[1], y))
    return _pts(out)


LAYOUTS = [
    ("line-h", line_h, [3, 5, 7], "regular"),
    ("line-v", line_v, [3, 5, 7], "regular"),
    ("diag", diag, [2, 4, 6], "regular"),
    ("zigzag-h", zigzag_h, [4, 6, 8], "alternating"),
    ("zigzag-v", zigzag_v, [4, 6], "alternating"),
    ("arc-up", arc_up, [3, 5, 7], "flow_shape"),
    ("arc-down", arc_down, [3, 5], "flow_shape"),
    ("ring", ring, [4, 6, 8], "pivot"),
    ("s-curve", s_curve, [4, 6, 8], "flow_shape"),
    ("ell", ell, [3, 5], "none"),
    ("vee", vee, [5, 7], "regular"),
    ("serpentine", serpentine, [4, 6, 8], "none"),
]


VG_TEMPLATES = {
    "vg-card": """<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 120 80">
  <rect data-anchor="1" data-theme-color="1" x="2" y="2" width="116" height="76" rx="6" fill="#e8eef7"/>
  <rect data-theme-color="2" x="2" y="2" width="116" height="18" rx="6" fill="#c8d8ee"/>
  <rect data-slot="title" x="8" y="5" width="104" height="13" fill="none"/>
  <rect data-slot="text" x="8" y="26" width="104" height="48" fill="none"/>
</svg>
""",
    "vg-plain": """<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 70">
  <rect data-anchor="1" x="1" y="1" width="98" height="68" fill="#ffffff" stroke="#9aa7b5" stroke-width="2"/>
  <rect data-theme-color="2" x="1" y="60" width="98" height="9" fill="#c8d8ee"/>
  <rect data-slot="title" x="6" y="5" width="88" height="14" fill="none"/>
  <rect data-slot="text" x="6" y="23" width="88" height="34" fill="none"/>
</svg>
""",
    "vg-banner": """<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 140 70">
  <rect data-anchor="1" data-theme-color="1" x="2" y="2" width="136" height="66" rx="4" fill="#f2f4f8"/>
  <circle data-theme-color="4" cx="20" cy="35" r="14" fill="#ffb86b"/>
  <rect data-slot="label" x="10" y="27" width="20" height="16" fill="none"/>
  <rect data-slot="title" x="40" y="8" width="92" height="16" fill="none"/>
  <rect data-slot="text" x="40" y="30" width="92" height="34" fill="none"/>
</svg>
""",
    "vg-photo": """<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 110 110">
  <rect data-anchor="1" data-theme-color="1" x="2" y="2" width="106" height="106" rx="8" fill="#eef1f0"/>
  <rect data-theme-color="3" x="8" y="8" width="94" height="50" fill="#bcd7cf"/>
  <rect data-slot="image" x="10" y="10" width="90" height="46" fill="none"/>
  <rect data-slot="title" x="8" y="62" width="94" height="14" fill="none"/>
  <rect data-slot="text" x="8" y="80" width="94" height="24" fill="none"/>
</svg>
""",
    "vg-note": """<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 90 60">
  <rect data-anchor="1" data-theme-color="2" x="1" y="1" width="88" height="58" rx="10" fill="#fdf3d8"/>
  <rect data-slot="text" x="7" y="7" width="76" height="46" fill="none"/>
</svg>
""",
    "vg-pin": """<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 64">
  <circle data-anchor="1" data-theme-color="4" cx="18" cy="32" r="15" fill="#f2a65a"/>
  <rect data-theme-color="1" x="36" y="6" width="60" height="52" rx="6" fill="#f5f7fa"/>
  <rect data-slot="label" x="8" y="24" width="20" height="16" fill="none"/>
  <rect data-slot="text" x="40" y="10" width="52" height="44" fill="none"/>
</svg>
""",
    "vg-badge": """<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 80 80">
  <circle data-anchor="1" data-theme-color="1" cx="40" cy="40" r="38" fill="#e3e9f2"/>
  <circle data-theme-color="3" cx="40" cy="28" r="12" fill="#bcd7cf"/>
  <rect data-slot="label" x="30" y="20" width="20" height="16" fill="none"/>
  <rect data-slot="title" x="12" y="44" width="56" height="18" fill="none"/>
</svg>
""",
    "vg-panel": """<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 130 100">
  <rect data-anchor="1" data-theme-color="1" x="2" y="2" width="126" height="96" rx="5" fill="#f0f2f5"/>
  <rect data-theme-color="2" x="2" y="2" width="126" height="16" fill="#d4dfeb"/>
  <rect data-theme-color="4" x="104" y="4" width="22" height="12" rx="5" fill="#f2a65a"/>
  <rect data-slot="label" x="106" y="5" width="18" height="10" fill="none"/>
  <rect data-slot="title" x="8" y="4" width="92" height="12" fill="none"/>
  <rect data-slot="image" x="8" y="24" width="50" height="44" fill="#dde4ea"/>
  <rect data-slot="text" x="64" y="24" width="58" height="70" fill="none"/>
</svg>
""",
    "vg-tag": """<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 70 36">
  <rect data-anchor="1" data-theme-color="4" x="1" y="1" width="68" height="34" rx="17" fill="#ffd6a5"/>
  <rect data-slot="label" x="10" y="6" width="50" height="24" fill="none"/>
</svg>
""",
}

VG_USAGE = {
    "vg-card": ["line-h-3", "line-h-5", "diag-4", "zigzag-h-4", "arc-up-5", "vee-5"],
    "vg-plain": ["line-v-3", "s-curve-4"],
    "vg-banner": ["line-h-7", "zigzag-h-6", "serpentine-6", "ring-6"],
    "vg-photo": ["arc-down-5", "ring-8", "s-curve-6"],
    "vg-note": ["diag-2", "ell-3", "line-v-5"],
    "vg-pin": ["zigzag-v-4", "vee-7", "ring-4"],
    "vg-badge": ["ring-4", "ring-6", "ring-8"],
    "vg-panel": [
        "line-h-3",
        "line-v-7",
        "zigzag-v-6",
        "arc-up-7",
        "s-curve-8",
        "serpentine-8",
        "diag-6",
        "vee-7",
    ],
    "vg-tag": ["ell-5"],
}

CONNECTION_SHAPES = {
    "arrow": """<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 20">
  <rect data-theme-color="3" x="0" y="8" width="84" height="4" fill="#51669b"/>
  <path data-theme-color="3" d="M84 2 L100 10 L84 18 Z" fill="#51669b"/>
</svg>
""",
    "bar": """<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 20">
  <rect data-theme-color="3" x="0" y="7" width="100" height="6" rx="3" fill="#51669b"/>
</svg>
""",
    "dashes": """<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 20">
  <rect data-theme-color="3" x="0" y="8" width="22" height="4" fill="#51669b"/>
  <rect data-theme-color="3" x="39" y="8" width="22" height="4" fill="#51669b"/>
  <rect data-theme-color="3" x="78" y="8" width="22" height="4" fill="#51669b"/>
</svg>
""",
    "chevrons": """<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 20">
  <path data-theme-color="3" d="M10 2 L28 10 L10 18 L4 18 L22 10 L4 2 Z" fill="#51669b"/>
  <path data-theme-color="3" d="M50 2 L68 10 L50 18 L44 18 L62 10 L44 2 Z" fill="#51669b"/>
  <path data-theme-color="3" d="M90 2 L100 10 L90 18 L84 18 L94 10 L84 2 Z" fill="#51669b"/>
</svg>
""",
    "dots": """<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 20">
  <circle data-theme-color="3" cx="10" cy="10" r="5" fill="#51669b"/>
  <circle data-theme-color="3" cx="37" cy="10" r="5" fill="#51669b"/>
  <circle data-theme-color="3" cx="64" cy="10" r="5" fill="#51669b"/>
  <circle data-theme-color="3" cx="91" cy="10" r="5" fill="#51669b"/>
</svg>
""",
}

PALETTES = [
    ("ocean", ["#e8f0f7", "#c3d9ec", "#51669b", "#f2a65a"]),
    ("meadow", ["#eef5ec", "#cfe6cb", "#4f7f52", "#e0a458"]),
    ("slate", ["#f1f1f3", "#d8d9de", "#5b5f6d", "#c96f53"]),
]


def build() -> DatasetManifest:
    layouts = []
    styles = {}
    for family, fn, counts, style in LAYOUTS:
        for n in counts:
            lid = f"{family}-{n}"
            layouts.append(VifLayout(id=lid, points=fn(n), source="sample"))
            styles[lid] = ConnectionStyle(style)

    templates = [
        validate_vg_template(svg, vg_id=vid, source="sample")
        for vid, svg in VG_TEMPLATES.items()
    ]
    shapes = [ConnectionShape(id=sid, svg=svg) for sid, svg in CONNECTION_SHAPES.items()]
    palettes = [Palette(name=n, colors=tuple(c)) for n, c in PALETTES]

    manifest = DatasetManifest(
        version="1.0.0",
        layouts=layouts,
        vg_templates=templates,
        connection_shapes=shapes,
        palettes=palettes,
        vg_usage={k: tuple(v) for k, v in VG_USAGE.items()},
        layout_styles=styles,
    )
    return build_indices(manifest, seed=0)


def main() -> None:
    manifest = build()
    save_manifest(manifest, OUT)
    print(f"wrote sample dataset: {len(manifest.layouts)} layouts -> {OUT}")


if __name__ == "__main__":
    main()
