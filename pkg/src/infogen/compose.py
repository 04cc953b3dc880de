"""Design composition (pipeline stages 2 and 3).

Places a chosen VG template onto a chosen layout (position, rotation
toward the pivot, scale from point spacing), fits content into the
template's placeholders, ranks connection styles from per-cluster usage
counts, and generates connection placements per style.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from infogen.content import ContentItem, ContentSpec, slot_signature
from infogen.errors import ComposeError
from infogen.geometry import Point
from infogen.layout import Canvas, LayoutScore, PivotGraphic, VifLayout, denormalize
from infogen.vgindex import VgTemplate

# Size/spacing factors; exposed through EngineOptions as well.
VG_SIZE_FACTOR = 0.8  # VG larger extent as a share of minimum point spacing
CONNECTION_LENGTH_FACTOR = 0.6  # connector length as a share of free span
FLOW_SHAPE_INSET = 0.5  # flow-shape pull toward the center
GLYPH_ASPECT = 0.6  # assumed average glyph advance per font-size unit


class ConnectionStyle(Enum):
    FLOW_SHAPE = "flow_shape"
    REGULAR = "regular"
    ALTERNATING = "alternating"
    PIVOT = "pivot"
    NONE = "none"


STYLE_ORDER = list(ConnectionStyle)


@dataclass(frozen=True)
class Placement:
    vg_template_id: str
    position: Point
    rotation: float  # degrees in [-180, 180), about the template anchor
    scale: float
    content: ContentItem

    def __post_init__(self):
        if self.scale <= 0:
            raise ComposeError(f"placement scale must be > 0, got {self.scale}")
        if not -180.0 <= self.rotation < 180.0:
            raise ComposeError(f"rotation {self.rotation} outside [-180, 180)")


@dataclass(frozen=True)
class ConnectionPlacement:
    shape_id: str
    position: Point
    rotation: float
    length: float

    def __post_init__(self):
        if self.length < 0:
            raise ComposeError(f"connection length must be >= 0, got {self.length}")


@dataclass
class CVifIndex:
    """Observed connection-style counts per layout cluster."""

    counts: dict[int, dict[ConnectionStyle, int]] = field(default_factory=dict)


@dataclass(frozen=True)
class StyleRanking:
    entries: tuple[tuple[ConnectionStyle, float], ...]
    uniform_fallback: bool = False


@dataclass(frozen=True)
class DesignScore:
    e_o: int
    e_c: float
    e_u_raw: float
    u: float
    e_l: float
    tfidf: float
    p_style: float
    composite: float


@dataclass
class InfographicDesign:
    canvas: Canvas
    layout: VifLayout
    placements: list[Placement]
    connection_style: ConnectionStyle
    connections: list[ConnectionPlacement]
    pivot: Optional[PivotGraphic]
    heading: Optional[str]
    palette: tuple[str, ...]
    background: str
    score: DesignScore

    def __post_init__(self):
        if len(self.placements) != len(self.layout.points):
            raise ComposeError(
                f"{len(self.placements)} placements for {len(self.layout.points)} layout points"
            )
        if self.connection_style is ConnectionStyle.NONE and self.connections:
            raise ComposeError("style 'none' must have no connections")
        if self.connection_style is ConnectionStyle.PIVOT and len(self.connections) != len(
            self.placements
        ):
            raise ComposeError("pivot style needs one connection per visual group")


def _norm_angle(deg: float) -> float:
    """Map an angle to [-180, 180)."""
    a = math.fmod(deg + 180.0, 360.0)
    if a < 0:
        a += 360.0
    return a - 180.0


def place_vgs(
    layout: VifLayout,
    template: VgTemplate,
    content: ContentSpec,
    canvas: Canvas,
    pivot: Optional[PivotGraphic] = None,
    beta: float = VG_SIZE_FACTOR,
) -> list[Placement]:
    """One placement per layout point, in flow order.

    The template is scaled so its larger extent equals `beta` times the
    minimum spacing between layout points. With a pivot, each VG is rotated
    to the angle from the pivot center to its position (templates face +x);
    without one, rotation is 0.
    """
    if len(layout.points) != len(content.items):
        raise ComposeError(
            f"layout has {len(layout.points)} points but content has {len(content.items)} items"
        )
    pts = denormalize(layout, canvas)
    n = pts.shape[0]

    d_min = math.inf
    for i in range(n):
        for j in range(i + 1, n):
            d = math.hypot(pts[i, 0] - pts[j, 0], pts[i, 1] - pts[j, 1])
            if d < d_min:
                d_min = d
    if not math.isfinite(d_min) or d_min == 0.0:
        d_min = min(canvas.width, canvas.height) / 4.0

    larger_extent = max(template.extent.w, template.extent.h)
    if larger_extent <= 0:
        raise ComposeError(f"template '{template.id}' has zero extent")
    scale = beta * d_min / larger_extent

    placements = []
    for i, item in enumerate(content.items):
        position = Point(float(pts[i, 0]), float(pts[i, 1]))
        rotation = 0.0
        if pivot is not None:
            c = pivot.center
            rotation = _norm_angle(
                math.degrees(math.atan2(position.y - c.y, position.x - c.x))
            )
        placements.append(
            Placement(
                vg_template_id=template.id,
                position=position,
                rotation=rotation,
                scale=scale,
                content=item,
            )
        )
    return placements


def fit_font_size(text: str, width: float, height: float, aspect: float = GLYPH_ASPECT) -> tuple[int, list[str]]:
    """Largest integer font size whose greedy word wrap fits a box.

    Line height equals the font size; a character advances `aspect` times
    the font size. Returns the size and the wrapped lines. When not even
    size 1 fits, returns size 1 with its overflowing wrap.
    """
    words = text.split()
    if not words:
        return 0, []

    def wrap(size: int) -> Optional[list[str]]:
        max_chars = width / (aspect * size)
        lines: list[str] = []
        current = ""
        for word in words:
            candidate = word if not current else f"{current} {word}"
            if len(candidate) <= max_chars:
                current = candidate
                continue
            if not current:
                return None  # single word wider than the box
            lines.append(current)
            if len(word) > max_chars:
                return None
            current = word
        lines.append(current)
        if len(lines) * size > height:
            return None
        return lines

    lo, hi = 1, max(1, int(height))
    best: Optional[list[str]] = None
    best_size = 1
    while lo <= hi:
        mid = (lo + hi) // 2
        lines = wrap(mid)
        if lines is not None:
            best, best_size = lines, mid
            lo = mid + 1
        else:
            hi = mid - 1
    if best is None:
        return 1, wrap_overflow(words)
    return best_size, best


def wrap_overflow(words: list[str]) -> list[str]:
    """Fallback wrap when nothing fits: one word per line at size 1."""
    return list(words)


def rank_connection_styles(index: CVifIndex, cluster_id: int) -> StyleRanking:
    """Rank the five styles for a cluster with add-one smoothing.

    probability = (count + 1) / (total + 5). Unseen clusters fall back to
    the uniform distribution and are flagged.
    """
    counts = index.counts.get(int(cluster_id))
    if counts is None:
        entries = tuple((s, 1.0 / len(STYLE_ORDER)) for s in STYLE_ORDER)
        return StyleRanking(entries=entries, uniform_fallback=True)
    total = sum(counts.get(s, 0) for s in STYLE_ORDER)
    scored = [
        (s, (counts.get(s, 0) + 1) / (total + len(STYLE_ORDER))) for s in STYLE_ORDER
    ]
    scored.sort(key=lambda pair: (-pair[1], STYLE_ORDER.index(pair[0])))
    return StyleRanking(entries=tuple(scored), uniform_fallback=False)


def _segment_connection(
    a: Point, b: Point, shape_id: str, free_margin: float, gamma: float, inset_toward: Optional[Point] = None, delta: float = FLOW_SHAPE_INSET
) -> ConnectionPlacement:
    mx = (a.x + b.x) / 2.0
    my = (a.y + b.y) / 2.0
    if inset_toward is not None:
        mx = mx + delta * (inset_toward.x - mx)
        my = my + delta * (inset_toward.y - my)
    span = math.hypot(b.x - a.x, b.y - a.y)
    length = gamma * (span - free_margin)
    if length < 0:
        length = 0.0
    rotation = _norm_angle(math.degrees(math.atan2(b.y - a.y, b.x - a.x)))
    return ConnectionPlacement(
        shape_id=shape_id, position=Point(mx, my), rotation=rotation, length=length
    )


def generate_connections(
    style: ConnectionStyle,
    placements: list[Placement],
    pivot: Optional[PivotGraphic],
    canvas: Canvas,
    shape_id: str,
    vg_extent: float,
    gamma: float = CONNECTION_LENGTH_FACTOR,
    delta: float = FLOW_SHAPE_INSET,
) -> list[ConnectionPlacement]:
    """Connection placements for `style` over the placed VGs.

    Regular: one per flow line at its midpoint, angle along the line,
    length gamma * (spacing - vg_extent) clamped to >= 0. Alternating:
    regular restricted to even flow lines. Pivot: one per VG from the
    pivot center, placed at the segment midpoint. FlowShape: regular
    positions pulled `delta` of the way toward the pivot/canvas center.
    """
    if style is ConnectionStyle.NONE:
        return []
    positions = [p.position for p in placements]
    if style is ConnectionStyle.PIVOT:
        if pivot is None:
            raise ComposeError(
                "pivot connection style requires a pivot graphic", code="pivot_required"
            )
        c = pivot.center
        pivot_extent = max(pivot.bbox.w, pivot.bbox.h)
        margin = (pivot_extent + vg_extent) / 2.0
        return [
            _segment_connection(c, pos, shape_id, margin, gamma) for pos in positions
        ]

    center = pivot.center if pivot is not None else canvas.center
    connections = []
    for i in range(len(positions) - 1):
        if style is ConnectionStyle.ALTERNATING and i % 2 == 1:
            continue
        inset = center if style is ConnectionStyle.FLOW_SHAPE else None
        connections.append(
            _segment_connection(
                positions[i], positions[i + 1], shape_id, vg_extent, gamma, inset, delta
            )
        )
    return connections


def compose_design(
    content: ContentSpec,
    canvas: Canvas,
    layout: VifLayout,
    layout_score: LayoutScore,
    template: VgTemplate,
    vg_score: float,
    style: ConnectionStyle,
    style_prob: float,
    pivot: Optional[PivotGraphic] = None,
    palette: tuple[str, ...] = (),
    background: str = "#ffffff",
    shape_id: str = "",
    beta: float = VG_SIZE_FACTOR,
    gamma: float = CONNECTION_LENGTH_FACTOR,
    delta: float = FLOW_SHAPE_INSET,
    max_e_l: Optional[float] = None,
    max_tfidf: Optional[float] = None,
) -> InfographicDesign:
    """Assemble a full design from chosen stage results.

    The composite score is the product of stage scores, each normalized by
    its maximum over the candidate set (falling back to the design's own
    score when no maximum is supplied, and to 1 when a maximum is 0).
    """
    placements = place_vgs(layout, template, content, canvas, pivot, beta)
    vg_extent = placements[0].scale * max(template.extent.w, template.extent.h)
    connections = generate_connections(
        style, placements, pivot, canvas, shape_id, vg_extent, gamma, delta
    )

    norm_l = max_e_l if max_e_l is not None else layout_score.e_l
    norm_t = max_tfidf if max_tfidf is not None else vg_score
    layout_term = layout_score.e_l / norm_l if norm_l > 0 else 1.0
    vg_term = vg_score / norm_t if norm_t > 0 else 1.0
    composite = layout_term * vg_term * style_prob

    score = DesignScore(
        e_o=layout_score.e_o,
        e_c=layout_score.e_c,
        e_u_raw=layout_score.e_u_raw,
        u=layout_score.u,
        e_l=layout_score.e_l,
        tfidf=vg_score,
        p_style=style_prob,
        composite=composite,
    )
    return InfographicDesign(
        canvas=canvas,
        layout=layout,
        placements=placements,
        connection_style=style,
        connections=connections,
        pivot=pivot,
        heading=content.heading,
        palette=tuple(palette),
        background=background,
        score=score,
    )
