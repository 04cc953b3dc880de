"""Deterministic SVG assembly.

Byte-identical output for equal inputs: fixed 4-decimal number formatting,
attribute order taken from the template source, fixed layer order
(background, pivot, connections, VG groups, heading). Templates are SVG
documents whose placeholders carry `data-slot` attributes; embedded
content is counter-rotated so text and images stay upright regardless of
the VG rotation.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Optional
from xml.sax.saxutils import escape

from infogen.compose import GLYPH_ASPECT, InfographicDesign, fit_font_size
from infogen.content import SLOT_KINDS, ContentItem, slot_signature
from infogen.errors import ComposeError
from infogen.geometry import BBox
from infogen.vgindex import VgTemplate

TEXT_FILL = "#202020"
FONT_FAMILY = "Helvetica, Arial, sans-serif"
PIVOT_FILL = "#d9d9d9"
HEADING_BAND_SHARE = 0.1


def _fmt(x: float) -> str:
    s = f"{x:.4f}"
    return "0.0000" if s == "-0.0000" else s


def _attr(value: str) -> str:
    return escape(value, {'"': "&quot;"})


def _local(name: str) -> str:
    return name.rsplit("}", 1)[-1]


def _viewbox(root: ET.Element) -> tuple[float, float, float, float]:
    vb = root.get("viewBox")
    if vb:
        parts = [float(v) for v in vb.replace(",", " ").split()]
        if len(parts) == 4:
            return parts[0], parts[1], parts[2], parts[3]
    w = root.get("width")
    h = root.get("height")
    if w and h:
        return 0.0, 0.0, float(w), float(h)
    raise ComposeError("SVG fragment has neither viewBox nor width/height")


def _write_element(el: ET.Element, out: list[str], palette: tuple[str, ...]) -> None:
    tag = _local(el.tag)
    attrs = dict(el.attrib)
    theme = attrs.get("data-theme-color")
    if theme is not None and palette:
        idx = int(theme)
        if 1 <= idx <= len(palette):
            attrs["fill"] = palette[idx - 1]
    out.append(f"<{tag}")
    for key, value in attrs.items():
        out.append(f' {_local(key)}="{_attr(value)}"')
    text = el.text or ""
    children = list(el)
    if not children and not text.strip():
        out.append("/>")
    else:
        out.append(">")
        if text.strip():
            out.append(escape(text))
        for child in children:
            _write_element(child, out, palette)
            tail = child.tail or ""
            if tail.strip():
                out.append(escape(tail))
        out.append(f"</{tag}>")


def _fragment_body(svg_source: str, palette: tuple[str, ...] = ()) -> str:
    root = ET.fromstring(svg_source)
    out: list[str] = []
    for child in root:
        _write_element(child, out, palette)
    return "".join(out)


def _text_block(value: str, box: BBox) -> str:
    size, lines = fit_font_size(value, box.w, box.h, GLYPH_ASPECT)
    if size == 0 or not lines:
        return ""
    cx = box.x + box.w / 2.0
    top = box.y + (box.h - len(lines) * size) / 2.0
    out = [
        f'<text font-family="{FONT_FAMILY}" font-size="{_fmt(float(size))}"'
        f' fill="{TEXT_FILL}" text-anchor="middle">'
    ]
    for i, line in enumerate(lines):
        baseline = top + size * (i + 0.8)
        out.append(f'<tspan x="{_fmt(cx)}" y="{_fmt(baseline)}">{escape(line)}</tspan>')
    out.append("</text>")
    return "".join(out)


def _image_element(href: str, box: BBox) -> str:
    return (
        f'<image x="{_fmt(box.x)}" y="{_fmt(box.y)}" width="{_fmt(box.w)}"'
        f' height="{_fmt(box.h)}" preserveAspectRatio="xMidYMid meet"'
        f' href="{_attr(href)}"/>'
    )


def embed_content(template: VgTemplate, item: ContentItem, rotation: float) -> str:
    """SVG fragment filling the template's placeholders with `item`.

    Each populated slot renders into its placeholder box; text gets the
    largest fitting font size, images scale to fit with preserved aspect.
    Every slot group is counter-rotated by -rotation about the placeholder
    center (omitted at rotation 0) so content reads upright.
    """
    missing = slot_signature(item) - frozenset(template.slots)
    if missing:
        raise ComposeError(
            f"template '{template.id}' lacks slots: {', '.join(sorted(missing))}"
        )
    parts: list[str] = []
    for kind in SLOT_KINDS:
        value = getattr(item, kind)
        if value is None or not value.strip():
            continue
        box = template.slots[kind]
        body = _image_element(value, box) if kind == "image" else _text_block(value, box)
        if not body:
            continue
        if rotation != 0.0:
            cx = box.x + box.w / 2.0
            cy = box.y + box.h / 2.0
            body = (
                f'<g transform="rotate({_fmt(-rotation)} {_fmt(cx)} {_fmt(cy)})">'
                f"{body}</g>"
            )
        parts.append(f'<g class="slot-{kind}">{body}</g>')
    return "".join(parts)


def _fit_transform(vb: tuple[float, float, float, float], box: BBox) -> str:
    """Transform fitting a viewBox into a target box, aspect preserved."""
    _, _, vw, vh = vb
    vcx = vb[0] + vw / 2.0
    vcy = vb[1] + vh / 2.0
    k = min(box.w / vw if vw else 1.0, box.h / vh if vh else 1.0)
    tx = box.x + box.w / 2.0
    ty = box.y + box.h / 2.0
    return (
        f"translate({_fmt(tx)} {_fmt(ty)}) scale({_fmt(k)})"
        f" translate({_fmt(-vcx)} {_fmt(-vcy)})"
    )


def render_svg(design: InfographicDesign, manifest, pivot_svg: Optional[str] = None) -> str:
    """Serialize a design to one standalone SVG document.

    `manifest` resolves template and connection-shape sources. Layer order:
    background, pivot, connections, VG groups, heading. Output bytes are a
    pure function of the inputs.
    """
    w = design.canvas.width
    h = design.canvas.height
    out: list[str] = [
        '<svg xmlns="http://www.w3.org/2000/svg"'
        f' width="{_fmt(w)}" height="{_fmt(h)}" viewBox="0 0 {_fmt(w)} {_fmt(h)}">'
    ]
    out.append(
        f'<rect class="background" x="0.0000" y="0.0000" width="{_fmt(w)}"'
        f' height="{_fmt(h)}" fill="{_attr(design.background)}"/>'
    )

    if design.pivot is not None:
        b = design.pivot.bbox
        if pivot_svg is not None:
            vb = _viewbox(ET.fromstring(pivot_svg))
            out.append(
                f'<g class="pivot" transform="{_fit_transform(vb, b)}">'
                f"{_fragment_body(pivot_svg)}</g>"
            )
        else:
            out.append(
                f'<g class="pivot"><rect x="{_fmt(b.x)}" y="{_fmt(b.y)}"'
                f' width="{_fmt(b.w)}" height="{_fmt(b.h)}" fill="{PIVOT_FILL}"/></g>'
            )

    shape_cache: dict[str, tuple[tuple[float, float, float, float], str]] = {}
    for conn in design.connections:
        if conn.length <= 0:
            continue
        if conn.shape_id not in shape_cache:
            shape = manifest.connection_shape(conn.shape_id)
            root = ET.fromstring(shape.svg)
            shape_cache[conn.shape_id] = (_viewbox(root), _fragment_body(shape.svg, design.palette))
        vb, body = shape_cache[conn.shape_id]
        k = conn.length / vb[2] if vb[2] else 1.0
        vcx = vb[0] + vb[2] / 2.0
        vcy = vb[1] + vb[3] / 2.0
        transform = (
            f"translate({_fmt(conn.position.x)} {_fmt(conn.position.y)})"
            f" rotate({_fmt(conn.rotation)}) scale({_fmt(k)})"
            f" translate({_fmt(-vcx)} {_fmt(-vcy)})"
        )
        out.append(f'<g class="connection" transform="{transform}">{body}</g>')

    template_cache: dict[str, str] = {}
    for i, placement in enumerate(design.placements):
        template = manifest.vg_template(placement.vg_template_id)
        if template.id not in template_cache:
            template_cache[template.id] = _fragment_body(template.svg, design.palette)
        anchor = template.anchor
        transform = (
            f"translate({_fmt(placement.position.x)} {_fmt(placement.position.y)})"
            f" rotate({_fmt(placement.rotation)}) scale({_fmt(placement.scale)})"
            f" translate({_fmt(-anchor.x)} {_fmt(-anchor.y)})"
        )
        content = embed_content(template, placement.content, placement.rotation)
        out.append(
            f'<g class="vg" data-index="{i}" transform="{transform}">'
            f"{template_cache[template.id]}{content}</g>"
        )

    if design.heading:
        band = BBox(0.0, 0.0, w, h * HEADING_BAND_SHARE)
        block = _text_block(design.heading, band)
        if block:
            out.append(f'<g class="heading">{block}</g>')

    out.append("</svg>")
    return "".join(out) + "\n"
