"""Markdown content parsing.

The input dialect (documented in docs/markdown-format.md):

    # Optional infographic heading
    - title: First item
      text: Body copy, may continue
        on indented lines
      label: 01
      image: assets/pic.png
    - plain shorthand for a text-only item

Keys are case-insensitive and drawn from {title, text, label, image}. A
bare bullet is shorthand for `text:`. Indented lines that are not
`key: value` pairs continue the most recent field, joined with a space.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from infogen.errors import ContentError

SLOT_KINDS = ("title", "text", "label", "image")

MAX_ITEMS = 12

_KEY_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_-]*)\s*:\s?(.*)$")


@dataclass(frozen=True)
class ContentItem:
    title: Optional[str] = None
    text: Optional[str] = None
    label: Optional[str] = None
    image: Optional[str] = None

    def __post_init__(self):
        if all(getattr(self, k) is None for k in SLOT_KINDS):
            raise ContentError("content item must populate at least one field")


@dataclass(frozen=True)
class ContentSpec:
    items: tuple[ContentItem, ...]
    heading: Optional[str] = None

    def __post_init__(self):
        if not self.items:
            raise ContentError("no content items")
        if len(self.items) > MAX_ITEMS:
            raise ContentError(f"too many visual groups (max {MAX_ITEMS})")


def slot_signature(item: ContentItem) -> frozenset[str]:
    """The set of populated slot kinds of `item`."""
    return frozenset(k for k in SLOT_KINDS if getattr(item, k) is not None)


def parse_markdown(source: str, max_items: int = MAX_ITEMS) -> ContentSpec:
    """Parse markdown `source` into a ContentSpec.

    Raises ContentError with a line number on unknown fields, duplicate
    fields, stray lines, empty input, or more than `max_items` bullets.
    """
    heading: Optional[str] = None
    items: list[dict[str, str]] = []
    current: Optional[dict[str, str]] = None
    current_key: Optional[str] = None

    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.rstrip()
        if not line.strip():
            continue
        if line.startswith("# ") and heading is None and current is None and not items:
            heading = line[2:].strip()
            continue
        if line.startswith("- "):
            current = {}
            current_key = None
            items.append(current)
            body = line[2:].strip()
            if body:
                current_key = _consume_field(current, body, lineno, shorthand=True)
            continue
        if line[0] in " \t":
            if current is None:
                raise ContentError(f"unexpected indented line at line {lineno}")
            stripped = line.strip()
            m = _KEY_RE.match(stripped)
            if m and m.group(1).lower() in SLOT_KINDS:
                current_key = _consume_field(current, stripped, lineno, shorthand=False)
            elif m:
                raise ContentError(f"unknown field '{m.group(1)}' at line {lineno}")
            elif current_key is not None:
                current[current_key] = f"{current[current_key]} {stripped}".strip()
            else:
                # Continuation with no active field: treat as text shorthand.
                current_key = _consume_field(
                    current, f"text: {stripped}", lineno, shorthand=False
                )
            continue
        raise ContentError(f"unexpected line {lineno}: {line.strip()!r}")

    if not items:
        raise ContentError("no content items")
    if len(items) > max_items:
        raise ContentError(f"too many visual groups (max {max_items})")
    for i, fields in enumerate(items, start=1):
        if not fields:
            raise ContentError(f"empty content item #{i}")
    return ContentSpec(
        items=tuple(ContentItem(**fields) for fields in items), heading=heading
    )


def _consume_field(fields: dict[str, str], body: str, lineno: int, shorthand: bool) -> str:
    m = _KEY_RE.match(body)
    if m:
        key = m.group(1).lower()
        if key in SLOT_KINDS:
            if key in fields:
                raise ContentError(f"duplicate field '{key}' at line {lineno}")
            fields[key] = m.group(2).strip()
            return key
        if not shorthand:
            raise ContentError(f"unknown field '{m.group(1)}' at line {lineno}")
        # A bullet like "- Note: ..." where the key is unknown is an error
        # too: silent fallback to text would hide typos of real keys.
        raise ContentError(f"unknown field '{m.group(1)}' at line {lineno}")
    if "text" in fields:
        raise ContentError(f"duplicate field 'text' at line {lineno}")
    fields["text"] = body
    return "text"


def to_markdown(spec: ContentSpec) -> str:
    """Canonical serialization; `parse_markdown` round-trips its output."""
    lines: list[str] = []
    if spec.heading is not None:
        lines.append(f"# {spec.heading}")
        lines.append("")
    for item in spec.items:
        first = True
        for key in SLOT_KINDS:
            value = getattr(item, key)
            if value is None:
                continue
            prefix = "- " if first else "  "
            lines.append(f"{prefix}{key}: {value}")
            first = False
    return "\n".join(lines) + "\n"
