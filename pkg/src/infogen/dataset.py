"""Dataset loading, validation, and persistence.

A dataset is a directory with one `manifest.json` plus referenced SVG
files (see docs/dataset-format.md). Validation is eager and total: loading
either returns a fully cross-checked manifest or raises a DatasetError
carrying every diagnostic found, each with a JSON-pointer-style path.
"""

from __future__ import annotations

import json
import re
import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from infogen.compose import ConnectionStyle, CVifIndex
from infogen.content import SLOT_KINDS
from infogen.errors import DatasetError
from infogen.geometry import BBox, Point
from infogen.layout import VifLayout
from infogen.vgindex import ClusterModel, VgTemplate, VgVifIndex

_SEMVER_RE = re.compile(r"^\d+\.\d+\.\d+$")
_STYLE_VALUES = {s.value for s in ConnectionStyle}


@dataclass(frozen=True)
class ConnectionShape:
    id: str
    svg: str


@dataclass(frozen=True)
class Palette:
    name: str
    colors: tuple[str, ...]


@dataclass
class DatasetManifest:
    version: str
    layouts: list[VifLayout]
    vg_templates: list[VgTemplate]
    connection_shapes: list[ConnectionShape]
    palettes: list[Palette]
    vg_vif_index: Optional[VgVifIndex] = None
    c_vif_index: Optional[CVifIndex] = None
    cluster_model: Optional[ClusterModel] = None
    # Provenance records driving index construction:
    vg_usage: dict[str, tuple[str, ...]] = field(default_factory=dict)
    layout_styles: dict[str, ConnectionStyle] = field(default_factory=dict)

    def layout(self, layout_id: str) -> VifLayout:
        for l in self.layouts:
            if l.id == layout_id:
                return l
        raise DatasetError(f"unknown layout id '{layout_id}'", code="unknown_id")

    def vg_template(self, vg_id: str) -> VgTemplate:
        for t in self.vg_templates:
            if t.id == vg_id:
                return t
        raise DatasetError(f"unknown VG id '{vg_id}'", code="unknown_id")

    def connection_shape(self, shape_id: str) -> ConnectionShape:
        for s in self.connection_shapes:
            if s.id == shape_id:
                return s
        raise DatasetError(f"unknown connection shape id '{shape_id}'", code="unknown_id")

    def palette(self, name: str) -> Palette:
        for p in self.palettes:
            if p.name == name:
                return p
        raise DatasetError(f"unknown palette '{name}'", code="unknown_id")


def validate_vg_template(svg_source: str, vg_id: str = "", source: str = "") -> VgTemplate:
    """Parse a template SVG and discover its placeholder contract.

    Placeholders are elements with `data-slot` in {title,text,label,image}
    and rect geometry (x/y/width/height). An element with `data-anchor`
    sets the placement anchor (its center); otherwise the extent center is
    used. `data-theme-color` declares palette tokens 1..4.
    """
    try:
        root = ET.fromstring(svg_source)
    except ET.ParseError as exc:
        raise DatasetError(f"malformed SVG: {exc}", code="bad_svg") from exc

    vb = root.get("viewBox")
    if vb:
        parts = vb.replace(",", " ").split()
        if len(parts) != 4:
            raise DatasetError(f"template viewBox must have 4 numbers, got '{vb}'", code="bad_svg")
        extent = BBox(float(parts[0]), float(parts[1]), float(parts[2]), float(parts[3]))
    elif root.get("width") and root.get("height"):
        extent = BBox(0.0, 0.0, float(root.get("width")), float(root.get("height")))
    else:
        raise DatasetError("template SVG needs a viewBox or width/height", code="bad_svg")

    slots: dict[str, BBox] = {}
    anchor: Optional[Point] = None
    for el in root.iter():
        kind = el.get("data-slot")
        if kind is not None:
            if kind not in SLOT_KINDS:
                raise DatasetError(f"unknown slot kind '{kind}'", code="bad_slot")
            if kind in slots:
                raise DatasetError(f"duplicate slot '{kind}'", code="duplicate_slot")
            try:
                box = BBox(
                    float(el.get("x")),
                    float(el.get("y")),
                    float(el.get("width")),
                    float(el.get("height")),
                )
            except (TypeError, ValueError) as exc:
                raise DatasetError(
                    f"slot '{kind}' placeholder needs numeric x/y/width/height",
                    code="bad_slot",
                ) from exc
            slots[kind] = box
        token = el.get("data-theme-color")
        if token is not None and token not in {"1", "2", "3", "4"}:
            raise DatasetError(
                f"data-theme-color must be 1..4, got '{token}'", code="bad_token"
            )
        if el.get("data-anchor") is not None:
            if el.get("cx") is not None and el.get("cy") is not None:
                anchor = Point(float(el.get("cx")), float(el.get("cy")))
            elif el.get("x") is not None:
                anchor = Point(
                    float(el.get("x")) + float(el.get("width", 0.0)) / 2,
                    float(el.get("y")) + float(el.get("height", 0.0)) / 2,
                )
            else:
                raise DatasetError("data-anchor element needs x/y or cx/cy", code="bad_anchor")

    if not slots:
        raise DatasetError("template declares no slots", code="no_slots")
    for kind, box in slots.items():
        if (
            box.x < extent.x - 1e-9
            or box.y < extent.y - 1e-9
            or box.x + box.w > extent.x + extent.w + 1e-9
            or box.y + box.h > extent.y + extent.h + 1e-9
        ):
            raise DatasetError(
                f"slot '{kind}' placeholder lies outside the template extent",
                code="bad_slot",
            )
    if anchor is None:
        anchor = Point(extent.x + extent.w / 2, extent.y + extent.h / 2)
    return VgTemplate(id=vg_id, svg=svg_source, slots=slots, anchor=anchor, extent=extent, source=source)


def _manifest_path(path) -> Path:
    p = Path(path)
    return p / "manifest.json" if p.is_dir() else p


def load_manifest(path) -> DatasetManifest:
    """Load and fully validate a dataset directory (or manifest file)."""
    manifest_file = _manifest_path(path)
    base = manifest_file.parent
    diags: list[str] = []

    try:
        raw = json.loads(manifest_file.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DatasetError(f"manifest not found: {manifest_file}", code="io") from None
    except json.JSONDecodeError as exc:
        raise DatasetError(
            f"manifest is not valid JSON: {exc}", code="bad_json", diagnostics=[str(exc)]
        ) from exc
    if not isinstance(raw, dict):
        raise DatasetError("manifest root must be an object", code="bad_json")

    version = raw.get("version")
    if not isinstance(version, str) or not _SEMVER_RE.match(version):
        diags.append(f"/version: expected semver string, got {version!r}")
        version = "0.0.0"

    layouts: list[VifLayout] = []
    layout_styles: dict[str, ConnectionStyle] = {}
    seen_ids: set[str] = set()
    for i, rec in enumerate(raw.get("layouts", [])):
        ptr = f"/layouts/{i}"
        try:
            lid = rec["id"]
            if lid in seen_ids:
                diags.append(f"{ptr}: duplicate layout id '{lid}'")
                continue
            seen_ids.add(lid)
            points = tuple(Point(float(x), float(y)) for x, y in rec["points"])
            layout = VifLayout(
                id=lid,
                points=points,
                cluster_id=rec.get("cluster_id"),
                source=rec.get("source", ""),
            )
            style_val = rec.get("connection_style")
            if style_val is not None:
                if style_val not in _STYLE_VALUES:
                    diags.append(f"{ptr}/connection_style: unknown style '{style_val}'")
                else:
                    layout_styles[lid] = ConnectionStyle(style_val)
            layouts.append(layout)
        except (KeyError, TypeError, ValueError) as exc:
            diags.append(f"{ptr}: {exc}")
        except Exception as exc:  # engine-typed validation errors
            diags.append(f"{ptr}: {exc}")

    layout_ids = {l.id for l in layouts}

    vg_templates: list[VgTemplate] = []
    vg_usage: dict[str, tuple[str, ...]] = {}
    seen_ids = set()
    for i, rec in enumerate(raw.get("vg_templates", [])):
        ptr = f"/vg_templates/{i}"
        try:
            vid = rec["id"]
            if vid in seen_ids:
                diags.append(f"{ptr}: duplicate VG id '{vid}'")
                continue
            seen_ids.add(vid)
            svg_file = base / rec["file"]
            if not svg_file.is_file():
                diags.append(f"{ptr}/file: missing file '{rec['file']}'")
                continue
            template = validate_vg_template(
                svg_file.read_text(encoding="utf-8"), vg_id=vid, source=rec.get("source", "")
            )
            declared = rec.get("slots")
            if declared is not None:
                declared_set = set(declared)
                missing = declared_set - set(template.slots)
                extra = set(template.slots) - declared_set
                if missing:
                    diags.append(
                        f"{ptr}: missing declared slot placeholder(s): {', '.join(sorted(missing))}"
                    )
                    continue
                if extra:
                    diags.append(
                        f"{ptr}: undeclared slot placeholder(s) in SVG: {', '.join(sorted(extra))}"
                    )
                    continue
            usage = tuple(rec.get("appears_in", ()))
            for lid in usage:
                if lid not in layout_ids:
                    diags.append(f"{ptr}/appears_in: unknown layout id '{lid}'")
            vg_usage[vid] = usage
            vg_templates.append(template)
        except (KeyError, TypeError, ValueError) as exc:
            diags.append(f"{ptr}: {exc}")
        except DatasetError as exc:
            diags.append(f"{ptr}: {exc}")

    vg_ids = {t.id for t in vg_templates}

    connection_shapes: list[ConnectionShape] = []
    seen_ids = set()
    for i, rec in enumerate(raw.get("connection_shapes", [])):
        ptr = f"/connection_shapes/{i}"
        try:
            sid = rec["id"]
            if sid in seen_ids:
                diags.append(f"{ptr}: duplicate connection shape id '{sid}'")
                continue
            seen_ids.add(sid)
            svg_file = base / rec["file"]
            if not svg_file.is_file():
                diags.append(f"{ptr}/file: missing file '{rec['file']}'")
                continue
            svg = svg_file.read_text(encoding="utf-8")
            root = ET.fromstring(svg)
            if not (root.get("viewBox") or (root.get("width") and root.get("height"))):
                diags.append(f"{ptr}: shape SVG needs a viewBox or width/height")
                continue
            connection_shapes.append(ConnectionShape(id=sid, svg=svg))
        except ET.ParseError as exc:
            diags.append(f"{ptr}: malformed SVG: {exc}")
        except (KeyError, TypeError, ValueError) as exc:
            diags.append(f"{ptr}: {exc}")

    palettes: list[Palette] = []
    seen_names: set[str] = set()
    for i, rec in enumerate(raw.get("palettes", [])):
        ptr = f"/palettes/{i}"
        try:
            name = rec["name"]
            if name in seen_names:
                diags.append(f"{ptr}: duplicate palette '{name}'")
                continue
            seen_names.add(name)
            colors = tuple(str(c) for c in rec["colors"])
            if not colors:
                diags.append(f"{ptr}/colors: palette must have at least one color")
                continue
            palettes.append(Palette(name=name, colors=colors))
        except (KeyError, TypeError) as exc:
            diags.append(f"{ptr}: {exc}")

    vg_vif_index = None
    if raw.get("vg_vif_index") is not None:
        postings: dict[str, Counter] = {}
        for vid, terms in raw["vg_vif_index"].get("postings", {}).items():
            ptr = f"/vg_vif_index/postings/{vid}"
            if vid not in vg_ids:
                diags.append(f"{ptr}: unknown VG id '{vid}'")
                continue
            counter: Counter = Counter()
            for cid, count in terms.items():
                if not 0 <= int(cid) <= 11:
                    diags.append(f"{ptr}/{cid}: cluster id outside [0, 11]")
                    continue
                if int(count) < 1:
                    diags.append(f"{ptr}/{cid}: term count must be >= 1")
                    continue
                counter[int(cid)] = int(count)
            if counter:
                postings[vid] = counter
        if postings:
            df: dict[int, int] = {}
            for terms in postings.values():
                for cid in terms:
                    df[cid] = df.get(cid, 0) + 1
            vg_vif_index = VgVifIndex(postings=postings, df=df, n_docs=len(postings))
        else:
            diags.append("/vg_vif_index: empty postings")

    c_vif_index = None
    if raw.get("c_vif_index") is not None:
        counts: dict[int, dict[ConnectionStyle, int]] = {}
        for cid, styles in raw["c_vif_index"].get("counts", {}).items():
            ptr = f"/c_vif_index/counts/{cid}"
            if not 0 <= int(cid) <= 11:
                diags.append(f"{ptr}: cluster id outside [0, 11]")
                continue
            entry: dict[ConnectionStyle, int] = {}
            for style_val, count in styles.items():
                if style_val not in _STYLE_VALUES:
                    diags.append(f"{ptr}/{style_val}: unknown style")
                    continue
                entry[ConnectionStyle(style_val)] = int(count)
            if not any(v > 0 for v in entry.values()):
                diags.append(f"{ptr}: cluster entry needs at least one nonzero count")
                continue
            counts[int(cid)] = entry
        c_vif_index = CVifIndex(counts=counts)

    cluster_model = None
    if raw.get("cluster_model") is not None:
        rec = raw["cluster_model"]
        try:
            assignments = {str(k): int(v) for k, v in rec["assignments"].items()}
            k = int(rec["k"])
            for lid, cid in assignments.items():
                if lid not in layout_ids:
                    diags.append(f"/cluster_model/assignments/{lid}: unknown layout id")
                if not 0 <= cid < k:
                    diags.append(f"/cluster_model/assignments/{lid}: cluster {cid} outside [0, {k})")
            cluster_model = ClusterModel(
                k=k,
                raster_size=int(rec["raster_size"]),
                pca_components=int(rec["pca_components"]),
                pca_mean=np.asarray(rec["pca_mean"], dtype=np.float64),
                pca_basis=np.asarray(rec["pca_basis"], dtype=np.float64),
                centers=np.asarray(rec["centers"], dtype=np.float64),
                medoid_ids=list(rec["medoid_ids"]),
                assignments=assignments,
            )
        except (KeyError, TypeError, ValueError) as exc:
            diags.append(f"/cluster_model: {exc}")

    # Layout cluster ids must agree with the valid range even without a model.
    for l in layouts:
        if l.cluster_id is not None and cluster_model is not None:
            recorded = cluster_model.assignments.get(l.id)
            if recorded is not None and recorded != l.cluster_id:
                diags.append(
                    f"/layouts/{l.id}: cluster_id {l.cluster_id} disagrees with cluster model ({recorded})"
                )

    if diags:
        raise DatasetError(
            f"{len(diags)} dataset validation error(s)", code="invalid", diagnostics=diags
        )
    if not layouts:
        raise DatasetError("dataset has no layouts", code="empty")

    return DatasetManifest(
        version=version,
        layouts=layouts,
        vg_templates=vg_templates,
        connection_shapes=connection_shapes,
        palettes=palettes,
        vg_vif_index=vg_vif_index,
        c_vif_index=c_vif_index,
        cluster_model=cluster_model,
        vg_usage=vg_usage,
        layout_styles=layout_styles,
    )


def manifest_to_dict(manifest: DatasetManifest) -> dict:
    """JSON-serializable form of a manifest (SVG sources excluded)."""
    doc: dict = {
        "version": manifest.version,
        "layouts": [
            {
                "id": l.id,
                "points": [[p.x, p.y] for p in l.points],
                "cluster_id": l.cluster_id,
                "source": l.source,
                "connection_style": (
                    manifest.layout_styles[l.id].value if l.id in manifest.layout_styles else None
                ),
            }
            for l in manifest.layouts
        ],
        "vg_templates": [
            {
                "id": t.id,
                "file": f"vgs/{t.id}.svg",
                "slots": sorted(t.slots),
                "source": t.source,
                "appears_in": list(manifest.vg_usage.get(t.id, ())),
            }
            for t in manifest.vg_templates
        ],
        "connection_shapes": [
            {"id": s.id, "file": f"connections/{s.id}.svg"} for s in manifest.connection_shapes
        ],
        "palettes": [{"name": p.name, "colors": list(p.colors)} for p in manifest.palettes],
        "vg_vif_index": None,
        "c_vif_index": None,
        "cluster_model": None,
    }
    if manifest.vg_vif_index is not None:
        doc["vg_vif_index"] = {
            "postings": {
                vid: {str(cid): count for cid, count in sorted(terms.items())}
                for vid, terms in sorted(manifest.vg_vif_index.postings.items())
            }
        }
    if manifest.c_vif_index is not None:
        doc["c_vif_index"] = {
            "counts": {
                str(cid): {
                    style.value: count
                    for style, count in sorted(styles.items(), key=lambda kv: kv[0].value)
                }
                for cid, styles in sorted(manifest.c_vif_index.counts.items())
            }
        }
    if manifest.cluster_model is not None:
        m = manifest.cluster_model
        doc["cluster_model"] = {
            "k": m.k,
            "raster_size": m.raster_size,
            "pca_components": m.pca_components,
            "pca_mean": m.pca_mean.tolist(),
            "pca_basis": m.pca_basis.tolist(),
            "centers": m.centers.tolist(),
            "medoid_ids": list(m.medoid_ids),
            "assignments": dict(sorted(m.assignments.items())),
        }
    return doc


def save_manifest(manifest: DatasetManifest, path) -> None:
    """Write a dataset directory: canonical manifest.json plus SVG files.

    Output is byte-deterministic for equal manifests, and
    load(save(m)) == m structurally.
    """
    base = Path(path)
    try:
        base.mkdir(parents=True, exist_ok=True)
        (base / "vgs").mkdir(exist_ok=True)
        (base / "connections").mkdir(exist_ok=True)
        for t in manifest.vg_templates:
            (base / "vgs" / f"{t.id}.svg").write_text(t.svg, encoding="utf-8")
        for s in manifest.connection_shapes:
            (base / "connections" / f"{s.id}.svg").write_text(s.svg, encoding="utf-8")
        doc = manifest_to_dict(manifest)
        (base / "manifest.json").write_text(
            json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    except OSError as exc:
        raise DatasetError(f"cannot write dataset to {base}: {exc}", code="io") from exc


def sample_dataset_path() -> Path:
    """Location of the bundled sample dataset."""
    return Path(__file__).parent / "data" / "sample"
