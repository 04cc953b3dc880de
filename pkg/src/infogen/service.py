"""Stateless HTTP facade over the engine.

JSON over HTTP/1.1, no sessions. The dataset is loaded once at startup and
never mutated; every response is deterministic for an identical request.
Errors use one taxonomy: {stage, code, message} with 400 for engine
errors, 404 for unknown ids, 413 for oversized sketches. Documented in
docs/http-api.md.
"""

from __future__ import annotations

import hashlib
import threading
import xml.etree.ElementTree as ET
from collections import OrderedDict
from typing import Optional, Union

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from infogen.compose import ConnectionStyle, rank_connection_styles
from infogen.content import parse_markdown, slot_signature
from infogen.dataset import DatasetManifest, load_manifest
from infogen.errors import EngineError, LayoutError, VgIndexError
from infogen.geometry import BBox, Polyline
from infogen.layout import (
    Canvas,
    PivotGraphic,
    match_sketch,
    rank_layouts,
    score_layout,
    sketch_from_points,
)
from infogen.pipeline import EngineOptions, Overrides, cluster_of, recommend
from infogen.svgout import render_svg
from infogen.vgindex import rank_vgs

MAX_SKETCH_POINTS = 10_000
UPLOAD_STORE_CAPACITY = 100


class CanvasModel(BaseModel):
    width: float
    height: float


class PivotModel(BaseModel):
    x: float
    y: float
    w: float
    h: float
    graphic_id: Optional[str] = None


class OverridesModel(BaseModel):
    layout_id: Optional[str] = None
    vg_id: Optional[str] = None
    connection_style: Optional[str] = None


class RecommendRequest(BaseModel):
    markdown: str
    canvas: CanvasModel
    pivot: Optional[PivotModel] = None
    sketch: Optional[list[list[float]]] = None
    alpha: float = 0.5
    top_k_layouts: int = 8
    top_k_vgs: int = 8
    top_k_styles: int = 5
    n: int = 5
    palette: Optional[str] = None
    background: str = "#ffffff"
    connection_shape: Optional[str] = None
    overrides: Optional[OverridesModel] = None


class RankLayoutsRequest(BaseModel):
    n_vgs: int
    canvas: CanvasModel
    pivot: Optional[PivotModel] = None
    sketch: Optional[list[list[float]]] = None
    alpha: float = 0.5
    top_k: int = 8


class RankVgsRequest(BaseModel):
    cluster_id: int
    markdown: Optional[str] = None
    slots: Optional[list[str]] = None
    top_k: int = 8


class RankConnectionsRequest(BaseModel):
    cluster_id: int


class ComposeRequest(BaseModel):
    markdown: str
    canvas: CanvasModel
    layout_id: str
    vg_id: str
    connection_style: str
    pivot: Optional[PivotModel] = None
    alpha: float = 0.5
    palette: Optional[str] = None
    background: str = "#ffffff"
    connection_shape: Optional[str] = None


class _UploadStore:
    """Content-addressed in-memory store for uploaded pivot graphics."""

    def __init__(self, capacity: int = UPLOAD_STORE_CAPACITY):
        self._capacity = capacity
        self._items: OrderedDict[str, str] = OrderedDict()
        self._lock = threading.Lock()

    def put(self, svg: str) -> str:
        key = hashlib.sha256(svg.encode("utf-8")).hexdigest()[:16]
        with self._lock:
            if key in self._items:
                self._items.move_to_end(key)
            else:
                self._items[key] = svg
                while len(self._items) > self._capacity:
                    self._items.popitem(last=False)
        return key

    def get(self, key: str) -> Optional[str]:
        with self._lock:
            if key not in self._items:
                return None
            self._items.move_to_end(key)
            return self._items[key]


def _error_response(exc: EngineError) -> JSONResponse:
    status = 404 if exc.code == "unknown_id" else 400
    return JSONResponse(
        status_code=status,
        content={"stage": exc.stage, "code": exc.code, "message": str(exc)},
    )


def _pivot_from(model: Optional[PivotModel]) -> Optional[PivotGraphic]:
    if model is None:
        return None
    return PivotGraphic(bbox=BBox(model.x, model.y, model.w, model.h), graphic=model.graphic_id)


def _sketch_from(points: Optional[list[list[float]]]) -> Optional[Polyline]:
    if points is None:
        return None
    return sketch_from_points(points)


def _style_from(value: str) -> ConnectionStyle:
    try:
        return ConnectionStyle(value)
    except ValueError:
        raise LayoutError(f"unknown connection style '{value}'", code="unknown_style")


def _score_fields(s) -> dict:
    return {
        "e_o": s.e_o,
        "e_c": s.e_c,
        "e_u_raw": s.e_u_raw,
        "u": s.u,
        "e_l": s.e_l,
        "tfidf": s.tfidf,
        "p_style": s.p_style,
        "composite": s.composite,
    }


def create_app(dataset: Union[str, DatasetManifest], ui_dir: Optional[str] = None) -> FastAPI:
    manifest = dataset if isinstance(dataset, DatasetManifest) else load_manifest(dataset)
    uploads = _UploadStore()
    app = FastAPI(title="infogen service", version="1.0")

    @app.exception_handler(EngineError)
    async def engine_error_handler(_req: Request, exc: EngineError):
        return _error_response(exc)

    def _run_recommend(req: RecommendRequest):
        if req.sketch is not None and len(req.sketch) > MAX_SKETCH_POINTS:
            return None, JSONResponse(
                status_code=413,
                content={
                    "stage": "layout",
                    "code": "sketch_too_large",
                    "message": f"sketch exceeds {MAX_SKETCH_POINTS} points",
                },
            )
        content = parse_markdown(req.markdown)
        canvas = Canvas(req.canvas.width, req.canvas.height)
        pivot = _pivot_from(req.pivot)
        sketch = _sketch_from(req.sketch)
        options = EngineOptions(
            alpha=req.alpha,
            top_k_layouts=req.top_k_layouts,
            top_k_vgs=req.top_k_vgs,
            top_k_styles=req.top_k_styles,
            n_results=req.n,
            palette=req.palette,
            background=req.background,
            connection_shape=req.connection_shape,
        )
        overrides = Overrides()
        if req.overrides is not None:
            overrides = Overrides(
                layout_id=req.overrides.layout_id,
                vg_id=req.overrides.vg_id,
                connection_style=(
                    _style_from(req.overrides.connection_style)
                    if req.overrides.connection_style is not None
                    else None
                ),
            )
        designs = recommend(manifest, content, canvas, pivot, sketch, options, overrides)
        pivot_svg = None
        if pivot is not None and pivot.graphic is not None:
            pivot_svg = uploads.get(pivot.graphic)
            if pivot_svg is None:
                return None, JSONResponse(
                    status_code=404,
                    content={
                        "stage": "compose",
                        "code": "unknown_id",
                        "message": f"unknown pivot graphic id '{pivot.graphic}'",
                    },
                )
        results = []
        for design in designs:
            results.append(
                {
                    "design": {
                        "layout_id": design.layout.id,
                        "vg_id": design.placements[0].vg_template_id,
                        "connection_style": design.connection_style.value,
                        "cluster_id": cluster_of(manifest, design.layout),
                        "n_items": len(design.placements),
                        "heading": design.heading,
                    },
                    "scores": _score_fields(design.score),
                    "svg": render_svg(design, manifest, pivot_svg),
                }
            )
        return results, None

    @app.post("/v1/recommend")
    def recommend_endpoint(req: RecommendRequest):
        results, error = _run_recommend(req)
        if error is not None:
            return error
        return {"results": results}

    @app.post("/v1/rank/layouts")
    def rank_layouts_endpoint(req: RankLayoutsRequest):
        if req.sketch is not None and len(req.sketch) > MAX_SKETCH_POINTS:
            return JSONResponse(
                status_code=413,
                content={
                    "stage": "layout",
                    "code": "sketch_too_large",
                    "message": f"sketch exceeds {MAX_SKETCH_POINTS} points",
                },
            )
        canvas = Canvas(req.canvas.width, req.canvas.height)
        pivot = _pivot_from(req.pivot)
        rows = []
        if req.sketch is not None:
            stroke = _sketch_from(req.sketch)
            nearest = match_sketch(stroke, manifest.layouts, req.n_vgs, req.top_k)
            for layout, distance in nearest:
                s = score_layout(layout, canvas, pivot, req.alpha)
                rows.append(
                    {
                        "id": layout.id,
                        "distance": distance,
                        "e_o": s.e_o,
                        "e_c": s.e_c,
                        "u": s.u,
                        "e_l": s.e_l,
                    }
                )
        else:
            for layout, s in rank_layouts(
                manifest.layouts, req.n_vgs, canvas, pivot, req.alpha, req.top_k
            ):
                rows.append(
                    {"id": layout.id, "e_o": s.e_o, "e_c": s.e_c, "u": s.u, "e_l": s.e_l}
                )
        return {"results": rows, "sketch_used": req.sketch is not None}

    @app.post("/v1/rank/vgs")
    def rank_vgs_endpoint(req: RankVgsRequest):
        if manifest.vg_vif_index is None:
            return _error_response(
                VgIndexError("dataset has no VG-VIF index", code="no_index")
            )
        if req.slots is not None:
            required = frozenset(req.slots)
        elif req.markdown is not None:
            content = parse_markdown(req.markdown)
            required = frozenset().union(*(slot_signature(i) for i in content.items))
        else:
            required = frozenset()
        ranked = rank_vgs(
            manifest.vg_vif_index, manifest.vg_templates, req.cluster_id, required, req.top_k
        )
        return {
            "results": [{"id": t.id, "score": score} for t, score in ranked],
        }

    @app.post("/v1/rank/connections")
    def rank_connections_endpoint(req: RankConnectionsRequest):
        from infogen.compose import CVifIndex

        index = manifest.c_vif_index or CVifIndex()
        ranking = rank_connection_styles(index, req.cluster_id)
        return {
            "results": [
                {"style": style.value, "probability": prob} for style, prob in ranking.entries
            ],
            "uniform_fallback": ranking.uniform_fallback,
        }

    @app.post("/v1/compose")
    def compose_endpoint(req: ComposeRequest):
        rec = RecommendRequest(
            markdown=req.markdown,
            canvas=req.canvas,
            pivot=req.pivot,
            alpha=req.alpha,
            n=1,
            palette=req.palette,
            background=req.background,
            connection_shape=req.connection_shape,
            overrides=OverridesModel(
                layout_id=req.layout_id,
                vg_id=req.vg_id,
                connection_style=req.connection_style,
            ),
        )
        results, error = _run_recommend(rec)
        if error is not None:
            return error
        return Response(content=results[0]["svg"], media_type="image/svg+xml")

    @app.get("/v1/dataset/summary")
    def dataset_summary():
        return {
            "version": manifest.version,
            "counts": {
                "layouts": len(manifest.layouts),
                "vg_templates": len(manifest.vg_templates),
                "connection_shapes": len(manifest.connection_shapes),
                "palettes": len(manifest.palettes),
            },
            "has_vg_vif_index": manifest.vg_vif_index is not None,
            "has_c_vif_index": manifest.c_vif_index is not None,
            "has_cluster_model": manifest.cluster_model is not None,
            "layouts": [
                {
                    "id": l.id,
                    "n_points": len(l.points),
                    "cluster_id": l.cluster_id,
                    "points": [[p.x, p.y] for p in l.points],
                }
                for l in manifest.layouts
            ],
            "vg_templates": [
                {"id": t.id, "slots": sorted(t.slots)} for t in manifest.vg_templates
            ],
            "palettes": [{"name": p.name, "colors": list(p.colors)} for p in manifest.palettes],
        }

    @app.get("/v1/dataset/vg/{vg_id}.svg")
    def dataset_vg(vg_id: str):
        template = manifest.vg_template(vg_id)
        return Response(content=template.svg, media_type="image/svg+xml")

    @app.get("/v1/dataset/connection/{shape_id}.svg")
    def dataset_connection(shape_id: str):
        shape = manifest.connection_shape(shape_id)
        return Response(content=shape.svg, media_type="image/svg+xml")

    @app.post("/v1/pivot-graphic")
    async def upload_pivot_graphic(request: Request):
        body = (await request.body()).decode("utf-8", errors="replace")
        try:
            ET.fromstring(body)
        except ET.ParseError as exc:
            return JSONResponse(
                status_code=400,
                content={"stage": "dataset", "code": "bad_svg", "message": f"malformed SVG: {exc}"},
            )
        return {"id": uploads.put(body)}

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/studio", StaticFiles(directory=ui_dir, html=True), name="studio")

    return app
